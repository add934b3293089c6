#include <catch_amalgamated.hpp>

#include <sstream>

#include "combsim/error.hpp"
#include "combsim/io.hpp"
#include "json.hpp"

using namespace combsim;

TEST_CASE("doubles print with 17 significant digits", "[io]") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("Wigner field binary round trip", "[io]") {
  const CombParams p(3, 3.0, 0.2);
  const NoiseChannel ch(ChannelKind::diffusion, 0.15);
  const auto field = sample_evolved_wigner(p, Basis::one, ch, PhaseGrid(Axis{-8, 8, 33}, Axis{-4, 4, 17}));
  std::stringstream buf;
  io::write_field_binary(field, buf);
  CHECK(buf.str().size() == 80 + 33 * 17 * 8);
  CHECK(buf.str().substr(0, 4) == "CSWF");
  const auto back = io::read_field_binary(buf);
  CHECK(back.grid == field.grid);
  CHECK(back.values == field.values);
  CHECK(back.basis == Basis::one);
  CHECK(back.channel == ChannelKind::diffusion);
  CHECK(back.gamma_t == 0.15);

  std::stringstream bad("XXXX0000");
  CHECK_THROWS_AS(io::read_field_binary(bad), Error);
  std::stringstream cut(buf.str().substr(0, 100));
  CHECK_THROWS_AS(io::read_field_binary(cut), Error);
}

TEST_CASE("density kernel binary round trip", "[io]") {
  const CombParams p(2, 3.0, 0.3);
  const NoiseChannel ch(ChannelKind::damping, 0.1);
  const auto k = density_kernel(p, Basis::zero, ch, auto_position_axis(p, 0.1), Coherence::incoherent);
  std::stringstream buf;
  io::write_kernel_binary(k, buf);
  const auto back = io::read_kernel_binary(buf);
  CHECK(back.axis == k.axis);
  CHECK(back.matrix == k.matrix);
  CHECK(back.coherence == Coherence::incoherent);
  CHECK(back.channel == ChannelKind::damping);

  std::stringstream wrong_kind;
  io::write_field_binary(sample_wigner(p, Basis::zero, PhaseGrid(Axis{-1, 1, 3}, Axis{-1, 1, 3})), wrong_kind);
  CHECK_THROWS_AS(io::read_kernel_binary(wrong_kind), Error);
}

TEST_CASE("CSV and JSON outputs", "[io]") {
  std::ostringstream eig;
  io::write_eigenvalues_csv({0.5, -0.25}, eig);
  CHECK(eig.str() == "index,eigenvalue\n0,0.5\n1,-0.25\n");

  const MetricSeries s{ChannelKind::damping, CombParams(8, 4.0, 0.4), Metric::fidelity, {0.0, 0.5}, {1.0, 0.25}};
  std::ostringstream csv;
  io::write_series_csv(s, csv);
  CHECK(csv.str() == "gamma_t,fidelity\n0,1\n0.5,0.25\n");

  const auto j = nlohmann::json::parse(io::series_json(s, numerics::ToleranceConfig{}));
  CHECK(j["params"]["teeth"] == 8);
  CHECK(j["params"]["squeeze"] == 0.4);
  CHECK(j["channel"] == "damping");
  CHECK(j["tolerances"]["eig_rel"] == 1e-12);
  CHECK(j["values"][1] == 0.25);

  std::ostringstream field;
  io::write_field_csv(sample_wigner(CombParams(1, 1.0, 0.0), Basis::zero, PhaseGrid(Axis{-1, 1, 2}, Axis{0, 1, 2})), field);
  CHECK(field.str().rfind("q,p,w\n-1,0,", 0) == 0);
}
