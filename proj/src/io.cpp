#include "combsim/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>

#include "json.hpp"

#include "combsim/error.hpp"

namespace combsim::io {

static_assert(std::endian::native == std::endian::little, "binary layout assumes little endian");

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_field_csv(const WignerField& field, std::ostream& out) {
  const auto& g = field.grid;
  out << "q,p,w\n";
  for (std::size_t i = 0; i < g.q().count; ++i) {
    const std::string q = format_double(g.q().at(i));
    for (std::size_t j = 0; j < g.p().count; ++j) {
      out << q << ',' << format_double(g.p().at(j)) << ',' << format_double(field.at(i, j)) << '\n';
    }
  }
}

namespace {

constexpr char magic[4] = {'C', 'S', 'W', 'F'};
constexpr std::uint32_t version = 1;

struct Header {
  std::uint32_t kind;
  std::uint32_t basis;
  std::uint32_t channel;
  std::uint32_t coherence;
  double gamma_t;
  std::uint64_t rows;
  std::uint64_t cols;
  double extents[4];
};

template <class T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!in) throw Error("truncated binary file");
  return value;
}

void write_header(std::ostream& out, const Header& h) {
  out.write(magic, 4);
  put(out, version);
  put(out, h.kind);
  put(out, h.basis);
  put(out, h.channel);
  put(out, h.coherence);
  put(out, h.gamma_t);
  put(out, h.rows);
  put(out, h.cols);
  for (double e : h.extents) put(out, e);
}

Header read_header(std::istream& in, std::uint32_t expected_kind) {
  char m[4];
  in.read(m, 4);
  if (!in || std::memcmp(m, magic, 4) != 0) throw Error("not a combsim binary file");
  if (get<std::uint32_t>(in) != version) throw Error("unsupported binary format version");
  Header h{};
  h.kind = get<std::uint32_t>(in);
  if (h.kind != expected_kind) throw Error("binary payload kind mismatch");
  h.basis = get<std::uint32_t>(in);
  h.channel = get<std::uint32_t>(in);
  h.coherence = get<std::uint32_t>(in);
  h.gamma_t = get<double>(in);
  h.rows = get<std::uint64_t>(in);
  h.cols = get<std::uint64_t>(in);
  for (double& e : h.extents) e = get<double>(in);
  if (h.basis > 1 || h.channel > 2 || h.coherence > 1) throw Error("corrupt binary header");
  return h;
}

std::uint32_t channel_code(std::optional<ChannelKind> channel) {
  if (!channel) return 0;
  return *channel == ChannelKind::damping ? 1 : 2;
}

void read_values(std::istream& in, double* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw Error("truncated binary payload");
}

}  // namespace

void write_field_binary(const WignerField& field, std::ostream& out) {
  const auto& g = field.grid;
  write_header(out, {0, static_cast<std::uint32_t>(basis_index(field.basis)),
                     channel_code(field.channel), 0, field.gamma_t, g.q().count, g.p().count,
                     {g.q().min, g.q().max, g.p().min, g.p().max}});
  out.write(reinterpret_cast<const char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
}

WignerField read_field_binary(std::istream& in) {
  const Header h = read_header(in, 0);
  WignerField field{PhaseGrid(Axis{h.extents[0], h.extents[1], h.rows},
                              Axis{h.extents[2], h.extents[3], h.cols}),
                    {}, h.basis ? Basis::one : Basis::zero, std::nullopt, h.gamma_t};
  if (h.channel) field.channel = h.channel == 1 ? ChannelKind::damping : ChannelKind::diffusion;
  field.values.resize(h.rows * h.cols);
  read_values(in, field.values.data(), field.values.size());
  return field;
}

void write_kernel_binary(const DensityKernel& kernel, std::ostream& out) {
  const auto& a = kernel.axis;
  write_header(out, {1, static_cast<std::uint32_t>(basis_index(kernel.basis)),
                     channel_code(kernel.channel),
                     kernel.coherence == Coherence::incoherent ? 1u : 0u, kernel.gamma_t, a.count,
                     a.count, {a.min, a.max, a.min, a.max}});
  // symmetric, so column-major storage is also row-major
  out.write(reinterpret_cast<const char*>(kernel.matrix.data()),
            static_cast<std::streamsize>(kernel.matrix.size() * sizeof(double)));
}

DensityKernel read_kernel_binary(std::istream& in) {
  const Header h = read_header(in, 1);
  if (h.rows != h.cols || h.channel == 0) throw Error("corrupt kernel header");
  DensityKernel k;
  k.axis = Axis{h.extents[0], h.extents[1], h.rows};
  k.matrix.resize(static_cast<Eigen::Index>(h.rows), static_cast<Eigen::Index>(h.cols));
  read_values(in, k.matrix.data(), h.rows * h.cols);
  k.matrix.transposeInPlace();
  k.channel = h.channel == 1 ? ChannelKind::damping : ChannelKind::diffusion;
  k.gamma_t = h.gamma_t;
  k.basis = h.basis ? Basis::one : Basis::zero;
  k.coherence = h.coherence ? Coherence::incoherent : Coherence::coherent;
  return k;
}

void write_eigenvalues_csv(const std::vector<double>& eigenvalues, std::ostream& out) {
  out << "index,eigenvalue\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    out << i << ',' << format_double(eigenvalues[i]) << '\n';
  }
}

void write_series_csv(const MetricSeries& series, std::ostream& out) {
  out << "gamma_t," << to_string(series.metric) << '\n';
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << format_double(series.times[i]) << ',' << format_double(series.values[i]) << '\n';
  }
}

std::string series_json(const MetricSeries& series, const numerics::ToleranceConfig& tolerances) {
  nlohmann::ordered_json j;
  j["metric"] = to_string(series.metric);
  j["channel"] = to_string(series.channel);
  j["params"] = {{"teeth", series.params.teeth()},
                 {"spacing", series.params.spacing()},
                 {"squeeze", series.params.squeeze()}};
  j["tolerances"] = {{"quad_abs", tolerances.quad_abs},
                     {"eig_rel", tolerances.eig_rel},
                     {"conv_rel", tolerances.conv_rel}};
  j["gamma_t"] = series.times;
  j["values"] = series.values;
  return j.dump(2) + "\n";
}

}  // namespace combsim::io
