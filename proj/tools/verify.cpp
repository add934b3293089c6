#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "combsim/error.hpp"
#include "combsim/oracle.hpp"
#include "commands.hpp"

namespace combsim::cli {

namespace {

struct Check {
  std::string name;
  double measured;
  double expected;
  double tolerance;
  bool pass() const { return std::abs(measured - expected) <= tolerance; }
};

int report(const std::vector<Check>& checks) {
  std::printf("%-48s %16s %16s %10s  %s\n", "check", "measured", "expected", "tol", "result");
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("%-48s %16.8g %16.8g %10.2g  %s\n", c.name.c_str(), c.measured, c.expected,
                c.tolerance, c.pass() ? "PASS" : "FAIL");
    failed += !c.pass();
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  return failed ? 1 : 0;
}

std::vector<Check> paper_numbers(const Context& ctx) {
  std::vector<Check> out;
  const struct {
    double d, r, percent;
  } initial[] = {{4.0, 0.5, 0.4}, {5.0, 0.3, 0.3}, {7.0, -0.1, 0.6}, {4.0, 0.4, 1.0}};
  for (const auto& s : initial) {
    const CombParams p(8, s.d, s.r);
    char name[64];
    std::snprintf(name, sizeof name, "eps(0) [%%] N=8 d=%.1f r=%.1f", s.d, s.r);
    out.push_back({name, 100.0 * initial_error(p), s.percent, 0.05});
  }
  MetricOptions options = ctx.metric_options();
  options.converge = true;
  const CombParams p(8, 4.0, 0.4);
  out.push_back({"eps(0.2) [%] damping N=8 d=4 r=0.4",
                 100.0 * holevo_error(distinguishability(p, NoiseChannel(ChannelKind::damping, 0.2), options)),
                 2.7, 0.2});
  out.push_back({"eps(0.2) [%] diffusion N=8 d=4 r=0.4",
                 100.0 * holevo_error(distinguishability(p, NoiseChannel(ChannelKind::diffusion, 0.2), options)),
                 9.1, 0.3});
  out.push_back({"D(0) N=8 d=4 r=0.4",
                 distinguishability(p, NoiseChannel(ChannelKind::damping, 0.0), options), 0.9793, 1e-4});
  out.push_back({"O(0) N=8 d=4 r=0.4", orthogonality(p, NoiseChannel(ChannelKind::damping, 0.0)),
                 0.041, 1e-3});
  out.push_back({"-dF/d(gt) damping N=8 d=4 r=0.5",
                 fidelity_rate_exact(CombParams(8, 4.0, 0.5), ChannelKind::damping), 42.3, 0.05});
  return out;
}

std::vector<Check> oracle_suite(const Context& ctx) {
  std::vector<Check> out;
  const std::vector<double> times = {0.05, 0.1, 0.2};
  const MetricOptions options = ctx.metric_options();
  const struct {
    int n;
    double d, r;
  } sets[] = {{1, 4.0, 0.0}, {2, 3.0, 0.3}, {4, 4.0, 0.4}};
  for (const auto& s : sets) {
    const CombParams p(s.n, s.d, s.r);
    for (ChannelKind kind : {ChannelKind::damping, ChannelKind::diffusion}) {
      const auto fock = oracle::oracle_series(p, kind, times);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const NoiseChannel ch(kind, times[i]);
        char tag[96];
        std::snprintf(tag, sizeof tag, "(%d,%.0f,%.1f) %s gt=%.2f", s.n, s.d, s.r,
                      std::string(to_string(kind)).c_str(), times[i]);
        out.push_back({std::string("F ") + tag, fidelity(p, Basis::zero, ch, options),
                       fock[i].fidelity, 1e-4});
        out.push_back({std::string("O ") + tag, orthogonality(p, ch, options),
                       fock[i].orthogonality, 1e-4});
        out.push_back({std::string("D ") + tag, distinguishability(p, ch, options),
                       fock[i].distinguishability, 1e-4});
      }
    }
  }
  return out;
}

}  // namespace

int run_verify(const std::string& suite, const Context& ctx) {
  if (suite == "paper-numbers") return report(paper_numbers(ctx));
  if (suite == "oracle") return report(oracle_suite(ctx));
  throw ParameterError("unknown suite '" + suite + "' (paper-numbers | oracle)");
}

}  // namespace combsim::cli
