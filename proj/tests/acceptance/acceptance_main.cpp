// Acceptance suite: one PASS/FAIL line per criterion, sub-checks indented
// below it. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "combsim/evolution.hpp"
#include "combsim/metrics.hpp"
#include "combsim/oracle.hpp"
#include "combsim/phase_space.hpp"

using namespace combsim;

namespace {

struct SubCheck {
  std::string name;
  double measured;
  double expected;
  double tolerance;  // |measured - expected| <= tolerance
  bool pass;
};

class Criterion {
 public:
  void near(std::string name, double measured, double expected, double tol) {
    checks_.push_back({std::move(name), measured, expected, tol, std::abs(measured - expected) <= tol});
  }
  void rel(std::string name, double measured, double expected, double tol) {
    checks_.push_back({std::move(name), measured, expected, tol,
                       std::abs(measured - expected) <= tol * std::abs(expected)});
  }
  void at_most(std::string name, double measured, double limit) {
    checks_.push_back({std::move(name), measured, limit, 0.0, measured <= limit});
  }
  void at_least(std::string name, double measured, double limit) {
    checks_.push_back({std::move(name), measured, limit, 0.0, measured >= limit});
  }
  bool pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const SubCheck& c) { return c.pass; });
  }
  const std::vector<SubCheck>& checks() const { return checks_; }

 private:
  std::vector<SubCheck> checks_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const ChannelKind both[] = {ChannelKind::damping, ChannelKind::diffusion};
const CombParams paper_sets[] = {{8, 4.0, 0.5}, {8, 5.0, 0.3}, {8, 7.0, -0.1}};

std::string tag(const CombParams& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%d,%.1f,%.1f)", p.teeth(), p.spacing(), p.squeeze());
  return buf;
}

std::string tag(const CombParams& p, ChannelKind k, double t = -1) {
  std::string s = tag(p) + " " + std::string(to_string(k));
  if (t >= 0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " gt=%.2f", t);
    s += buf;
  }
  return s;
}

// 1. initial error probabilities, exact overlap, +-0.05 pp, < 1 s
void initial_errors(Criterion& c) {
  const double expected[] = {0.4, 0.3, 0.6};
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 3; ++i) {
    c.near("eps(0) [%] " + tag(paper_sets[i]), 100 * initial_error(paper_sets[i]), expected[i], 0.05);
  }
  c.at_most("runtime [s]", seconds_since(t0), 1.0);
}

// 2. noise-grown errors via converged eigendecomposition, +-0.2 / +-0.3 pp
void grown_errors(Criterion& c) {
  const CombParams p(8, 4.0, 0.4);
  MetricOptions options;
  c.near("eps(0) [%] " + tag(p), 100 * holevo_error(distinguishability(p, NoiseChannel(ChannelKind::damping, 0.0))),
         1.0, 0.05);
  const double expected[] = {2.7, 9.1};
  const double tol[] = {0.2, 0.3};
  for (int i = 0; i < 2; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const NoiseChannel ch(both[i], 0.2);
    const auto conv = distinguishability_converged(p, ch, options);
    const auto points = auto_position_axis(p, 0.2, options.grid).refined(conv.level).count;
    c.near("eps(0.2) [%] " + tag(p, both[i]), 100 * holevo_error(conv.value), expected[i], tol[i]);
    c.at_most("  convergence estimate", conv.error_estimate, options.tolerances.conv_rel * conv.value);
    c.at_most("  n_x", static_cast<double>(points), 2048);
    c.at_most("  runtime [s]", seconds_since(t0), 120);
  }
}

// 3. finite-difference slopes of F and O against the closed-form rates, 1e-3 relative
void analytic_rates(Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> times = {0.0, 1e-5, 2e-5};
  for (const auto& p : paper_sets) {
    for (ChannelKind k : both) {
      const auto f = metric_series(p, k, Metric::fidelity, times);
      c.rel("-dF/dgt " + tag(p, k), -finite_difference_rate(f), fidelity_rate_exact(p, k), 1e-3);
      const auto o = metric_series(p, k, Metric::orthogonality, times);
      c.rel("dO/dgt " + tag(p, k), finite_difference_rate(o), orthogonality_rate(p, k).derivative, 1e-3);
    }
  }
  c.at_most("runtime [s]", seconds_since(t0), 60);
}

// 4. scaling laws at (d, r) = (4.0, 0.5)
void scaling_laws(Criterion& c) {
  for (ChannelKind k : both) {
    double worst_f = 0, worst_o = 0;
    for (const auto& row : scan_over_teeth(4.0, 0.5, k, Metric::fidelity, 2, 12)) {
      worst_f = std::max(worst_f, std::abs(row.rate - row.leading) / std::abs(row.leading));
    }
    for (const auto& row : scan_over_teeth(4.0, 0.5, k, Metric::orthogonality, 2, 12)) {
      worst_o = std::max(worst_o, std::abs(row.rate - row.leading) / std::abs(row.leading));
    }
    c.at_most("fidelity rate vs leading, N in [2,12], max rel " + std::string(to_string(k)), worst_f, 0.02);
    c.at_most("orthogonality rate vs leading, N in [2,12], max rel " + std::string(to_string(k)), worst_o, 0.02);
  }
  const CombParams big(12, 4.0, 0.5);
  c.near("fidelity rate ratio diffusion/damping at N=12",
         fidelity_rate_exact(big, ChannelKind::diffusion) / fidelity_rate_exact(big, ChannelKind::damping), 2.0, 0.05);

  auto ratio = [](int N) {
    const CombParams p(N, 4.0, 0.5);
    return distinguishability_rate(p, ChannelKind::diffusion) / distinguishability_rate(p, ChannelKind::damping);
  };
  // "roughly a factor two", pinned as [1.5, 2.5]
  c.near("distinguishability rate ratio at N=1", ratio(1), 2.0, 0.5);
  c.at_least("distinguishability rate ratio at N=8", ratio(8), 10.0);
}

// 5. closed forms vs truncated Fock basis, 1e-4 absolute, dim <= 256, < 5 min
void oracle_equivalence(Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> times = {0.05, 0.1, 0.2};
  const CombParams sets[] = {{1, 4.0, 0.0}, {2, 3.0, 0.3}, {4, 4.0, 0.4}};
  for (const auto& p : sets) {
    const std::size_t dim = oracle::auto_dim(p);
    c.at_most("Fock dimension " + tag(p), static_cast<double>(dim), 256);
    for (ChannelKind k : both) {
      const auto fock = oracle::oracle_series(p, k, times, dim);
      double worst = 0;
      for (std::size_t i = 0; i < times.size(); ++i) {
        const NoiseChannel ch(k, times[i]);
        worst = std::max({worst, std::abs(fidelity(p, Basis::zero, ch) - fock[i].fidelity),
                          std::abs(orthogonality(p, ch) - fock[i].orthogonality),
                          std::abs(distinguishability(p, ch) - fock[i].distinguishability)});
      }
      c.at_most("max |closed - Fock| over F, O, D, gt " + tag(p, k), worst, 1e-4);
    }
  }
  c.at_most("runtime [s]", seconds_since(t0), 300);
}

// 6. structural invariants, < 10 min
void invariants(Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const CombParams sets[] = {{8, 4.0, 0.4}, {8, 4.0, -0.1}, {8, 4.0, 0.5}, {8, 5.0, 0.3}, {8, 7.0, -0.1}};

  double norm_err = 0, marg_err = 0, reduce_err = 0;
  for (const auto& p : sets) {
    for (Basis b : {Basis::zero, Basis::one}) {
      const auto grid = auto_grid(p, 0.0);
      const auto w = sample_wigner(p, b, grid);
      norm_err = std::max(norm_err, std::abs(integrate(w) - 1.0));
      const auto pos = position_marginal_numeric(w);
      const auto mom = momentum_marginal_numeric(w);
      for (std::size_t i = 0; i < pos.size(); ++i) {
        marg_err = std::max(marg_err, std::abs(pos[i] - position_marginal(p, b, grid.q().at(i))));
      }
      for (std::size_t j = 0; j < mom.size(); ++j) {
        marg_err = std::max(marg_err, std::abs(mom[j] - momentum_marginal(p, grid.p().at(j))));
      }
      for (ChannelKind k : both) {
        const NoiseChannel zero(k, 0.0);
        for (double q = -20; q <= 20; q += 0.77) {
          for (double pp = -4; pp <= 4; pp += 0.31) {
            reduce_err = std::max(reduce_err, std::abs(evolved_wigner(p, b, zero, q, pp) - wigner_at(p, b, q, pp)));
          }
        }
      }
    }
  }
  c.at_most("max |int W - 1|", norm_err, 1e-8);
  c.at_most("max marginal mismatch", marg_err, 1e-8);
  c.at_most("max t=0 channel reduction error", reduce_err, 1e-12);

  const CombParams p(8, 4.0, 0.4);
  const auto times = time_samples(1.0, 11);
  for (ChannelKind k : both) {
    const auto s = metric_series(p, k, Metric::distinguishability, times);
    double worst_rise = 0;
    for (std::size_t i = 1; i < s.values.size(); ++i) {
      worst_rise = std::max(worst_rise, s.values[i] - s.values[i - 1]);
    }
    c.at_most("D contractivity, largest rise " + tag(p, k), worst_rise, 1e-6);
  }

  MetricOptions incoherent;
  incoherent.coherence = Coherence::incoherent;
  for (const auto& s : {CombParams(8, 4.0, 0.4), paper_sets[0], paper_sets[1], paper_sets[2]}) {
    const double o = basis_overlap(s);
    const NoiseChannel zero(ChannelKind::damping, 0.0);
    const double coherent = distinguishability(s, zero);
    c.near("D(0) eigen vs sqrt(1-o^2) " + tag(s), coherent, std::sqrt(1 - o * o), 1e-6);
    if (s.squeeze() != 0.4) {
      c.near("D(0) incoherent vs coherent " + tag(s), distinguishability(s, zero, incoherent), coherent, 1e-3);
    }
  }
  c.at_most("runtime [s]", seconds_since(t0), 600);
}

}  // namespace

int main() {
  const struct {
    const char* title;
    std::function<void(Criterion&)> run;
  } criteria[] = {
      {"initial error probabilities", initial_errors},
      {"noise-grown error probabilities", grown_errors},
      {"analytic-rate validation", analytic_rates},
      {"scaling-law reproduction", scaling_laws},
      {"oracle equivalence", oracle_equivalence},
      {"structural invariants", invariants},
  };
  int failed = 0;
  int index = 0;
  for (const auto& crit : criteria) {
    ++index;
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool pass = error.empty() && c.pass();
    failed += !pass;
    std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", index, crit.title,
                seconds_since(t0));
    for (const auto& s : c.checks()) {
      if (s.tolerance > 0) {
        std::printf("    %-4s %-62s measured %.10g expected %.10g tol %.3g\n", s.pass ? "ok" : "MISS",
                    s.name.c_str(), s.measured, s.expected, s.tolerance);
      } else {
        std::printf("    %-4s %-62s measured %.10g limit %.10g\n", s.pass ? "ok" : "MISS", s.name.c_str(),
                    s.measured, s.expected);
      }
    }
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", index - failed, std::size(criteria));
  return failed;
}
