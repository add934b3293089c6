#include "combsim/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "combsim/error.hpp"
#include "combsim/evolution.hpp"
#include "combsim/parallel.hpp"
#include "combsim/simd.hpp"

namespace combsim {

using std::numbers::pi;

std::vector<double> Axis::samples() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = at(i);
  return out;
}

Axis Axis::refined(int level) const {
  if (level < 0) throw ParameterError("axis refinement level must be non-negative");
  return {min, max, (count - 1) * (std::size_t{1} << level) + 1};
}

void validate_axis(const Axis& axis, const char* name) {
  if (!(axis.max > axis.min) || !std::isfinite(axis.min) || !std::isfinite(axis.max)) {
    throw GridError(std::string(name) + " axis needs finite bounds with max > min");
  }
  if (axis.count < 2) throw GridError(std::string(name) + " axis needs at least two samples");
}

PhaseGrid::PhaseGrid(Axis q, Axis p) : q_(q), p_(p) {
  validate_axis(q_, "q");
  validate_axis(p_, "p");
}

namespace {

struct WidthEnvelope {
  double q_max;     // widest position width over channels
  double q_min;     // narrowest position-like scale to resolve
  double p_max;
  double p_min;
  double freq_max;  // fastest fringe frequency per unit separation
};

WidthEnvelope width_envelope(const CombParams& params, double gamma_t) {
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) {
    throw ParameterError("gamma_t must be finite and non-negative");
  }
  const double r = params.squeeze();
  const auto damp = evolved_widths(r, NoiseChannel(ChannelKind::damping, gamma_t));
  const auto diff = evolved_widths(r, NoiseChannel(ChannelKind::diffusion, gamma_t));
  const double tooth_q = std::exp(-r);
  const double tooth_p = std::exp(r);
  WidthEnvelope env{};
  env.q_max = std::max({tooth_q, std::sqrt(damp.sigma_q2), std::sqrt(diff.sigma_q2)});
  // kernels also resolve the relative coordinate, of width 2 / sigma_p
  env.q_min = std::min({tooth_q, std::sqrt(damp.sigma_q2), 2.0 / std::sqrt(damp.sigma_p2),
                        2.0 / std::sqrt(diff.sigma_p2)});
  env.p_max = std::max({tooth_p, std::sqrt(damp.sigma_p2), std::sqrt(diff.sigma_p2)});
  env.p_min = std::min(tooth_p, std::sqrt(damp.sigma_p2));
  const double damp_scale =
      damp.sigma_p2 * std::exp(-2.0 * r + 0.5 * gamma_t);  // damping fringe divisor
  env.freq_max = std::max(1.0, 1.0 / damp_scale);
  return env;
}

std::size_t samples_for(double extent, double target_step) {
  const double n = std::floor(extent / target_step) + 2.0;
  if (!(n < 1e12)) throw GridError("grid resolution request is unbounded");
  return static_cast<std::size_t>(n);
}

}  // namespace

double position_support(const CombParams& params, double gamma_t, double sigma_cut) {
  const auto env = width_envelope(params, gamma_t);
  const double d = params.spacing();
  return (params.teeth() + 1) * d / 2.0 + d / 2.0 + sigma_cut * env.q_max;
}

Axis auto_position_axis(const CombParams& params, double gamma_t, const GridPolicy& policy) {
  const auto env = width_envelope(params, gamma_t);
  const double half = position_support(params, gamma_t, policy.sigma_cut);
  const double step = env.q_min / policy.width_samples;
  return {-half, half, samples_for(2.0 * half, step)};
}

PhaseGrid auto_grid(const CombParams& params, double gamma_t, const GridPolicy& policy) {
  const auto env = width_envelope(params, gamma_t);
  const Axis q = auto_position_axis(params, gamma_t, policy);

  const double p_half = policy.sigma_cut * env.p_max;
  double p_step = env.p_min / policy.width_samples;
  if (params.teeth() > 1) {
    const double widest = (params.teeth() - 1) * params.spacing() * env.freq_max;
    p_step = std::min(p_step, 2.0 * pi / (widest * policy.fringe_samples));
  }
  const Axis p{-p_half, p_half, samples_for(2.0 * p_half, p_step)};

  const double bytes = static_cast<double>(q.count) * static_cast<double>(p.count) * 8.0;
  if (bytes > static_cast<double>(policy.max_bytes)) {
    throw GridError("auto grid " + std::to_string(q.count) + " x " + std::to_string(p.count) +
                    " exceeds the memory cap of " + std::to_string(policy.max_bytes) + " bytes");
  }
  return PhaseGrid(q, p);
}

CombWignerForm static_form(const CombParams& params, Basis basis) {
  const double s = params.squeeze_factor();
  return CombWignerForm{params,
                        1.0 / (normalization(params) * pi),
                        1.0 / s,
                        1.0,
                        0.0,
                        1.0,
                        basis_index(basis) * 0.5 * params.spacing(),
                        s};
}

double evaluate(const CombWignerForm& f, double q, double p) {
  const auto& c = f.params;
  const int N = c.teeth();
  double total = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m <= N; ++m) {
      const double D = c.pair_separation(n, m);
      const double u = q - f.q_shift - f.center_scale * c.pair_center(n, m);
      total += std::cos(f.freq * D * p) * std::exp(-f.pair_decay * D * D - f.q_inv_width2 * u * u);
    }
  }
  return f.prefactor * std::exp(-f.p_env * p * p) * total;
}

double position_marginal(const CombWignerForm& f, double q) {
  const auto& c = f.params;
  const int N = c.teeth();
  double total = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m <= N; ++m) {
      const double D = c.pair_separation(n, m);
      const double u = q - f.q_shift - f.center_scale * c.pair_center(n, m);
      const double fd = f.freq * D;
      total += std::exp(-fd * fd / (4.0 * f.p_env) - f.pair_decay * D * D - f.q_inv_width2 * u * u);
    }
  }
  return f.prefactor * std::sqrt(pi / f.p_env) * total;
}

double momentum_marginal(const CombWignerForm& f, double p) {
  const auto& c = f.params;
  const int N = c.teeth();
  double total = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m <= N; ++m) {
      const double D = c.pair_separation(n, m);
      total += std::cos(f.freq * D * p) * std::exp(-f.pair_decay * D * D);
    }
  }
  return f.prefactor * std::sqrt(pi / f.q_inv_width2) * std::exp(-f.p_env * p * p) * total;
}

double wigner_at(const CombParams& params, Basis basis, double q, double p) {
  return evaluate(static_form(params, basis), q, p);
}

double position_marginal(const CombParams& params, Basis basis, double q) {
  return position_marginal(static_form(params, basis), q);
}

double position_marginal_leading(const CombParams& params, Basis basis, double q) {
  const double s = params.squeeze_factor();
  const double d = params.spacing();
  const double x = q - basis_index(basis) * 0.5 * d;
  double teeth = 0.0;
  double side = 0.0;
  for (int n = 1; n <= params.teeth(); ++n) {
    const double u = x - params.tooth(n);
    teeth += std::exp(-s * u * u);
    if (n < params.teeth()) {
      const double v = u - 0.5 * d;
      side += std::exp(-s * v * v - s * d * d / 4.0);
    }
  }
  return std::exp(params.squeeze()) / (normalization(params) * std::sqrt(pi)) * (teeth + 2.0 * side);
}

double chebyshev_u(int n, double theta) {
  const double s = std::sin(theta);
  if (std::abs(s) >= 1e-6) return std::sin((n + 1) * theta) / s;
  const double k = std::round(theta / pi);
  const double eps = theta - k * pi;
  const bool odd = (static_cast<long long>(k) * n) % 2 != 0;
  const double limit = (n + 1) * (1.0 - n * (n + 2.0) * eps * eps / 6.0);
  return odd ? -limit : limit;
}

double momentum_marginal(const CombParams& params, double p) {
  const double u = chebyshev_u(params.teeth() - 1, 0.5 * p * params.spacing());
  return std::exp(-params.squeeze()) / (normalization(params) * std::sqrt(pi)) *
         std::exp(-p * p / params.squeeze_factor()) * u * u;
}

WignerField sample(const CombWignerForm& f, const PhaseGrid& grid) {
  const auto& c = f.params;
  const int N = c.teeth();
  const double d = c.spacing();
  const std::size_t nq = grid.q().count;
  const std::size_t np = grid.p().count;
  const std::size_t centers = static_cast<std::size_t>(2 * N - 1);

  // Pairs (n, m) are indexed by k = n + m - 2 (centre) and delta = n - m.
  // Column factors C_k(p) collect every delta that shares centre k.
  std::vector<double> column(centers * np, 0.0);
  const auto p_samples = grid.p().samples();
  parallel_for(centers, [&](std::size_t k) {
    const int kk = static_cast<int>(k);
    const int reach = std::min(kk, 2 * N - 2 - kk);
    double* out = column.data() + k * np;
    for (int delta = kk % 2; delta <= reach; delta += 2) {
      const double D = delta * d;
      const double mult = (delta == 0 ? 1.0 : 2.0) * std::exp(-f.pair_decay * D * D);
      for (std::size_t j = 0; j < np; ++j) out[j] += mult * std::cos(f.freq * D * p_samples[j]);
    }
    for (std::size_t j = 0; j < np; ++j) {
      out[j] *= f.prefactor * std::exp(-f.p_env * p_samples[j] * p_samples[j]);
    }
  });

  WignerField field{grid, std::vector<double>(nq * np, 0.0), Basis::zero, std::nullopt, 0.0};
  parallel_for(nq, [&](std::size_t i) {
    const double q = grid.q().at(i);
    std::span<double> row(field.values.data() + i * np, np);
    for (std::size_t k = 0; k < centers; ++k) {
      const double center = (static_cast<double>(k) + 1.0 - N) * 0.5 * d;
      const double u = q - f.q_shift - f.center_scale * center;
      const double weight = std::exp(-f.q_inv_width2 * u * u);
      if (weight == 0.0) continue;
      simd::axpy(weight, std::span<const double>(column.data() + k * np, np), row);
    }
  });
  return field;
}

WignerField sample_wigner(const CombParams& params, Basis basis, const PhaseGrid& grid) {
  WignerField field = sample(static_form(params, basis), grid);
  field.basis = basis;
  return field;
}

namespace {

double row_trapezoid(std::span<const double> row, double h) {
  return h * (simd::sum(row) - 0.5 * (row.front() + row.back()));
}

}  // namespace

double integrate(const WignerField& field) {
  const auto& g = field.grid;
  double total = 0.0;
  for (std::size_t i = 0; i < g.q().count; ++i) {
    total += g.q().weight(i) * row_trapezoid(field.row(i), g.p().step());
  }
  return total;
}

double wigner_overlap(const WignerField& a, const WignerField& b) {
  if (!(a.grid == b.grid)) throw GridError("wigner_overlap: fields live on different grids");
  const auto& g = a.grid;
  const double hp = g.p().step();
  double total = 0.0;
  for (std::size_t i = 0; i < g.q().count; ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    const double inner =
        hp * (simd::dot(ra, rb) - 0.5 * (ra.front() * rb.front() + ra.back() * rb.back()));
    total += g.q().weight(i) * inner;
  }
  return 2.0 * pi * total;
}

std::vector<double> position_marginal_numeric(const WignerField& field) {
  std::vector<double> out(field.grid.q().count);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = row_trapezoid(field.row(i), field.grid.p().step());
  }
  return out;
}

std::vector<double> momentum_marginal_numeric(const WignerField& field) {
  const auto& g = field.grid;
  std::vector<double> out(g.p().count, 0.0);
  for (std::size_t i = 0; i < g.q().count; ++i) simd::axpy(g.q().weight(i), field.row(i), out);
  return out;
}

double negative_volume(const WignerField& field) {
  const auto& g = field.grid;
  double total = 0.0;
  for (std::size_t i = 0; i < g.q().count; ++i) {
    for (std::size_t j = 0; j < g.p().count; ++j) {
      const double v = field.at(i, j);
      if (v < 0.0) total -= g.q().weight(i) * g.p().weight(j) * v;
    }
  }
  return total;
}

}  // namespace combsim
