#include "combsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "combsim/error.hpp"
#include "combsim/parallel.hpp"

namespace combsim {

using std::numbers::pi;

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::fidelity:
      return "fidelity";
    case Metric::orthogonality:
      return "orthogonality";
    case Metric::distinguishability:
      return "distinguishability";
    case Metric::error_probability:
      return "error_probability";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  if (name == "fidelity") return Metric::fidelity;
  if (name == "orthogonality") return Metric::orthogonality;
  if (name == "distinguishability") return Metric::distinguishability;
  if (name == "error" || name == "error_probability") return Metric::error_probability;
  throw ParameterError("unknown metric '" + std::string(name) +
                       "' (fidelity | orthogonality | distinguishability | error)");
}

void MetricSeries::validate() const {
  if (times.empty()) throw ParameterError("metric series has no samples");
  if (times.size() != values.size()) throw ParameterError("metric series times/values differ in length");
  if (times.front() != 0.0) throw ParameterError("metric series must start at gamma_t = 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ParameterError("metric series times must ascend strictly");
  }
}

double fidelity(const CombParams& params, Basis basis, const NoiseChannel& channel,
                const MetricOptions& options) {
  const PhaseGrid grid = auto_grid(params, channel.gamma_t(), options.grid);
  const WignerField initial = sample_wigner(params, basis, grid);
  const WignerField evolved = sample_evolved_wigner(params, basis, channel, grid);
  return wigner_overlap(initial, evolved);
}

double fidelity_rate_exact(const CombParams& params, ChannelKind kind) {
  const auto v = quadrature_variances(params);
  const double sum = v.var_q + v.var_p;
  return kind == ChannelKind::damping ? 0.5 * (sum - 1.0) : sum;
}

double fidelity_rate_leading(const CombParams& params, ChannelKind kind) {
  const double N = params.teeth();
  const double d = params.spacing();
  const double spread = (N * N - 1.0) * d * d / 12.0;
  const double c = std::cosh(2.0 * params.squeeze());
  return kind == ChannelKind::damping ? 0.5 * (spread + c - 1.0) : spread + c;
}

double finite_difference_rate(std::span<const double> times, std::span<const double> values) {
  if (times.size() < 3 || values.size() < 3) {
    throw ParameterError("finite-difference rate needs at least three samples");
  }
  const double h1 = times[1] - times[0];
  const double h2 = times[2] - times[0];
  if (!(h1 > 0.0) || !(h2 > h1)) throw ParameterError("finite-difference times must ascend");
  // quadratic through the first three samples, differentiated at times[0]
  return -values[0] * (h1 + h2) / (h1 * h2) + values[1] * h2 / (h1 * (h2 - h1)) -
         values[2] * h1 / (h2 * (h2 - h1));
}

double finite_difference_rate(const MetricSeries& series) {
  series.validate();
  return finite_difference_rate(series.times, series.values);
}

double orthogonality(const CombParams& params, const NoiseChannel& channel,
                     const MetricOptions& options) {
  const PhaseGrid grid = auto_grid(params, channel.gamma_t(), options.grid);
  const WignerField zero = sample_evolved_wigner(params, Basis::zero, channel, grid);
  const WignerField one = sample_evolved_wigner(params, Basis::one, channel, grid);
  return wigner_overlap(zero, one);
}

namespace {

// Real basis wavefunction and its first derivative.
struct Wave {
  double value;
  double slope;
};

Wave wavefunction(const CombParams& params, double norm_factor, double offset, double q) {
  const double s = params.squeeze_factor();
  double value = 0.0;
  double slope = 0.0;
  for (int n = 1; n <= params.teeth(); ++n) {
    const double x = q - params.tooth(n) - offset;
    const double g = std::exp(-0.5 * s * x * x);
    value += g;
    slope -= s * x * g;
  }
  return {norm_factor * value, norm_factor * slope};
}

}  // namespace

MatrixElements basis_matrix_elements(const CombParams& params, double tol) {
  const double s = params.squeeze_factor();
  const double d = params.spacing();
  const double norm_factor = std::pow(s / pi, 0.25) / std::sqrt(normalization(params));
  const double width = 1.0 / std::sqrt(s);
  const double lo = params.tooth(1) - 14.0 * width;
  const double hi = params.tooth(params.teeth()) + 0.5 * d + 14.0 * width;
  const auto segments = static_cast<std::size_t>(std::ceil((hi - lo) / width));
  const double seg_tol = tol / static_cast<double>(segments);
  const double seg = (hi - lo) / static_cast<double>(segments);

  auto integrate = [&](auto&& f) {
    double total = 0.0;
    for (std::size_t k = 0; k < segments; ++k) {
      const double a = lo + static_cast<double>(k) * seg;
      total += numerics::integrate_1d(f, a, a + seg, seg_tol);
    }
    return total;
  };
  auto zero = [&](double q) { return wavefunction(params, norm_factor, 0.0, q); };
  auto one = [&](double q) { return wavefunction(params, norm_factor, 0.5 * d, q); };

  MatrixElements m{};
  m.overlap = integrate([&](double q) { return zero(q).value * one(q).value; });
  m.q = integrate([&](double q) { return q * zero(q).value * one(q).value; });
  // <0|p|1> = -i int psi_0 psi_1'
  m.p_imag = integrate([&](double q) { return -zero(q).value * one(q).slope; });
  // <0|p^2|1> = int psi_0' psi_1' after integrating by parts
  m.q2_plus_p2 = integrate([&](double q) {
    const Wave a = zero(q);
    const Wave b = one(q);
    return q * q * a.value * b.value + a.slope * b.slope;
  });
  return m;
}

OrthogonalityRate orthogonality_rate(const CombParams& params, ChannelKind kind, double tol) {
  const MatrixElements m = basis_matrix_elements(params, tol);
  const double cross = m.q * m.q + m.p_imag * m.p_imag;
  const double o = m.overlap * m.overlap;
  const double derivative = kind == ChannelKind::damping
                                ? cross + o - m.overlap * m.q2_plus_p2
                                : 2.0 * (cross - m.overlap * m.q2_plus_p2);
  return {derivative, -derivative / o};
}

double orthogonality_rate_leading(const CombParams& params, ChannelKind kind) {
  const double N = params.teeth();
  const double d = params.spacing();
  const double s = params.squeeze_factor();
  const double c = std::cosh(2.0 * params.squeeze());
  const double base = d * d * N * (N - 1.0) / 12.0 -
                      s * s * d * d * (2.0 * N * N - 2.0 * N + 1.0) /
                          (8.0 * (2.0 * N - 1.0) * (2.0 * N - 1.0));
  return kind == ChannelKind::damping ? c - 1.0 + base : 2.0 * (c + base);
}

namespace {

double distinguishability_on(const CombParams& params, const NoiseChannel& channel,
                             const Axis& axis, const MetricOptions& options) {
  const DensityKernel zero =
      density_kernel(params, Basis::zero, channel, axis, options.coherence, options.grid);
  const DensityKernel one =
      density_kernel(params, Basis::one, channel, axis, options.coherence, options.grid);
  const Eigen::MatrixXd diff = axis.step() * (zero.matrix - one.matrix);
  const auto eigs = numerics::symmetric_eigenvalues(diff);
  return numerics::half_trace_norm(eigs, options.tolerances.eig_rel);
}

}  // namespace

double distinguishability(const CombParams& params, const NoiseChannel& channel,
                          const MetricOptions& options) {
  if (options.converge) return distinguishability_converged(params, channel, options).value;
  const Axis axis = auto_position_axis(params, channel.gamma_t(), options.grid);
  return distinguishability_on(params, channel, axis, options);
}

numerics::Converged distinguishability_converged(const CombParams& params,
                                                 const NoiseChannel& channel,
                                                 const MetricOptions& options) {
  const Axis base = auto_position_axis(params, channel.gamma_t(), options.grid);
  numerics::ConvergencePolicy policy;
  policy.conv_rel = options.tolerances.conv_rel;
  // stop before the kernel cap
  int doublings = 0;
  while (doublings < policy.max_doublings &&
         base.refined(doublings + 1).count <= options.grid.max_kernel_points) {
    ++doublings;
  }
  if (doublings == 0) {
    throw GridError("kernel axis of " + std::to_string(base.count) +
                    " points cannot be refined within the kernel cap");
  }
  policy.max_doublings = doublings;
  return numerics::convergence_double(
      [&](int level) { return distinguishability_on(params, channel, base.refined(level), options); },
      policy);
}

double distinguishability_rate(const CombParams& params, ChannelKind kind,
                               const MetricOptions& options, double step) {
  if (!(step > 0.0)) throw ParameterError("finite-difference step must be positive");
  // one axis for all three samples so discretization errors cancel
  const Axis axis = auto_position_axis(params, 2.0 * step, options.grid);
  const double times[3] = {0.0, step, 2.0 * step};
  double values[3];
  for (int k = 0; k < 3; ++k) {
    values[k] = distinguishability_on(params, NoiseChannel(kind, times[k]), axis, options);
  }
  return -finite_difference_rate(times, values);
}

double holevo_error(double distinguishability) {
  constexpr double slack = 1e-9;
  if (!(distinguishability >= -slack && distinguishability <= 1.0 + slack)) {
    throw ParameterError("distinguishability must lie in [0, 1], got " +
                         std::to_string(distinguishability));
  }
  return 0.5 * (1.0 - std::clamp(distinguishability, 0.0, 1.0));
}

double metric_value(const CombParams& params, const NoiseChannel& channel, Metric metric,
                    const MetricOptions& options) {
  switch (metric) {
    case Metric::fidelity:
      return fidelity(params, options.basis, channel, options);
    case Metric::orthogonality:
      return orthogonality(params, channel, options);
    case Metric::distinguishability:
      return distinguishability(params, channel, options);
    case Metric::error_probability:
      return holevo_error(distinguishability(params, channel, options));
  }
  throw ParameterError("unknown metric");
}

MetricSeries metric_series(const CombParams& params, ChannelKind kind, Metric metric,
                           std::vector<double> times, const MetricOptions& options) {
  MetricSeries series{kind, params, metric, std::move(times), {}};
  series.values.assign(series.times.size(), 0.0);
  series.validate();
  parallel_for(series.times.size(), [&](std::size_t i) {
    series.values[i] = metric_value(params, NoiseChannel(kind, series.times[i]), metric, options);
  });
  return series;
}

std::vector<double> time_samples(double t_max, int steps) {
  if (steps < 1) throw ParameterError("time series needs at least one step");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw ParameterError("t_max must be finite and non-negative");
  }
  if (steps == 1) return {0.0};
  if (t_max == 0.0) throw ParameterError("t_max must be positive when steps > 1");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) out[k] = t_max * k / (steps - 1);
  return out;
}

std::vector<ScanRow> scan_over_teeth(double spacing, double squeeze, ChannelKind kind,
                                     Metric metric, int n_min, int n_max,
                                     const MetricOptions& options) {
  if (n_min < 1 || n_max < n_min) {
    throw ParameterError("tooth range must satisfy 1 <= n_min <= n_max");
  }
  constexpr double none = std::numeric_limits<double>::quiet_NaN();
  std::vector<ScanRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
  parallel_for(rows.size(), [&](std::size_t i) {
    const int teeth = n_min + static_cast<int>(i);
    const CombParams params(teeth, spacing, squeeze);
    ScanRow row{teeth, 0.0, none};
    switch (metric) {
      case Metric::fidelity:
        row.rate = fidelity_rate_exact(params, kind);
        row.leading = fidelity_rate_leading(params, kind);
        break;
      case Metric::orthogonality:
        row.rate = orthogonality_rate(params, kind, options.tolerances.quad_abs).relative;
        row.leading = orthogonality_rate_leading(params, kind);
        break;
      case Metric::distinguishability:
        row.rate = distinguishability_rate(params, kind, options);
        break;
      case Metric::error_probability:
        // eps = (1 - D) / 2 grows at half the decay rate of D
        row.rate = 0.5 * distinguishability_rate(params, kind, options);
        break;
    }
    rows[i] = row;
  });
  return rows;
}

}  // namespace combsim
