#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "combsim/channel.hpp"
#include "combsim/comb.hpp"
#include "combsim/evolution.hpp"
#include "combsim/numerics.hpp"
#include "combsim/phase_space.hpp"

namespace combsim {

enum class Metric { fidelity, orthogonality, distinguishability, error_probability };

std::string_view to_string(Metric metric);
/// Accepts fidelity, orthogonality, distinguishability, error / error_probability.
Metric parse_metric(std::string_view name);

struct MetricOptions {
  GridPolicy grid;
  numerics::ToleranceConfig tolerances;
  Coherence coherence = Coherence::coherent;
  Basis basis = Basis::zero;
  /// Distinguishability: refine the kernel axis until converged.
  bool converge = false;
};

struct MetricSeries {
  ChannelKind channel;
  CombParams params;
  Metric metric;
  std::vector<double> times;
  std::vector<double> values;

  /// Throws ParameterError unless times start at 0, ascend strictly and
  /// match values in length.
  void validate() const;
};

/// F(t) = 2 pi int w(0) w(t) over the auto grid.
double fidelity(const CombParams& params, Basis basis, const NoiseChannel& channel,
                const MetricOptions& options = {});

/// -dF/dt(0) in units of gamma from the exact quadrature variances:
/// damping (var_q + var_p - 1) / 2, diffusion var_q + var_p.
double fidelity_rate_exact(const CombParams& params, ChannelKind kind);
/// Leading order: damping ((N^2-1) d^2/12 + cosh 2r - 1) / 2, diffusion (N^2-1) d^2/12 + cosh 2r.
double fidelity_rate_leading(const CombParams& params, ChannelKind kind);

/// Second-order one-sided estimate of d value / d(gamma t) at times[0]
/// from the first three samples.
double finite_difference_rate(std::span<const double> times, std::span<const double> values);
double finite_difference_rate(const MetricSeries& series);

/// O(t) = tr rho_0(t) rho_1(t) = 2 pi int w_0(t) w_1(t).
double orthogonality(const CombParams& params, const NoiseChannel& channel,
                     const MetricOptions& options = {});

/// Matrix elements between the real basis wavefunctions; <0|p|1> = i * p_imag.
struct MatrixElements {
  double overlap;
  double q;
  double p_imag;
  double q2_plus_p2;
};

MatrixElements basis_matrix_elements(const CombParams& params, double tol = 1e-10);

struct OrthogonalityRate {
  double derivative;  ///< dO/d(gamma t) at t = 0
  double relative;    ///< -dO/d(gamma t) / O at t = 0
};

OrthogonalityRate orthogonality_rate(const CombParams& params, ChannelKind kind,
                                     double tol = 1e-10);
/// Nearest-neighbour expansion of -dO/d(gamma t) / O at t = 0.
double orthogonality_rate_leading(const CombParams& params, ChannelKind kind);

/// Trace distance of the two evolved basis states from the eigenvalues of
/// h (rho_0 - rho_1) on the auto position axis.
double distinguishability(const CombParams& params, const NoiseChannel& channel,
                          const MetricOptions& options = {});
/// Same, refining the axis by doubling until tolerances.conv_rel is met.
numerics::Converged distinguishability_converged(const CombParams& params,
                                                 const NoiseChannel& channel,
                                                 const MetricOptions& options = {});
/// -dD/d(gamma t) at 0 from D at {0, step, 2 step} (Richardson-extrapolated forward difference).
double distinguishability_rate(const CombParams& params, ChannelKind kind,
                               const MetricOptions& options = {}, double step = 1e-3);

/// Helstrom bound (1 - D) / 2; D must lie in [0, 1] up to 1e-9.
double holevo_error(double distinguishability);

double metric_value(const CombParams& params, const NoiseChannel& channel, Metric metric,
                    const MetricOptions& options = {});

MetricSeries metric_series(const CombParams& params, ChannelKind kind, Metric metric,
                           std::vector<double> times, const MetricOptions& options = {});

/// Evenly spaced times 0, t_max/(steps-1), ..., t_max; steps = 1 gives {0}.
std::vector<double> time_samples(double t_max, int steps);

/// Initial rate versus tooth number. `rate` is -dF/d(gamma t) for fidelity,
/// -dO/d(gamma t) / O for orthogonality and -dD/d(gamma t) for
/// distinguishability (finite differences); `leading` is the scaling formula
/// or NaN where none exists.
struct ScanRow {
  int teeth;
  double rate;
  double leading;
};

std::vector<ScanRow> scan_over_teeth(double spacing, double squeeze, ChannelKind kind,
                                     Metric metric, int n_min, int n_max,
                                     const MetricOptions& options = {});

}  // namespace combsim
