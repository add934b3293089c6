#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "combsim/channel.hpp"
#include "combsim/comb.hpp"

namespace combsim {

/// Uniform sampling of [min, max] with `count` points including both ends.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  double step() const { return (max - min) / static_cast<double>(count - 1); }
  double at(std::size_t i) const { return min + static_cast<double>(i) * step(); }
  /// Trapezoid weight of sample i.
  double weight(std::size_t i) const {
    return (i == 0 || i + 1 == count) ? 0.5 * step() : step();
  }
  std::vector<double> samples() const;
  /// Same extent with step / 2^level (nested samples).
  Axis refined(int level) const;

  bool operator==(const Axis&) const = default;
};

void validate_axis(const Axis& axis, const char* name);

/// Rectangular (q, p) sampling domain. Values are stored q-major:
/// index = i_q * p.count + i_p.
class PhaseGrid {
 public:
  PhaseGrid(Axis q, Axis p);

  const Axis& q() const { return q_; }
  const Axis& p() const { return p_; }
  std::size_t size() const { return q_.count * p_.count; }
  PhaseGrid refined(int level) const { return PhaseGrid(q_.refined(level), p_.refined(level)); }

  bool operator==(const PhaseGrid&) const = default;

 private:
  Axis q_;
  Axis p_;
};

struct GridPolicy {
  double sigma_cut = 6.0;        ///< Gaussian truncation in units of the widest width
  double width_samples = 4.0;    ///< samples per narrowest Gaussian width
  double fringe_samples = 4.0;   ///< samples per period of the fastest fringe cos(p (N-1) d)
  std::size_t max_bytes = std::size_t{1} << 30;
  std::size_t max_kernel_points = 4096;
};

/// Sampling domain for the comb at gamma_t, valid for both channels and for
/// the t = 0 state on the same grid.
PhaseGrid auto_grid(const CombParams& params, double gamma_t, const GridPolicy& policy = {});

/// The q axis of auto_grid; used for position-representation kernels.
Axis auto_position_axis(const CombParams& params, double gamma_t, const GridPolicy& policy = {});

/// Half-width that must be covered on the position axis.
double position_support(const CombParams& params, double gamma_t, double sigma_cut = 6.0);

/// Shared closed form of the static and time-evolved comb Wigner functions:
///
///   w(q,p) = prefactor exp(-p_env p^2) sum_{n,m} cos(freq D_nm p) exp(-pair_decay D_nm^2)
///            exp(-q_inv_width2 (q - q_shift - center_scale C_nm)^2)
///
/// with D_nm = q_n - q_m and C_nm = (q_n + q_m) / 2.
struct CombWignerForm {
  CombParams params;
  double prefactor;
  double p_env;
  double freq;
  double pair_decay;
  double center_scale;
  double q_shift;
  double q_inv_width2;
};

CombWignerForm static_form(const CombParams& params, Basis basis);

double evaluate(const CombWignerForm& form, double q, double p);
/// Closed-form p-integral of the form.
double position_marginal(const CombWignerForm& form, double q);
/// Closed-form q-integral of the form.
double momentum_marginal(const CombWignerForm& form, double p);

double wigner_at(const CombParams& params, Basis basis, double q, double p);
double position_marginal(const CombParams& params, Basis basis, double q);
/// Diagonal teeth plus nearest-neighbour side peaks.
double position_marginal_leading(const CombParams& params, Basis basis, double q);
/// Grating form e^{-r}/(norm sqrt(pi)) exp(-e^{-2r} p^2) U_{N-1}^2(cos(p d / 2)),
/// identical for both basis states.
double momentum_marginal(const CombParams& params, double p);

/// U_n(cos theta) = sin((n+1) theta) / sin(theta), finite at theta = k pi.
double chebyshev_u(int n, double theta);

struct WignerField {
  PhaseGrid grid;
  std::vector<double> values;
  Basis basis = Basis::zero;
  std::optional<ChannelKind> channel;
  double gamma_t = 0.0;

  double at(std::size_t iq, std::size_t ip) const { return values[iq * grid.p().count + ip]; }
  std::span<const double> row(std::size_t iq) const {
    return std::span<const double>(values).subspan(iq * grid.p().count, grid.p().count);
  }
};

/// Samples a form on a grid (separable evaluation over the 2N-1 pair centres).
WignerField sample(const CombWignerForm& form, const PhaseGrid& grid);
WignerField sample_wigner(const CombParams& params, Basis basis, const PhaseGrid& grid);

/// 2D trapezoid integral.
double integrate(const WignerField& field);
/// 2 pi * trapezoid integral of a * b; GridError when the grids differ.
double wigner_overlap(const WignerField& a, const WignerField& b);
/// Trapezoid p-integral of every q row.
std::vector<double> position_marginal_numeric(const WignerField& field);
/// Trapezoid q-integral of every p column.
std::vector<double> momentum_marginal_numeric(const WignerField& field);
/// Diagnostic only: trapezoid integral of |w| over the region w < 0.
double negative_volume(const WignerField& field);

}  // namespace combsim
