#pragma once

#include <Eigen/Dense>

#include "combsim/channel.hpp"
#include "combsim/comb.hpp"
#include "combsim/phase_space.hpp"

namespace combsim {

/// Squared Gaussian widths of a single evolved tooth: the Wigner function of
/// a tooth at the origin is proportional to exp(-q^2/sigma_q2 - p^2/sigma_p2).
/// Damping:   sigma_q2 = 1 - e^{-gt} + e^{-2r-gt}, sigma_p2 = 1 - e^{-gt} + e^{2r-gt}.
/// Diffusion: sigma_q2 = e^{-2r} + 2 gt,           sigma_p2 = e^{2r} + 2 gt.
struct EvolvedWidths {
  double sigma_q2;
  double sigma_p2;
};

EvolvedWidths evolved_widths(double squeeze, const NoiseChannel& channel);

CombWignerForm evolved_form(const CombParams& params, Basis basis, const NoiseChannel& channel);

double evolved_wigner_damping(const CombParams& params, Basis basis, double q, double p,
                              double gamma_t);
double evolved_wigner_diffusion(const CombParams& params, Basis basis, double q, double p,
                                double gamma_t);
double evolved_wigner(const CombParams& params, Basis basis, const NoiseChannel& channel,
                      double q, double p);

WignerField sample_evolved_wigner(const CombParams& params, Basis basis,
                                  const NoiseChannel& channel, const PhaseGrid& grid);

enum class Coherence { coherent, incoherent };

/// Position-representation density matrix <x_i|rho|x_j> on a uniform axis.
struct DensityKernel {
  Axis axis;
  Eigen::MatrixXd matrix;
  ChannelKind channel = ChannelKind::damping;
  double gamma_t = 0.0;
  Basis basis = Basis::zero;
  Coherence coherence = Coherence::coherent;

  /// h * trace(matrix), the quadrature of the position density.
  double trace() const { return axis.step() * matrix.trace(); }
  /// h^2 * sum(matrix^2) = tr rho^2.
  double purity() const;
};

/// Closed-form <x|rho(t)|y> for a single pair of positions.
double kernel_element(const CombParams& params, Basis basis, const NoiseChannel& channel,
                      Coherence coherence, double x, double y);

/// Fills the kernel on `axis`. Throws GridError when the axis does not cover
/// position_support() or exceeds policy.max_kernel_points.
DensityKernel density_kernel(const CombParams& params, Basis basis, const NoiseChannel& channel,
                             const Axis& axis, Coherence coherence = Coherence::coherent,
                             const GridPolicy& policy = {});

DensityKernel density_kernel_damping(const CombParams& params, Basis basis, double gamma_t,
                                     const Axis& axis);
DensityKernel density_kernel_diffusion(const CombParams& params, Basis basis, double gamma_t,
                                       const Axis& axis);
/// Tooth mixture: only the n = m terms, normalized by N.
DensityKernel incoherent_kernel(const CombParams& params, Basis basis,
                                const NoiseChannel& channel, const Axis& axis);

}  // namespace combsim
