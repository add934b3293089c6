#include "combsim/evolution.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "combsim/error.hpp"
#include "combsim/parallel.hpp"
#include "combsim/simd.hpp"

namespace combsim {

using std::numbers::pi;

std::string_view to_string(ChannelKind kind) {
  return kind == ChannelKind::damping ? "damping" : "diffusion";
}

ChannelKind parse_channel(std::string_view name) {
  if (name == "damping") return ChannelKind::damping;
  if (name == "diffusion") return ChannelKind::diffusion;
  throw ParameterError("unknown channel '" + std::string(name) + "' (damping | diffusion)");
}

NoiseChannel::NoiseChannel(ChannelKind kind, double gamma_t) : kind_(kind), gamma_t_(gamma_t) {
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) {
    throw ParameterError("gamma_t must be finite and non-negative, got " + std::to_string(gamma_t));
  }
}

EvolvedWidths evolved_widths(double squeeze, const NoiseChannel& channel) {
  const double gt = channel.gamma_t();
  if (channel.kind() == ChannelKind::damping) {
    const double loss = -std::expm1(-gt);  // 1 - e^{-gt}
    return {loss + std::exp(-2.0 * squeeze - gt), loss + std::exp(2.0 * squeeze - gt)};
  }
  return {std::exp(-2.0 * squeeze) + 2.0 * gt, std::exp(2.0 * squeeze) + 2.0 * gt};
}

CombWignerForm evolved_form(const CombParams& params, Basis basis, const NoiseChannel& channel) {
  const double r = params.squeeze();
  const double s = params.squeeze_factor();
  const double gt = channel.gamma_t();
  const double half_shift = basis_index(basis) * 0.5 * params.spacing();
  const auto w = evolved_widths(r, channel);
  const double norm = normalization(params);
  const double prefactor = 1.0 / (norm * pi * std::sqrt(w.sigma_q2 * w.sigma_p2));

  if (channel.kind() == ChannelKind::damping) {
    const double shrink = std::exp(-0.5 * gt);
    return CombWignerForm{params,
                          prefactor,
                          1.0 / w.sigma_p2,
                          1.0 / (w.sigma_p2 * std::exp(-2.0 * r + 0.5 * gt)),
                          -std::expm1(-gt) * s / (4.0 * w.sigma_p2),
                          shrink,
                          shrink * half_shift,
                          1.0 / w.sigma_q2};
  }
  return CombWignerForm{params,
                        prefactor,
                        1.0 / w.sigma_p2,
                        1.0 / (1.0 + 2.0 * gt / s),
                        gt * s / (2.0 * w.sigma_p2),
                        1.0,
                        half_shift,
                        1.0 / w.sigma_q2};
}

double evolved_wigner_damping(const CombParams& params, Basis basis, double q, double p,
                              double gamma_t) {
  return evaluate(evolved_form(params, basis, NoiseChannel(ChannelKind::damping, gamma_t)), q, p);
}

double evolved_wigner_diffusion(const CombParams& params, Basis basis, double q, double p,
                                double gamma_t) {
  return evaluate(evolved_form(params, basis, NoiseChannel(ChannelKind::diffusion, gamma_t)), q,
                  p);
}

double evolved_wigner(const CombParams& params, Basis basis, const NoiseChannel& channel,
                      double q, double p) {
  return evaluate(evolved_form(params, basis, channel), q, p);
}

WignerField sample_evolved_wigner(const CombParams& params, Basis basis,
                                  const NoiseChannel& channel, const PhaseGrid& grid) {
  WignerField field = sample(evolved_form(params, basis, channel), grid);
  field.basis = basis;
  field.channel = channel.kind();
  field.gamma_t = channel.gamma_t();
  return field;
}

double DensityKernel::purity() const {
  const double h = axis.step();
  return h * h * matrix.squaredNorm();
}

namespace {

// <x|rho|y> = prefactor sum_{n,m} exp(-(x + y - shrink S_nm - 2 shift)^2 / (4 sigma_q2)
//                                     - (A (x-y)^2 + 2 C (x-y) D_nm + E D_nm^2) / 4)
struct KernelForm {
  double prefactor;
  double shrink;
  double shift;
  double sigma_q2;
  double A;
  double C;
  double E;
};

KernelForm kernel_form(const CombParams& params, Basis basis, const NoiseChannel& channel,
                       Coherence coherence) {
  const double s = params.squeeze_factor();
  const auto w = evolved_widths(params.squeeze(), channel);
  const double half_shift = basis_index(basis) * 0.5 * params.spacing();
  const double norm =
      coherence == Coherence::coherent ? normalization(params) : static_cast<double>(params.teeth());
  const double prefactor = 1.0 / (std::sqrt(pi) * norm * std::sqrt(w.sigma_q2));
  if (channel.kind() == ChannelKind::damping) {
    const double shrink = std::exp(-0.5 * channel.gamma_t());
    return {prefactor, shrink, shrink * half_shift, w.sigma_q2, w.sigma_p2, s * shrink, s};
  }
  return {prefactor, 1.0, half_shift, w.sigma_q2, w.sigma_p2, s, s};
}

}  // namespace

double kernel_element(const CombParams& params, Basis basis, const NoiseChannel& channel,
                      Coherence coherence, double x, double y) {
  const KernelForm k = kernel_form(params, basis, channel, coherence);
  const int N = params.teeth();
  const double rel = x - y;
  double total = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m <= N; ++m) {
      if (coherence == Coherence::incoherent && n != m) continue;
      const double S = params.tooth(n) + params.tooth(m);
      const double D = params.pair_separation(n, m);
      const double c = x + y - k.shrink * S - 2.0 * k.shift;
      total += std::exp(-c * c / (4.0 * k.sigma_q2) -
                        (k.A * rel * rel + 2.0 * k.C * rel * D + k.E * D * D) / 4.0);
    }
  }
  return k.prefactor * total;
}

DensityKernel density_kernel(const CombParams& params, Basis basis, const NoiseChannel& channel,
                             const Axis& axis, Coherence coherence, const GridPolicy& policy) {
  validate_axis(axis, "position");
  if (axis.count > policy.max_kernel_points) {
    throw GridError("kernel axis has " + std::to_string(axis.count) + " points, cap is " +
                    std::to_string(policy.max_kernel_points));
  }
  const double support = position_support(params, channel.gamma_t(), policy.sigma_cut);
  const double slack = 1e-9 * support;
  if (axis.min > -support + slack || axis.max < support - slack) {
    throw GridError("kernel axis [" + std::to_string(axis.min) + ", " + std::to_string(axis.max) +
                    "] does not cover the support +-" + std::to_string(support));
  }

  const KernelForm k = kernel_form(params, basis, channel, coherence);
  const int N = params.teeth();
  const std::size_t n = axis.count;
  const auto x = axis.samples();

  DensityKernel out;
  out.axis = axis;
  out.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.channel = channel.kind();
  out.gamma_t = channel.gamma_t();
  out.basis = basis;
  out.coherence = coherence;

  // Column i holds <x_j|rho|x_i> for j >= i. For fixed x_i every pair term is
  // a product of two Gaussians in x_j:
  //   centre coordinate:   a1 = 1/(4 sigma_q2), c1 = shrink S + 2 shift - x_i
  //   relative coordinate: a2 = A/4,            c2 = x_i + C D / A
  // with the leftover factor exp(-(E - C^2/A) D^2 / 4).
  const double a1 = 1.0 / (4.0 * k.sigma_q2);
  const double a2 = k.A / 4.0;
  parallel_for(n, [&](std::size_t i) {
    double* column = out.matrix.data() + i * n;
    std::span<double> tail(column + i, n - i);
    std::span<const double> xs(x.data() + i, n - i);
    for (int a = 1; a <= N; ++a) {
      for (int b = 1; b <= N; ++b) {
        if (coherence == Coherence::incoherent && a != b) continue;
        const double S = params.tooth(a) + params.tooth(b);
        const double D = params.pair_separation(a, b);
        const double scale = k.prefactor * std::exp(-(k.E - k.C * k.C / k.A) * D * D / 4.0);
        if (scale == 0.0) continue;
        const simd::GaussianProduct g{scale, a1, k.shrink * S + 2.0 * k.shift - x[i], a2,
                                      x[i] + k.C * D / k.A};
        simd::accumulate_gaussian_product(g, xs, tail);
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          out.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

DensityKernel density_kernel_damping(const CombParams& params, Basis basis, double gamma_t,
                                     const Axis& axis) {
  return density_kernel(params, basis, NoiseChannel(ChannelKind::damping, gamma_t), axis);
}

DensityKernel density_kernel_diffusion(const CombParams& params, Basis basis, double gamma_t,
                                       const Axis& axis) {
  return density_kernel(params, basis, NoiseChannel(ChannelKind::diffusion, gamma_t), axis);
}

DensityKernel incoherent_kernel(const CombParams& params, Basis basis,
                                const NoiseChannel& channel, const Axis& axis) {
  return density_kernel(params, basis, channel, axis, Coherence::incoherent);
}

}  // namespace combsim
