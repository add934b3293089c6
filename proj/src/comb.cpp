#include "combsim/comb.hpp"

#include <cmath>
#include <string>

#include "combsim/error.hpp"

namespace combsim {

CombParams::CombParams(int teeth, double spacing, double squeeze)
    : teeth_(teeth), spacing_(spacing), squeeze_(squeeze), squeeze_factor_(std::exp(2.0 * squeeze)) {
  if (teeth < 1) {
    throw ParameterError("comb needs at least one tooth, got N = " + std::to_string(teeth));
  }
  if (!std::isfinite(spacing) || spacing <= 0.0) {
    throw ParameterError("tooth spacing must be finite and positive, got d = " +
                         std::to_string(spacing));
  }
  if (!std::isfinite(squeeze)) {
    throw ParameterError("squeezing parameter must be finite");
  }
  if (!std::isfinite(squeeze_factor_) || squeeze_factor_ == 0.0) {
    throw ParameterError("squeezing parameter out of range, got r = " + std::to_string(squeeze));
  }
}

std::vector<double> tooth_positions(const CombParams& params) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(params.teeth()));
  for (int n = 1; n <= params.teeth(); ++n) out.push_back(params.tooth(n));
  return out;
}

double normalization(const CombParams& params) {
  const int N = params.teeth();
  const double s = params.squeeze_factor();
  double total = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m <= N; ++m) {
      const double D = params.pair_separation(n, m);
      total += std::exp(-s * D * D / 4.0);
    }
  }
  return total;
}

double normalization_leading(const CombParams& params) {
  const int N = params.teeth();
  const double d = params.spacing();
  return N + 2.0 * (N - 1) * std::exp(-params.squeeze_factor() * d * d / 4.0);
}

double basis_overlap(const CombParams& params) {
  const int N = params.teeth();
  const double s = params.squeeze_factor();
  const double half = 0.5 * params.spacing();
  double total = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m <= N; ++m) {
      const double D = params.pair_separation(n, m) - half;
      total += std::exp(-s * D * D / 4.0);
    }
  }
  return total / normalization(params);
}

double basis_overlap_leading(const CombParams& params) {
  const int N = params.teeth();
  const double d = params.spacing();
  return (2.0 * N - 1.0) / N * std::exp(-params.squeeze_factor() * d * d / 16.0);
}

QuadratureVariances quadrature_variances(const CombParams& params) {
  const int N = params.teeth();
  const double s = params.squeeze_factor();
  double q_sum = 0.0;
  double p_sum = 0.0;
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m <= N; ++m) {
      const double S = params.tooth(n) + params.tooth(m);
      const double D = params.pair_separation(n, m);
      const double weight = std::exp(-s * D * D / 4.0);
      q_sum += (1.0 + 0.5 * s * S * S) * weight;
      p_sum += (1.0 - 0.5 * s * D * D) * weight;
    }
  }
  const double norm = normalization(params);
  return {q_sum / (2.0 * s * norm), s * p_sum / (2.0 * norm)};
}

QuadratureVariances quadrature_variances_leading(const CombParams& params) {
  const double N = params.teeth();
  const double d = params.spacing();
  const double s = params.squeeze_factor();
  return {0.5 / s + (N * N - 1.0) * d * d / 12.0, 0.5 * s};
}

double error_from_overlap(double overlap) {
  const double o2 = overlap * overlap;
  if (o2 > 1.0) throw ParameterError("overlap magnitude exceeds one");
  // (1 - sqrt(1 - o^2)) / 2 without cancellation for small overlaps.
  return o2 / (2.0 * (1.0 + std::sqrt(1.0 - o2)));
}

double initial_error(const CombParams& params) { return error_from_overlap(basis_overlap(params)); }

double initial_error_leading(const CombParams& params) {
  const double N = params.teeth();
  const double d = params.spacing();
  const double ratio = (2.0 * N - 1.0) / (2.0 * N);
  return ratio * ratio * std::exp(-params.squeeze_factor() * d * d / 8.0);
}

CombScalars comb_scalars(const CombParams& params) {
  const auto var = quadrature_variances(params);
  const double overlap = basis_overlap(params);
  return {normalization(params), overlap, var.var_q, var.var_p, error_from_overlap(overlap)};
}

}  // namespace combsim
