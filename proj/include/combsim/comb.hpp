#pragma once

#include <vector>

namespace combsim {

enum class Basis { zero, one };

inline int basis_index(Basis b) { return b == Basis::one ? 1 : 0; }

/// Encoding triple of a finite squeezed comb: N teeth, spacing d, squeezing r.
/// Construction validates the triple; negative r (anti-squeezing) is allowed.
class CombParams {
 public:
  CombParams(int teeth, double spacing, double squeeze);

  int teeth() const { return teeth_; }
  double spacing() const { return spacing_; }
  double squeeze() const { return squeeze_; }

  /// e^{2r}, the inverse squared position width of a single tooth.
  double squeeze_factor() const { return squeeze_factor_; }

  /// Position of tooth n (1-based), centred so that the teeth sum to zero.
  double tooth(int n) const { return (2 * n - teeth_ - 1) * (0.5 * spacing_); }

  /// Mean of teeth n and m: (q_n + q_m) / 2.
  double pair_center(int n, int m) const { return (n + m - teeth_ - 1) * (0.5 * spacing_); }

  /// Separation of teeth n and m: q_n - q_m.
  double pair_separation(int n, int m) const { return (n - m) * spacing_; }

  bool operator==(const CombParams&) const = default;

 private:
  int teeth_;
  double spacing_;
  double squeeze_;
  double squeeze_factor_;
};

std::vector<double> tooth_positions(const CombParams& params);

double normalization(const CombParams& params);
/// N + 2(N-1) exp(-e^{2r} d^2 / 4), nearest-neighbour overlaps only.
double normalization_leading(const CombParams& params);

/// <0|1> from the exact double sum.
double basis_overlap(const CombParams& params);
/// (2N-1)/N exp(-e^{2r} d^2 / 16).
double basis_overlap_leading(const CombParams& params);

struct QuadratureVariances {
  double var_q;
  double var_p;
};

/// Position and momentum variances, identical for both basis states.
QuadratureVariances quadrature_variances(const CombParams& params);
QuadratureVariances quadrature_variances_leading(const CombParams& params);

/// Minimum discrimination error of two pure states with the given overlap.
double error_from_overlap(double overlap);

double initial_error(const CombParams& params);
/// ((2N-1)/2N)^2 exp(-e^{2r} d^2 / 8).
double initial_error_leading(const CombParams& params);

struct CombScalars {
  double normalization;
  double overlap01;
  double var_q;
  double var_p;
  double eps0;
};

CombScalars comb_scalars(const CombParams& params);

}  // namespace combsim
