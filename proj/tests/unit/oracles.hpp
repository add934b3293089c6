#pragma once

// Independent reference formulas for the tests. They are written out
// directly from the Gaussian building blocks and share no code with the
// library beyond CombParams.

#include <cmath>
#include <numbers>

#include "combsim/comb.hpp"

namespace ref {

inline double tooth(int N, double d, int n) { return -(N + 1) * d / 2 + n * d; }

inline double norm(int N, double d, double r) {
  const double s = std::exp(2 * r);
  double total = 0;
  for (int n = 1; n <= N; ++n)
    for (int m = 1; m <= N; ++m) total += std::exp(-s * std::pow((n - m) * d, 2) / 4);
  return total;
}

/// <q|b>, real.
inline double psi(int N, double d, double r, int basis, double q) {
  const double s = std::exp(2 * r);
  double v = 0;
  for (int n = 1; n <= N; ++n) v += std::exp(-s * std::pow(q - tooth(N, d, n) - basis * d / 2, 2) / 2);
  return std::pow(s / std::numbers::pi, 0.25) * v / std::sqrt(norm(N, d, r));
}

/// Textbook Wigner function of the pure comb from the pair sum.
inline double wigner(int N, double d, double r, int basis, double q, double p) {
  const double s = std::exp(2 * r);
  double v = 0;
  for (int n = 1; n <= N; ++n)
    for (int m = 1; m <= N; ++m) {
      const double a = tooth(N, d, n) + basis * d / 2;
      const double b = tooth(N, d, m) + basis * d / 2;
      v += std::cos(p * (a - b)) * std::exp(-s * std::pow(q - (a + b) / 2, 2));
    }
  return std::exp(-p * p / s) * v / (norm(N, d, r) * std::numbers::pi);
}

/// Pair-Gaussian matrix elements between |0> and |1>, with <0|p|1> = i * p_imag.
struct Elements {
  double overlap = 0, q = 0, p_imag = 0, q2_plus_p2 = 0;
};

inline Elements elements(int N, double d, double r) {
  const double s = std::exp(2 * r);
  const double Nn = norm(N, d, r);
  Elements e;
  for (int n = 1; n <= N; ++n)
    for (int m = 1; m <= N; ++m) {
      const double a = tooth(N, d, n);
      const double b = tooth(N, d, m) + d / 2;
      const double eta = std::exp(-s * (a - b) * (a - b) / 4);
      const double c = (a + b) / 2;
      e.overlap += eta;
      e.q += eta * c;
      e.p_imag += s * eta * (a - b) / 2;
      e.q2_plus_p2 += eta * (c * c + 1 / (2 * s) + s / 2 - s * s * (a - b) * (a - b) / 4);
    }
  e.overlap /= Nn;
  e.q /= Nn;
  e.p_imag /= Nn;
  e.q2_plus_p2 /= Nn;
  return e;
}

}  // namespace ref
