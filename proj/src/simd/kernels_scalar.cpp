#include <cmath>

#include "combsim/simd_table.hpp"

namespace combsim::simd::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void accumulate_gaussian_product(const GaussianProduct& g, const double* x, double* out,
                                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d1 = x[i] - g.c1;
    const double d2 = x[i] - g.c2;
    out[i] += g.scale * std::exp(-(g.a1 * d1 * d1 + g.a2 * d2 * d2));
  }
}

void exp_inplace(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(x[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", dot, sum, axpy, accumulate_gaussian_product,
                                 exp_inplace};
  return table;
}

}  // namespace combsim::simd::detail
