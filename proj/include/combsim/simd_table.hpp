#pragma once

#include <cstddef>

namespace combsim::simd {

/// out[j] += scale * exp(-a1 (x_j - c1)^2 - a2 (x_j - c2)^2)
struct GaussianProduct {
  double scale;
  double a1;
  double c1;
  double a2;
  double c2;
};

struct KernelTable {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*accumulate_gaussian_product)(const GaussianProduct& g, const double* x, double* out,
                                      std::size_t n);
  void (*exp_inplace)(double* x, std::size_t n);
};

namespace detail {
const KernelTable& scalar_kernels();
const KernelTable& avx2_kernels();
}  // namespace detail

}  // namespace combsim::simd
