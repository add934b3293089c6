#pragma once

#include <cstddef>
#include <span>

#include "combsim/simd_table.hpp"

// Data-parallel inner loops. Every kernel has a scalar reference and, where
// the build target allows, an AVX2+FMA variant; the active table is chosen
// once at runtime from CPUID and the COMBSIM_SIMD environment variable
// ("scalar" forces the reference path).

namespace combsim::simd {

const KernelTable& scalar_table();
/// nullptr when AVX2 was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), y.size());
}
inline void accumulate_gaussian_product(const GaussianProduct& g, std::span<const double> x,
                                        std::span<double> out) {
  active().accumulate_gaussian_product(g, x.data(), out.data(), out.size());
}
inline void exp_inplace(std::span<double> x) { active().exp_inplace(x.data(), x.size()); }

}  // namespace combsim::simd
