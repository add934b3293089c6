#include <cstdlib>
#include <string_view>

#include "combsim/simd.hpp"

namespace combsim::simd {
namespace {

const KernelTable* select_table() {
  const char* env = std::getenv("COMBSIM_SIMD");
  const std::string_view request = env ? env : "";
  if (request == "scalar") return &scalar_table();
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

}  // namespace

const KernelTable& scalar_table() { return detail::scalar_kernels(); }

const KernelTable* avx2_table() {
#if defined(COMBSIM_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_kernels() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* table = select_table();
  return *table;
}

}  // namespace combsim::simd
