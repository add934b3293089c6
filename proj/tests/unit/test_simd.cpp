#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "combsim/simd.hpp"

using namespace combsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> random_vector(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

const std::size_t lengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 1000, 4097};

}  // namespace

TEST_CASE("scalar reference kernels", "[simd]") {
  const auto& k = simd::scalar_table();
  std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  CHECK(k.dot(a.data(), b.data(), 3) == 32.0);
  CHECK(k.sum(a.data(), 3) == 6.0);
  k.axpy(2.0, a.data(), b.data(), 3);
  CHECK(b == std::vector<double>{6, 9, 12});
  std::vector<double> e = {0.0, 1.0, -1.0};
  k.exp_inplace(e.data(), 3);
  CHECK(e[0] == 1.0);
  CHECK_THAT(e[1], WithinRel(std::exp(1.0), 1e-15));
}

TEST_CASE("active table honours the override", "[simd]") {
  const char* force = std::getenv("COMBSIM_SIMD");
  if (force && std::string(force) == "scalar") {
    CHECK(&simd::active() == &simd::scalar_table());
  } else if (simd::avx2_table()) {
    CHECK(&simd::active() == simd::avx2_table());
  } else {
    CHECK(&simd::active() == &simd::scalar_table());
  }
}

TEST_CASE("AVX2 kernels agree with the scalar reference", "[simd]") {
  const auto* fast = simd::avx2_table();
  if (!fast) SKIP("AVX2 not available on this machine");
  const auto& ref = simd::scalar_table();

  for (std::size_t n : lengths) {
    const auto a = random_vector(n, -2, 2, 11 + n);
    const auto b = random_vector(n, -2, 2, 97 + n);
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i]);
    CHECK_THAT(fast->dot(a.data(), b.data(), n), WithinAbs(ref.dot(a.data(), b.data(), n), 1e-14 * (1 + scale)));
    double mag = 0;
    for (double x : a) mag += std::abs(x);
    CHECK_THAT(fast->sum(a.data(), n), WithinAbs(ref.sum(a.data(), n), 1e-14 * (1 + mag)));

    auto y1 = b, y2 = b;
    ref.axpy(0.37, a.data(), y1.data(), n);
    fast->axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK_THAT(y2[i], WithinAbs(y1[i], 1e-15));
  }
}

TEST_CASE("AVX2 exp matches std::exp across the double range", "[simd]") {
  const auto* fast = simd::avx2_table();
  if (!fast) SKIP("AVX2 not available on this machine");
  auto x = random_vector(20000, -760, 710, 5);
  for (double v : {0.0, -0.0, 1.0, -1.0, 709.7, 709.78, -708.3, -708.5, -745.2, -800.0, 1e-300, -1e-17}) {
    x.push_back(v);
  }
  auto y = x;
  fast->exp_inplace(y.data(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double want = std::exp(x[i]);
    if (x[i] < -708.39) {
      // denormal range may flush to zero
      CHECK(y[i] <= 1e-307);
      CHECK(y[i] >= 0.0);
    } else {
      CHECK_THAT(y[i], WithinRel(want, 4e-16));
    }
  }
  double edge[4] = {709.9, 1e308, std::nan(""), -1e308};
  fast->exp_inplace(edge, 4);
  CHECK(std::isinf(edge[0]));
  CHECK(std::isinf(edge[1]));
  CHECK(std::isnan(edge[2]));
  CHECK(edge[3] == 0.0);
}

TEST_CASE("AVX2 Gaussian product matches the reference", "[simd]") {
  const auto* fast = simd::avx2_table();
  if (!fast) SKIP("AVX2 not available on this machine");
  const auto& ref = simd::scalar_table();
  const simd::GaussianProduct g{0.8, 0.31, 1.5, 2.7, -0.4};
  for (std::size_t n : lengths) {
    const auto x = random_vector(n, -20, 20, 3 + n);
    auto o1 = random_vector(n, 0, 1, 1 + n);
    auto o2 = o1;
    ref.accumulate_gaussian_product(g, x.data(), o1.data(), n);
    fast->accumulate_gaussian_product(g, x.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK_THAT(o2[i], WithinAbs(o1[i], 1e-15 * (1 + std::abs(o1[i]))));
  }
}

TEST_CASE("span wrappers dispatch through the active table", "[simd]") {
  std::vector<double> a = {1, 2, 3, 4, 5}, b = {1, 1, 1, 1, 1};
  CHECK(simd::dot(a, b) == 15.0);
  CHECK(simd::sum(a) == 15.0);
  simd::axpy(-1.0, b, a);
  CHECK(a == std::vector<double>{0, 1, 2, 3, 4});
}
