#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "combsim/numerics.hpp"
#include "combsim/phase_space.hpp"

using namespace combsim;
using namespace combsim::numerics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("integrate_1d basics", "[numerics]") {
  CHECK_THAT(integrate_1d([](double) { return 1.0; }, 0, 1, 1e-12), WithinAbs(1.0, 1e-14));
  CHECK_THAT(integrate_1d([](double x) { return std::exp(-x * x); }, -12, 12, 1e-12),
             WithinAbs(std::sqrt(std::numbers::pi), 1e-12));
  // cubics are integrated exactly
  auto cubic = [](double x) { return 2 * x * x * x - x * x + 3 * x - 5; };
  const double direct = [] {
    auto F = [](double x) { return 0.5 * std::pow(x, 4) - std::pow(x, 3) / 3 + 1.5 * x * x - 5 * x; };
    return F(3) - F(-1);
  }();
  CHECK_THAT(integrate_1d(cubic, -1, 3, 1e-12), WithinAbs(direct, 1e-12));
}

TEST_CASE("integrate_1d reports non-convergence", "[numerics]") {
  auto wild = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
  CHECK_THROWS_AS(integrate_1d(wild, 0, 1, 1e-14, 8), NumericError);
}

TEST_CASE("comb position marginal integrates to one", "[numerics]") {
  const CombParams p(8, 4.0, 0.4);
  double total = 0;
  for (int k = -12; k < 12; ++k) {
    total += integrate_1d([&](double q) { return position_marginal(p, Basis::zero, q); }, 2.0 * k,
                          2.0 * k + 2.0, 1e-12);
  }
  CHECK_THAT(total, WithinAbs(1.0, 1e-8));
}

TEST_CASE("symmetric_eigenvalues small cases", "[numerics]") {
  auto e = symmetric_eigenvalues(Eigen::MatrixXd::Identity(3, 3));
  REQUIRE(e.size() == 3);
  for (double v : e) CHECK_THAT(v, WithinAbs(1.0, 1e-15));

  Eigen::MatrixXd d(2, 2);
  d << 2, 0, 0, -1;
  e = symmetric_eigenvalues(d);
  CHECK_THAT(e[0], WithinAbs(2.0, 1e-15));
  CHECK_THAT(e[1], WithinAbs(-1.0, 1e-15));

  Eigen::VectorXd psi = Eigen::VectorXd::LinSpaced(6, 1, 6).normalized();
  e = symmetric_eigenvalues(psi * psi.transpose());
  CHECK_THAT(e[0], WithinAbs(1.0, 1e-14));
  for (std::size_t i = 1; i < e.size(); ++i) CHECK_THAT(e[i], WithinAbs(0.0, 1e-14));

  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 3, 4;
  CHECK_THROWS_AS(symmetric_eigenvalues(bad), Error);
}

TEST_CASE("eigenvalue sums equal traces and negate with the matrix", "[numerics]") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial * 3;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    a = (a + a.transpose()).eval();
    const auto e = symmetric_eigenvalues(a);
    const auto f = symmetric_eigenvalues(-a);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      sum += e[i];
      CHECK_THAT(f[i], WithinAbs(-e[n - 1 - i], 1e-10));
      if (i) CHECK(e[i] <= e[i - 1]);
    }
    CHECK_THAT(sum, WithinAbs(a.trace(), 1e-9 * n));
  }
}

TEST_CASE("half_trace_norm drops relative noise", "[numerics]") {
  CHECK_THAT(half_trace_norm({0.5, -0.5}, 1e-12), WithinAbs(0.5, 1e-16));
  CHECK_THAT(half_trace_norm({1.0, 1e-14, -1e-14}, 1e-12), WithinAbs(0.5, 1e-16));
  CHECK_THAT(half_trace_norm({1.0, 1e-10}, 1e-12), WithinAbs(0.5 + 0.5e-10, 1e-18));
}

TEST_CASE("convergence_double", "[numerics]") {
  ConvergencePolicy policy;
  auto c = convergence_double([](int) { return 3.0; }, policy);
  CHECK(c.value == 3.0);
  CHECK(c.level == 1);
  CHECK(c.error_estimate == 0.0);

  auto slow = [](int level) { return 1.0 + std::pow(0.5, level); };
  try {
    convergence_double(slow, policy);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best().level == policy.max_doublings);
    CHECK_THAT(e.best().value, WithinAbs(1.0 + std::pow(0.5, policy.max_doublings), 1e-15));
  }

  auto fast = [](int level) { return 2.0 + std::pow(1e-3, level + 1); };
  c = convergence_double(fast, policy);
  CHECK(c.error_estimate <= 1e-8 * c.value);
  CHECK(c.level <= 3);
}

TEST_CASE("tolerance configuration", "[numerics]") {
  ToleranceConfig defaults;
  CHECK(defaults.quad_abs == 1e-10);
  CHECK(defaults.eig_rel == 1e-12);
  CHECK(defaults.conv_rel == 1e-8);

  const auto t = parse_tolerances("# comment\nquad_abs = 1e-9\n\n  conv_rel=2e-7  # trailing\n");
  CHECK(t.quad_abs == 1e-9);
  CHECK(t.conv_rel == 2e-7);
  CHECK(t.eig_rel == 1e-12);

  CHECK_THROWS_AS(parse_tolerances("nope = 1\n"), ParameterError);
  CHECK_THROWS_AS(parse_tolerances("quad_abs = -1\n"), ParameterError);
  CHECK_THROWS_AS(parse_tolerances("quad_abs = abc\n"), ParameterError);
  CHECK_THROWS_AS(parse_tolerances("quad_abs\n"), ParameterError);
  CHECK_THROWS_AS(load_tolerances("/nonexistent/tolerances.cfg"), Error);
}
