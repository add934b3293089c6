#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "combsim/error.hpp"

namespace combsim::numerics {

struct ToleranceConfig {
  double quad_abs = 1e-10;  ///< absolute tolerance of integrate_1d
  double eig_rel = 1e-12;   ///< eigenvalues below eig_rel * max|lambda| are dropped
  double conv_rel = 1e-8;   ///< acceptance of convergence_double

  void validate() const;
};

/// Reads `key = value` lines (`#` starts a comment). Unknown keys and
/// non-positive values are ParameterErrors; missing keys keep their defaults.
ToleranceConfig load_tolerances(const std::string& path);
ToleranceConfig parse_tolerances(const std::string& text);

/// Global adaptive Gauss-Kronrod (7, 15) quadrature. Splits the worst
/// interval until the summed error estimate drops below tol; throws
/// NumericError when max_intervals is reached first.
double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol,
                    std::size_t max_intervals = 4096);

/// Full spectrum of a real symmetric matrix, sorted descending.
/// Rejects inputs whose asymmetry exceeds 1e-10 (relative to max|A|, floor 1).
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& matrix);

/// Half the sum of |lambda| over eigenvalues with |lambda| >= eig_rel * max|lambda|.
double half_trace_norm(const std::vector<double>& eigenvalues, double eig_rel);

struct ConvergencePolicy {
  double conv_rel = 1e-8;
  int max_doublings = 4;
};

struct Converged {
  double value;
  double error_estimate;  ///< |last - previous|
  int level;              ///< resolution level of `value` (0 = base)
};

/// Raised when the doubling cap is hit; carries the best estimate so far.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, Converged best) : NumericError(what), best_(best) {}
  const Converged& best() const { return best_; }

 private:
  Converged best_;
};

/// Evaluates compute(level) for level = 0, 1, ... (each level doubles the
/// resolution) until successive values differ by at most conv_rel * |value|.
Converged convergence_double(const std::function<double(int level)>& compute,
                             const ConvergencePolicy& policy);

}  // namespace combsim::numerics
