#include "combsim/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

namespace combsim::numerics {

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParameterError(std::string("tolerance ") + name + " must be finite and positive");
    }
  };
  check(quad_abs, "quad_abs");
  check(eig_rel, "eig_rel");
  check(conv_rel, "conv_rel");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_value(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ParameterError("config: cannot parse value for '" + key + "': '" + text + "'");
  }
  return v;
}

}  // namespace

ToleranceConfig parse_tolerances(const std::string& text) {
  ToleranceConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const double value = parse_value(key, trim(line.substr(eq + 1)));
    if (key == "quad_abs") {
      cfg.quad_abs = value;
    } else if (key == "eig_rel") {
      cfg.eig_rel = value;
    } else if (key == "conv_rel") {
      cfg.conv_rel = value;
    } else {
      throw ParameterError("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ToleranceConfig load_tolerances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tolerances(buf.str());
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const double pair = f(c - dx) + f(c + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= h;
  gauss *= h;
  if (!std::isfinite(kronrod)) throw NumericError("integrand is not finite on the interval");
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol,
                    std::size_t max_intervals) {
  if (!(tol > 0.0)) throw ParameterError("integrate_1d: tolerance must be positive");
  if (a == b) return 0.0;
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ParameterError("integrate_1d: bounds must be finite");
  }
  std::priority_queue<Segment> work;
  work.push(gauss_kronrod(f, a, b));
  double total = work.top().value;
  double error = work.top().error;
  while (error > tol) {
    if (work.size() >= max_intervals) {
      throw NumericError("integrate_1d: no convergence after " + std::to_string(max_intervals) +
                         " intervals (error estimate " + std::to_string(error) + ")");
    }
    const Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
    // re-sum periodically so the running totals do not drift
    if (work.size() % 64 == 0) {
      auto copy = work;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) throw ParameterError("eigenvalues: matrix is not square");
  if (matrix.size() == 0) return {};
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-10 * scale)) {
    throw NumericError("eigenvalues: matrix asymmetry " + std::to_string(asym) +
                       " exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalues: symmetric eigensolver did not converge");
  }
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double half_trace_norm(const std::vector<double>& eigenvalues, double eig_rel) {
  double largest = 0.0;
  for (double v : eigenvalues) largest = std::max(largest, std::abs(v));
  const double cut = eig_rel * largest;
  double total = 0.0;
  for (double v : eigenvalues) {
    if (std::abs(v) >= cut) total += std::abs(v);
  }
  return 0.5 * total;
}

Converged convergence_double(const std::function<double(int level)>& compute,
                             const ConvergencePolicy& policy) {
  if (!(policy.conv_rel > 0.0) || policy.max_doublings < 1) {
    throw ParameterError("convergence policy needs conv_rel > 0 and at least one doubling");
  }
  double previous = compute(0);
  Converged last{previous, std::numeric_limits<double>::infinity(), 0};
  for (int level = 1; level <= policy.max_doublings; ++level) {
    const double value = compute(level);
    const double change = std::abs(value - previous);
    last = {value, change, level};
    if (change <= policy.conv_rel * std::abs(value)) return last;
    previous = value;
  }
  throw ConvergenceError("convergence doubling cap reached (last change " +
                             std::to_string(last.error_estimate) + ")",
                         last);
}

}  // namespace combsim::numerics
