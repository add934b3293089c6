#include "combsim/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "combsim/numerics.hpp"

namespace combsim::oracle {

namespace {

constexpr double tail_limit = 1e-8;
constexpr double trace_drift_limit = 1e-8;

std::size_t padding_for(std::size_t dim) { return std::max<std::size_t>(96, dim / 2); }

}  // namespace

std::size_t suggested_dim(const CombParams& params) {
  const auto v = quadrature_variances(params);
  const double d = params.spacing();
  const double want = std::ceil(4.0 * (v.var_q + v.var_p + 0.25 * d * d));
  return std::max<std::size_t>(64, static_cast<std::size_t>(want));
}

Eigen::MatrixXd annihilation(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

FockState build_comb(const CombParams& params, Basis basis, std::size_t dim) {
  if (dim < 2) throw ParameterError("Fock dimension must be at least 2");
  const std::size_t padded = dim + padding_for(dim);
  const Eigen::MatrixXd a = annihilation(padded);
  const Eigen::MatrixXd ad = a.transpose();
  const auto P = static_cast<Eigen::Index>(padded);

  // S(r)|vac> with S(r) = exp(r (a^2 - a^dag^2) / 2): position width e^{-r}
  Eigen::VectorXd vac = Eigen::VectorXd::Zero(P);
  vac(0) = 1.0;
  const Eigen::MatrixXd squeeze_gen = 0.5 * params.squeeze() * (a * a - ad * ad);
  const Eigen::VectorXd squeezed = squeeze_gen.exp() * vac;

  // Every tooth sits at an integer multiple k of d/2. A shift of the
  // position wavefunction by +x is exp(x (a^dag - a) / sqrt 2), the
  // paper's D(-x / sqrt 2); k steps are powers of the half-spacing shift,
  // whose transpose is its inverse.
  const double half = 0.5 * params.spacing();
  const Eigen::MatrixXd step = ((half / std::numbers::sqrt2) * (ad - a)).exp();
  const int N = params.teeth();
  const int offset = basis_index(basis);
  std::map<int, bool> wanted;
  for (int n = 1; n <= N; ++n) wanted[2 * n - N - 1 + offset] = true;

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(P);
  if (wanted.count(0)) sum += squeezed;
  Eigen::VectorXd up = squeezed;
  Eigen::VectorXd down = squeezed;
  const int reach = N + 1;
  for (int k = 1; k <= reach; ++k) {
    up = step * up;
    down = step.transpose() * down;
    if (wanted.count(k)) sum += up;
    if (wanted.count(-k)) sum += down;
  }

  const auto n = static_cast<Eigen::Index>(dim);
  const double total = sum.squaredNorm();
  const double kept = sum.head(n).squaredNorm();
  const double tail = (total - kept) / total;
  if (tail > tail_limit) {
    const auto suggested = static_cast<std::size_t>(std::ceil(1.25 * static_cast<double>(dim)));
    throw TruncationError("Fock dimension " + std::to_string(dim) + " leaves probability " +
                              std::to_string(tail) + " beyond the truncation; try " +
                              std::to_string(suggested),
                          suggested);
  }
  FockState state;
  state.dim = dim;
  state.amplitudes = sum.head(n) / std::sqrt(kept);
  state.density = state.amplitudes * state.amplitudes.transpose();
  state.tail_mass = tail;
  return state;
}

std::size_t auto_dim(const CombParams& params, std::size_t max_dim) {
  std::size_t dim = suggested_dim(params);
  while (dim <= max_dim) {
    try {
      build_comb(params, Basis::zero, dim);
      build_comb(params, Basis::one, dim);
      return dim;
    } catch (const TruncationError& e) {
      dim = e.suggested_dim();
    }
  }
  throw TruncationError("no Fock dimension up to " + std::to_string(max_dim) +
                            " holds the comb within the tail limit",
                        dim);
}

namespace {

// Elementwise Lindblad generators in the truncated number basis. The top
// level has no partner above it, so (a a^dag) there is 0 and both
// generators preserve the trace exactly.
void apply_generator(const Eigen::MatrixXd& rho, ChannelKind kind, Eigen::MatrixXd& out) {
  const Eigen::Index D = rho.rows();
  for (Eigen::Index j = 0; j < D; ++j) {
    const double nj = static_cast<double>(j);
    const double mj = j + 1 < D ? nj + 1.0 : 0.0;  // (a a^dag)_jj
    for (Eigen::Index i = 0; i < D; ++i) {
      const double ni = static_cast<double>(i);
      const double mi = i + 1 < D ? ni + 1.0 : 0.0;
      // a rho a^dag
      double v = (i + 1 < D && j + 1 < D) ? std::sqrt((ni + 1.0) * (nj + 1.0)) * rho(i + 1, j + 1)
                                          : 0.0;
      if (kind == ChannelKind::damping) {
        v -= 0.5 * (ni + nj) * rho(i, j);
      } else {
        // a^dag rho a
        if (i > 0 && j > 0) v += std::sqrt(ni * nj) * rho(i - 1, j - 1);
        v -= 0.5 * (ni + mi + nj + mj) * rho(i, j);
      }
      out(i, j) = v;
    }
  }
}

}  // namespace

std::size_t auto_steps(std::size_t dim, const NoiseChannel& channel) {
  const double D = static_cast<double>(dim);
  const double radius = channel.kind() == ChannelKind::damping ? D : 2.0 * D + 1.0;
  const double steps = std::ceil(channel.gamma_t() * radius / 0.5);
  return std::max<std::size_t>(1, static_cast<std::size_t>(steps));
}

FockState integrate_master(const FockState& state, const NoiseChannel& channel,
                           std::size_t steps) {
  FockState out;
  out.dim = state.dim;
  out.tail_mass = state.tail_mass;
  out.density = state.density;
  if (channel.gamma_t() == 0.0) {
    out.amplitudes = state.amplitudes;
    return out;
  }
  if (steps == 0) steps = auto_steps(state.dim, channel);
  const double h = channel.gamma_t() / static_cast<double>(steps);
  const double start_trace = state.density.trace();
  const Eigen::Index D = state.density.rows();
  Eigen::MatrixXd k1(D, D), k2(D, D), k3(D, D), k4(D, D), tmp(D, D);
  Eigen::MatrixXd& rho = out.density;
  for (std::size_t s = 0; s < steps; ++s) {
    apply_generator(rho, channel.kind(), k1);
    tmp = rho + 0.5 * h * k1;
    apply_generator(tmp, channel.kind(), k2);
    tmp = rho + 0.5 * h * k2;
    apply_generator(tmp, channel.kind(), k3);
    tmp = rho + h * k3;
    apply_generator(tmp, channel.kind(), k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    tmp = 0.5 * (rho + rho.transpose());
    rho = tmp;
  }
  const double drift = std::abs(rho.trace() - start_trace);
  if (!(drift <= trace_drift_limit)) {
    throw NumericError("master-equation trace drifted by " + std::to_string(drift) +
                       "; reduce the step size");
  }
  return out;
}

namespace {

// Normalized Hermite functions phi_0..phi_{D-1} at x.
void hermite_functions(double x, Eigen::VectorXd& out) {
  const Eigen::Index D = out.size();
  out(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (D > 1) out(1) = std::numbers::sqrt2 * x * out(0);
  for (Eigen::Index n = 1; n + 1 < D; ++n) {
    const double k = static_cast<double>(n);
    out(n + 1) = std::sqrt(2.0 / (k + 1.0)) * x * out(n) - std::sqrt(k / (k + 1.0)) * out(n - 1);
  }
}

}  // namespace

double fock_wigner(const FockState& state, double q, double p) {
  const Eigen::Index D = state.density.rows();
  // Hermite functions up to D - 1 vanish beyond the classical turning point
  const double turn = std::sqrt(2.0 * static_cast<double>(D) + 1.0) + 10.0;
  const double reach = 2.0 * (turn + std::abs(q));
  Eigen::VectorXd u(D), v(D);
  auto integrand = [&](double x) {
    hermite_functions(q - 0.5 * x, u);
    hermite_functions(q + 0.5 * x, v);
    return std::cos(p * x) * u.dot(state.density * v);
  };
  const int segments = std::max(8, static_cast<int>(std::ceil(reach)));
  const double width = 2.0 * reach / segments;
  double total = 0.0;
  for (int k = 0; k < segments; ++k) {
    const double a = -reach + k * width;
    total += numerics::integrate_1d(integrand, a, a + width, 1e-12);
  }
  return total / (2.0 * std::numbers::pi);
}

double mean_photon_number(const FockState& state) {
  double n = 0.0;
  for (Eigen::Index i = 0; i < state.density.rows(); ++i) n += i * state.density(i, i);
  return n;
}

namespace {

OracleMetrics measure(const FockState& zero0, const FockState& zero_t, const FockState& one_t) {
  OracleMetrics m{};
  m.fidelity = zero0.amplitudes.dot(zero_t.density * zero0.amplitudes);
  m.orthogonality = zero_t.density.cwiseProduct(one_t.density).sum();
  const Eigen::MatrixXd diff = zero_t.density - one_t.density;
  m.distinguishability =
      numerics::half_trace_norm(numerics::symmetric_eigenvalues(diff), numerics::ToleranceConfig{}.eig_rel);
  return m;
}

}  // namespace

OracleMetrics oracle_metrics(const CombParams& params, const NoiseChannel& channel,
                             std::size_t dim) {
  if (dim == 0) dim = auto_dim(params);
  const FockState zero = build_comb(params, Basis::zero, dim);
  const FockState one = build_comb(params, Basis::one, dim);
  return measure(zero, integrate_master(zero, channel), integrate_master(one, channel));
}

std::vector<OracleMetrics> oracle_series(const CombParams& params, ChannelKind kind,
                                         const std::vector<double>& times, std::size_t dim) {
  if (dim == 0) dim = auto_dim(params);
  const FockState zero = build_comb(params, Basis::zero, dim);
  FockState zero_t = zero;
  FockState one_t = build_comb(params, Basis::one, dim);
  std::vector<OracleMetrics> out;
  out.reserve(times.size());
  double now = 0.0;
  for (double t : times) {
    if (t < now) throw ParameterError("oracle series times must ascend");
    if (t > now) {
      const NoiseChannel segment(kind, t - now);
      zero_t = integrate_master(zero_t, segment);
      one_t = integrate_master(one_t, segment);
      now = t;
    }
    out.push_back(measure(zero, zero_t, one_t));
  }
  return out;
}

}  // namespace combsim::oracle
