#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "combsim/channel.hpp"
#include "combsim/comb.hpp"
#include "combsim/error.hpp"

// Truncated number-basis brute force used to cross-check the closed forms.
// All operators involved (real displacements, squeezing, both Lindblad
// generators) map real matrices to real matrices, so states are stored as
// real vectors / real symmetric density matrices.

namespace combsim::oracle {

struct FockState {
  std::size_t dim = 0;
  /// Pure amplitudes; empty once the state has been evolved.
  Eigen::VectorXd amplitudes;
  /// Density matrix; always populated.
  Eigen::MatrixXd density;
  /// Probability found beyond the truncation when the state was built.
  double tail_mass = 0.0;

  bool is_pure() const { return amplitudes.size() > 0; }
  double trace() const { return density.trace(); }
};

class TruncationError : public NumericError {
 public:
  TruncationError(const std::string& what, std::size_t suggested)
      : NumericError(what), suggested_dim_(suggested) {}
  std::size_t suggested_dim() const { return suggested_dim_; }

 private:
  std::size_t suggested_dim_;
};

/// Heuristic starting dimension max(64, ceil(4 (var_q + var_p + d^2/4))).
std::size_t suggested_dim(const CombParams& params);

/// Truncated annihilation operator, a|n> = sqrt(n)|n-1>.
Eigen::MatrixXd annihilation(std::size_t dim);

/// (1/sqrt(norm)) sum_n D(-q_n/sqrt 2) S(r)|vac>, with basis one displaced by
/// d/2 more. Operators are exponentiated in a padded space and the result is
/// cut to `dim`; throws TruncationError when more than 1e-8 probability lies
/// beyond it.
FockState build_comb(const CombParams& params, Basis basis, std::size_t dim);

/// Smallest dimension (from suggested_dim, growing by 1.25x) accepted by
/// build_comb for both basis states.
std::size_t auto_dim(const CombParams& params, std::size_t max_dim = 1024);

/// Time steps for classic RK4 so that h * |spectral radius| <= 0.5.
std::size_t auto_steps(std::size_t dim, const NoiseChannel& channel);

/// RK4 integration of the chosen Lindblad generator up to channel.gamma_t().
/// steps = 0 selects auto_steps. Throws NumericError when the trace drifts
/// by more than 1e-8.
FockState integrate_master(const FockState& state, const NoiseChannel& channel,
                           std::size_t steps = 0);

/// Wigner function of the state at (q, p) through the position kernel built
/// from Hermite functions and a numerical Fourier integral.
double fock_wigner(const FockState& state, double q, double p);

double mean_photon_number(const FockState& state);

struct OracleMetrics {
  double fidelity;
  double orthogonality;
  double distinguishability;
};

/// F = <0|rho_0(t)|0>, O = tr rho_0 rho_1, D = half trace norm of rho_0 - rho_1.
/// dim = 0 selects auto_dim.
OracleMetrics oracle_metrics(const CombParams& params, const NoiseChannel& channel,
                             std::size_t dim = 0);

/// Same at every time of an ascending list, integrating sequentially.
std::vector<OracleMetrics> oracle_series(const CombParams& params, ChannelKind kind,
                                         const std::vector<double>& times, std::size_t dim = 0);

}  // namespace combsim::oracle
