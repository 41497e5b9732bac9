#pragma once

#include <vector>

#include <Eigen/Core>

#include <hankelmc/hankel.hpp>

namespace hankelmc {

struct SolverConfig {
  double rho = 1.0;          // ADMM penalty
  double eps_abs = 1e-10;    // absolute stopping tolerance
  double eps_rel = 1e-10;    // relative stopping tolerance
  int max_iter = 100000;
  double recovery_tol = 1e-5;  // relative Frobenius threshold for recovery

  /// Throws std::invalid_argument unless all fields are positive and
  /// finite with max_iter >= 1.
  void validate() const;
};

struct SolverResult {
  HankelSpec completed;     // pinned part is the input, bit-exact
  double nuclear_norm_hat;  // nuclear norm of the completed matrix
  int iterations;
  double primal_residual;
  double dual_residual;
  bool converged;
};

/// Minimizes the nuclear norm over n x n Hankel matrices whose first n
/// anti-diagonals equal `pinned`, via ADMM with singular value
/// thresholding:
///   Z <- svt(A(x) + U, 1/rho)
///   x <- free anti-diagonal means of (Z - U), pinned part held fixed
///   U <- U + A(x) - Z
/// where A(x) materializes the Hankel matrix. Stops when both the primal
/// residual ||A(x) - Z||_F and the dual residual rho ||A(x+) - A(x)||_F
/// fall below eps_abs * n + eps_rel * max(||A(x)||_F, ||Z||_F).
SolverResult complete(const Eigen::Ref<const Eigen::VectorXd>& pinned,
                      const SolverConfig& cfg = {});

/// Scan range for the brute-force routines. A step of 0 selects the
/// per-size default: 1e-4 for n = 2, 1e-2 for n = 3.
struct OracleGrid {
  double lo = -2.0;
  double hi = 2.0;
  double step = 0.0;
};

/// Brute-force minimizer of the nuclear norm over the free anti-diagonals,
/// for n in {2, 3} only. Scans the grid exhaustively, then refines once
/// around the argmin at 1/100 of the step. Independent check for
/// complete(); throws std::invalid_argument for unsupported sizes.
HankelSpec oracle_complete(const Eigen::Ref<const Eigen::VectorXd>& pinned,
                           const OracleGrid& grid = {});

struct RankCell {
  Eigen::VectorXd free_values;
  int rank;
};

struct RankLandscape {
  std::vector<RankCell> cells;              // grid scan, row-major
  int min_rank;                             // smallest rank seen
  std::vector<Eigen::VectorXd> rank_minimal;  // free values attaining it
};

/// Numerical rank (singular values > 1e-8 * sigma_max) of the completed
/// matrix at every grid point, for n in {2, 3}. No refinement pass.
RankLandscape rank_landscape(const Eigen::Ref<const Eigen::VectorXd>& pinned,
                             const OracleGrid& grid = {});

}  // namespace hankelmc
