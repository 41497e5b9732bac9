#pragma once

#include <Eigen/Core>

#include <hankelmc/hankel.hpp>

namespace hankelmc {

/// Scalars and projectors attached to a single stable pole h and size n:
/// the moment vector hvec = [1, h, ..., h^{n-1}], its squared norm
/// r2 = 1 + h^2 + ... + h^{2n-2}, the odd-power sum
/// s = h + h^3 + ... + h^{2n-3}, the rank-one projector P = hvec hvec^T / r2
/// onto span(hvec) and its complement Q = I - P.
class CertificateContext {
 public:
  /// Throws std::domain_error unless |h| < 1 ("stable pole required") and
  /// std::invalid_argument unless 2 <= n <= kMaxDim.
  CertificateContext(double h, int n);

  double h() const noexcept { return h_; }
  int n() const noexcept { return n_; }
  const Eigen::VectorXd& hvec() const noexcept { return hvec_; }
  double r2() const noexcept { return r2_; }
  double s() const noexcept { return s_; }
  const Eigen::MatrixXd& P() const noexcept { return p_; }
  const Eigen::MatrixXd& Q() const noexcept { return q_; }

  /// h^e for 0 <= e <= 2n-2, formed by repeated multiplication (the same
  /// products that build hvec).
  double pole_power(int e) const { return pow_(e); }

 private:
  double h_;
  int n_;
  Eigen::VectorXd hvec_;
  Eigen::VectorXd pow_;  // h^0 .. h^{2n-2}
  double r2_;
  double s_;
  Eigen::MatrixXd p_;
  Eigen::MatrixXd q_;
};

/// The Hankel matrix Delta = r2 * (Q1 - Q2), built from its closed-form
/// entry rule over three index regimes (1-based i, j):
///   i+j <= n    ->  -h^(n+i+j-2)
///   i+j == n+1  ->  s
///   i+j >= n+2  ->  -h^(i+j-n-2)
/// Delta is symmetric, per-anti-diagonal constant, and annihilates hvec.
Eigen::MatrixXd build_delta(const CertificateContext& ctx);

struct ProjectorPair {
  Eigen::MatrixXd q1;
  Eigen::MatrixXd q2;
};

/// Recovers Q1 and Q2 from their defining sum and difference:
/// Q1 + Q2 = Q and r2 * (Q1 - Q2) = Delta, i.e.
/// Q1 = (Q + Delta/r2)/2 and Q2 = (Q - Delta/r2)/2.
ProjectorPair split_projectors(const CertificateContext& ctx,
                               const Eigen::Ref<const Eigen::MatrixXd>& delta);

/// The base certificate matrix M0 = -h^n * (Q1 - Q2) = -h^n * Delta / r2.
/// Its spectral norm is |h|^n and its free anti-diagonals (k >= n) carry
/// bitwise the same values as P, so trace(G_i (M0 - P)) vanishes exactly.
Eigen::MatrixXd build_m0(const CertificateContext& ctx,
                         const Eigen::Ref<const Eigen::MatrixXd>& delta);

/// Frobenius residuals of the four projector identities, each normalized
/// by max(1, ||Q||_F^2):
///   fact1: (Q1+Q2)^2 == (Q1-Q2)^2
///   fact2: (Q1+Q2)(Q1-Q2) == (Q1-Q2)(Q1+Q2)
///   fact3: Q1 Q2 == Q2 Q1 == 0
///   fact4: Q1^2 == Q1 and Q2^2 == Q2
/// Residuals are reported, not thresholded; asserting them is the
/// caller's policy.
struct FactResiduals {
  double fact1;
  double fact2;
  double fact3;
  double fact4;
  double max() const noexcept;
};

FactResiduals verify_facts(const CertificateContext& ctx,
                           const ProjectorPair& pair);

/// Per-basis-direction trace conditions. residuals[i-1] is
/// |trace(Q G_i Q M0 - G_i P)| and reduction_gap[i-1] is the absolute
/// difference between that trace and its reduced form
/// trace(G_i (M0 - P)), for i = 1..n-1.
struct TraceConditionReport {
  Eigen::VectorXd residuals;
  Eigen::VectorXd reduction_gap;
  double max_residual() const;
  double max_gap() const;
};

TraceConditionReport verify_trace_conditions(
    const CertificateContext& ctx, const Eigen::Ref<const Eigen::MatrixXd>& m0);

/// The recovery condition |trace(P H)| < ||Q H Q||_* evaluated for a
/// deviation H. For a zero deviation both sides are zero and holds is
/// false (the condition is vacuous).
struct RecoveryCondition {
  double lhs;  // |trace(P H)|
  double rhs;  // ||Q H Q||_*
  bool holds;  // lhs < rhs
};

RecoveryCondition lemma1_condition(const CertificateContext& ctx,
                                   const DeviationVector& dev);

/// The perturbed certificate M1 = M0 + delta * (Q H Q) with delta set to
/// half the spectral slack of M0: delta = (1 - ||M0||_2) / (2 ||QHQ||_2).
/// trace_lhs is trace(QHQ M1 - H P) evaluated directly; trace_rhs is the
/// predicted value delta * ||QHQ||_F^2.
struct PerturbedCertificate {
  Eigen::MatrixXd m1;
  double delta;
  double m1_spectral_norm;
  double trace_lhs;
  double trace_rhs;
};

/// Throws std::invalid_argument for a zero deviation (Q H Q != 0 is only
/// guaranteed for H != 0).
PerturbedCertificate build_m1(const CertificateContext& ctx,
                              const Eigen::Ref<const Eigen::MatrixXd>& m0,
                              const DeviationVector& dev);

/// Full certificate bundle with all verification residuals.
struct CertificateSet {
  Eigen::MatrixXd delta;
  Eigen::MatrixXd q1;
  Eigen::MatrixXd q2;
  Eigen::MatrixXd m0;
  FactResiduals facts;
  TraceConditionReport traces;
  double m0_norm_gap;  // | ||M0||_2 - |h|^n |
};

CertificateSet build_certificate(const CertificateContext& ctx);

/// Residual acceptance threshold: 1e-12 in the well-conditioned regime
/// (n <= 10 and |h| < 0.9), relaxed to 1e-10 otherwise.
double residual_threshold(int n, double h);

}  // namespace hankelmc
