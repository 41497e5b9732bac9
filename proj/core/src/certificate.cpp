#include <hankelmc/certificate.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include <hankelmc/norms.hpp>

namespace hankelmc {

namespace {

// trace(A * B) without forming the product.
double trace_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

// Sum of the entries of X on anti-diagonal k. Equals trace(G_i * X) for
// k = n-1+i, for any square X.
double antidiag_sum(const Eigen::MatrixXd& x, int k) {
  const int n = static_cast<int>(x.rows());
  const int lo = std::max(0, k - (n - 1));
  const int hi = std::min(k, n - 1);
  double sum = 0.0;
  for (int i = lo; i <= hi; ++i) sum += x(i, k - i);
  return sum;
}

}  // namespace

CertificateContext::CertificateContext(double h, int n) : h_(h), n_(n) {
  if (!(std::abs(h) < 1.0) || !std::isfinite(h))
    throw std::domain_error("stable pole required: |h| < 1, got h = " +
                            std::to_string(h));
  if (n < 2 || n > kMaxDim)
    throw std::invalid_argument("certificate dimension must be in [2, " +
                                std::to_string(kMaxDim) + "], got " +
                                std::to_string(n));
  pow_.resize(2 * n - 1);
  pow_(0) = 1.0;
  for (int e = 1; e <= 2 * n - 2; ++e) pow_(e) = pow_(e - 1) * h;
  hvec_ = pow_.head(n);
  r2_ = hvec_.squaredNorm();
  s_ = 0.0;
  for (int e = 1; e <= 2 * n - 3; e += 2) s_ += pow_(e);
  p_ = hvec_ * hvec_.transpose() / r2_;
  q_ = Eigen::MatrixXd::Identity(n, n) - p_;
}

Eigen::MatrixXd build_delta(const CertificateContext& ctx) {
  const int n = ctx.n();
  Eigen::MatrixXd delta(n, n);
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      const int ij = i + j;
      if (ij <= n)
        delta(i - 1, j - 1) = -ctx.pole_power(n + ij - 2);
      else if (ij == n + 1)
        delta(i - 1, j - 1) = ctx.s();
      else
        delta(i - 1, j - 1) = -ctx.pole_power(ij - n - 2);
    }
  }
  return delta;
}

ProjectorPair split_projectors(const CertificateContext& ctx,
                               const Eigen::Ref<const Eigen::MatrixXd>& delta) {
  const Eigen::MatrixXd scaled = delta / ctx.r2();
  return {0.5 * (ctx.Q() + scaled), 0.5 * (ctx.Q() - scaled)};
}

Eigen::MatrixXd build_m0(const CertificateContext& ctx,
                         const Eigen::Ref<const Eigen::MatrixXd>& delta) {
  const int n = ctx.n();
  const double hn = ctx.pole_power(n);
  Eigen::MatrixXd m0(n, n);
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      // -h^n * delta(i,j) / r2 equals P(i,j) on the free anti-diagonals;
      // copying the P entries keeps that agreement bitwise.
      if (i + j >= n + 2)
        m0(i - 1, j - 1) = ctx.P()(i - 1, j - 1);
      else
        m0(i - 1, j - 1) = -hn * delta(i - 1, j - 1) / ctx.r2();
    }
  }
  return m0;
}

double FactResiduals::max() const noexcept {
  return std::max(std::max(fact1, fact2), std::max(fact3, fact4));
}

FactResiduals verify_facts(const CertificateContext& ctx,
                           const ProjectorPair& pair) {
  const Eigen::MatrixXd sum = pair.q1 + pair.q2;
  const Eigen::MatrixXd dif = pair.q1 - pair.q2;
  const double scale = std::max(1.0, ctx.Q().squaredNorm());
  FactResiduals r;
  r.fact1 = (sum * sum - dif * dif).norm() / scale;
  r.fact2 = (sum * dif - dif * sum).norm() / scale;
  r.fact3 = std::max((pair.q1 * pair.q2).norm(), (pair.q2 * pair.q1).norm()) /
            scale;
  r.fact4 = std::max((pair.q1 * pair.q1 - pair.q1).norm(),
                     (pair.q2 * pair.q2 - pair.q2).norm()) /
            scale;
  return r;
}

double TraceConditionReport::max_residual() const {
  return residuals.size() ? residuals.maxCoeff() : 0.0;
}

double TraceConditionReport::max_gap() const {
  return reduction_gap.size() ? reduction_gap.maxCoeff() : 0.0;
}

TraceConditionReport verify_trace_conditions(
    const CertificateContext& ctx,
    const Eigen::Ref<const Eigen::MatrixXd>& m0) {
  const int n = ctx.n();
  const Eigen::MatrixXd qm0q = ctx.Q() * m0 * ctx.Q();
  const Eigen::MatrixXd m0_minus_p = m0 - ctx.P();
  TraceConditionReport report;
  report.residuals.resize(n - 1);
  report.reduction_gap.resize(n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    const int k = n - 1 + i;
    // trace(Q G_i Q M0 - G_i P) = trace(G_i (Q M0 Q - P))
    const double full = antidiag_sum(qm0q, k) - antidiag_sum(ctx.P(), k);
    const double reduced = antidiag_sum(m0_minus_p, k);
    report.residuals(i - 1) = std::abs(full);
    report.reduction_gap(i - 1) = std::abs(full - reduced);
  }
  return report;
}

RecoveryCondition lemma1_condition(const CertificateContext& ctx,
                                   const DeviationVector& dev) {
  if (dev.n() != ctx.n())
    throw std::invalid_argument("deviation size does not match the context");
  const Eigen::MatrixXd h = materialize(dev);
  const Eigen::MatrixXd qhq = ctx.Q() * h * ctx.Q();
  RecoveryCondition cond;
  cond.lhs = std::abs(trace_product(ctx.P(), h));
  cond.rhs = nuclear_norm(qhq);
  cond.holds = cond.lhs < cond.rhs;
  return cond;
}

PerturbedCertificate build_m1(const CertificateContext& ctx,
                              const Eigen::Ref<const Eigen::MatrixXd>& m0,
                              const DeviationVector& dev) {
  if (dev.is_zero())
    throw std::invalid_argument(
        "build_m1 needs a nonzero deviation; Q H Q != 0 is only guaranteed "
        "for H != 0");
  const Eigen::MatrixXd h = materialize(dev);
  const Eigen::MatrixXd qhq = ctx.Q() * h * ctx.Q();
  const double qhq_norm = spectral_norm(qhq);
  if (qhq_norm == 0.0)
    throw std::invalid_argument("Q H Q vanished numerically");

  PerturbedCertificate out;
  // Half the remaining spectral slack keeps ||M1||_2 <= (1 + ||M0||_2)/2 < 1.
  out.delta = (1.0 - spectral_norm(m0)) / (2.0 * qhq_norm);
  out.m1 = m0 + out.delta * qhq;
  out.m1_spectral_norm = spectral_norm(out.m1);
  out.trace_lhs = trace_product(qhq, out.m1) - trace_product(h, ctx.P());
  out.trace_rhs = out.delta * qhq.squaredNorm();
  return out;
}

CertificateSet build_certificate(const CertificateContext& ctx) {
  CertificateSet set;
  set.delta = build_delta(ctx);
  ProjectorPair pair = split_projectors(ctx, set.delta);
  set.m0 = build_m0(ctx, set.delta);
  set.facts = verify_facts(ctx, pair);
  set.traces = verify_trace_conditions(ctx, set.m0);
  set.m0_norm_gap =
      std::abs(spectral_norm(set.m0) - std::abs(ctx.pole_power(ctx.n())));
  set.q1 = std::move(pair.q1);
  set.q2 = std::move(pair.q2);
  return set;
}

double residual_threshold(int n, double h) {
  return (n <= 10 && std::abs(h) < 0.9) ? 1e-12 : 1e-10;
}

}  // namespace hankelmc
