#include <hankelmc/certificate.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include <hankelmc/norms.hpp>

using namespace hankelmc;

namespace {

double pow_oracle(double h, int e) { return std::pow(h, e); }

DeviationVector random_unit_deviation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n - 1);
  for (int i = 0; i < n - 1; ++i) v(i) = gauss(rng);
  v /= v.norm();
  return DeviationVector(n, v);
}

}  // namespace

TEST_CASE("CertificateContext rejects unstable poles and bad sizes") {
  CHECK_THROWS_AS(CertificateContext(1.0, 5), std::domain_error);
  CHECK_THROWS_AS(CertificateContext(-1.3, 5), std::domain_error);
  CHECK_THROWS_AS(CertificateContext(std::numeric_limits<double>::quiet_NaN(), 5),
                  std::domain_error);
  CHECK_THROWS_AS(CertificateContext(0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(CertificateContext(0.5, kMaxDim + 1), std::invalid_argument);
}

TEST_CASE("context scalars are exact for dyadic poles") {
  const CertificateContext ctx(0.5, 3);
  // 1 + 1/4 + 1/16 and 1/2 + 1/8 are exactly representable
  CHECK(ctx.r2() == 1.3125);
  CHECK(ctx.s() == 0.625);
  CHECK(ctx.hvec()(0) == 1.0);
  CHECK(ctx.hvec()(1) == 0.5);
  CHECK(ctx.hvec()(2) == 0.25);
  CHECK(ctx.pole_power(4) == 0.0625);
}

TEST_CASE("context scalars match pow-based oracles") {
  for (double h : {-0.9, -0.3, 0.2, 0.7, 0.94}) {
    for (int n : {2, 5, 13}) {
      const CertificateContext ctx(h, n);
      double r2 = 0.0, s = 0.0;
      for (int k = 0; k < n; ++k) r2 += pow_oracle(h, 2 * k);
      for (int e = 1; e <= 2 * n - 3; e += 2) s += pow_oracle(h, e);
      CHECK(ctx.r2() == doctest::Approx(r2).epsilon(1e-14));
      CHECK(ctx.s() == doctest::Approx(s).epsilon(1e-13));
      for (int e = 0; e <= 2 * n - 2; ++e)
        CHECK(ctx.pole_power(e) ==
              doctest::Approx(pow_oracle(h, e)).epsilon(1e-13));
    }
  }
}

TEST_CASE("P and Q are complementary orthogonal projectors") {
  for (double h : {-0.7, 0.0, 0.5}) {
    const CertificateContext ctx(h, 6);
    const Eigen::MatrixXd& p = ctx.P();
    const Eigen::MatrixXd& q = ctx.Q();
    CHECK((p - p.transpose()).norm() <= 1e-15);
    CHECK((p * p - p).norm() <= 1e-14);
    CHECK(p.trace() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((p * ctx.hvec() - ctx.hvec()).norm() <= 1e-14);
    CHECK((q * ctx.hvec()).norm() <= 1e-14);
    CHECK((p + q - Eigen::MatrixXd::Identity(6, 6)).norm() <= 1e-15);
  }
}

TEST_CASE("build_delta reproduces the frozen h = 0.5, n = 3 matrix") {
  const CertificateContext ctx(0.5, 3);
  const Eigen::MatrixXd delta = build_delta(ctx);
  Eigen::MatrixXd want(3, 3);
  // every entry is dyadic, so equality is exact
  want << -0.125, -0.0625, 0.625,
          -0.0625, 0.625, -1.0,
           0.625, -1.0, -0.5;
  CHECK((delta - want).norm() == 0.0);
}

TEST_CASE("delta is symmetric Hankel and annihilates hvec") {
  for (double h : {-0.9, -0.2, 0.3, 0.94}) {
    for (int n : {2, 4, 9}) {
      const CertificateContext ctx(h, n);
      const Eigen::MatrixXd delta = build_delta(ctx);
      CHECK((delta - delta.transpose()).norm() == 0.0);
      // per-anti-diagonal constant: averaging is the identity on it
      CHECK((materialize(antidiag_average(delta)) - delta).norm() == 0.0);
      CHECK((delta * ctx.hvec()).norm() <= 1e-13 * ctx.r2());
    }
  }
}

TEST_CASE("split_projectors recovers rank-one pieces at h = 0.5, n = 3") {
  const CertificateContext ctx(0.5, 3);
  const Eigen::MatrixXd delta = build_delta(ctx);
  const ProjectorPair pair = split_projectors(ctx, delta);

  // independently computed: Q1 = q q^T / 14 with q = (1, -3, 2)
  Eigen::Vector3d q1vec(1.0, -3.0, 2.0);
  CHECK((pair.q1 - q1vec * q1vec.transpose() / 14.0).norm() <= 1e-14);

  // each piece is a rank-one orthogonal projector
  for (const Eigen::MatrixXd& qi : {pair.q1, pair.q2}) {
    CHECK(qi.trace() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK((qi * qi - qi).norm() <= 1e-13);
  }
  CHECK((pair.q1 + pair.q2 - ctx.Q()).norm() <= 1e-14);
  CHECK((ctx.r2() * (pair.q1 - pair.q2) - delta).norm() <= 1e-14);
}

TEST_CASE("projector facts hold on a grid of poles and sizes") {
  for (double h : {-0.9, -0.3, 0.0, 0.5, 0.94}) {
    for (int n : {2, 5, 12, 20}) {
      const CertificateContext ctx(h, n);
      const ProjectorPair pair = split_projectors(ctx, build_delta(ctx));
      const FactResiduals facts = verify_facts(ctx, pair);
      const double thr = residual_threshold(n, h);
      CHECK(facts.fact1 <= thr);
      CHECK(facts.fact2 <= thr);
      CHECK(facts.fact3 <= thr);
      CHECK(facts.fact4 <= thr);
      CHECK(facts.max() ==
            std::max({facts.fact1, facts.fact2, facts.fact3, facts.fact4}));
    }
  }
}

TEST_CASE("M0 has spectral norm |h|^n and copies P on free anti-diagonals") {
  for (double h : {-0.9, -0.3, 0.5, 0.94}) {
    for (int n : {2, 6, 11}) {
      const CertificateContext ctx(h, n);
      const Eigen::MatrixXd m0 = build_m0(ctx, build_delta(ctx));
      CHECK(std::abs(spectral_norm(m0) - std::abs(ctx.pole_power(n))) <=
            1e-10);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i + j >= n) CHECK(m0(i, j) == ctx.P()(i, j));
    }
  }

  // h = 0.5, n = 3: M0 = -(2/21) * delta, so check one pinned entry
  const CertificateContext ctx(0.5, 3);
  const Eigen::MatrixXd m0 = build_m0(ctx, build_delta(ctx));
  CHECK(m0(0, 0) == doctest::Approx(0.125 * 2.0 / 21.0).epsilon(1e-15));
  CHECK(std::abs(spectral_norm(m0) - 0.125) <= 1e-14);
}

TEST_CASE("trace conditions vanish within threshold and reduce exactly") {
  for (double h : {-0.9, -0.3, 0.5, 0.94}) {
    for (int n : {2, 6, 11, 20}) {
      const CertificateContext ctx(h, n);
      const Eigen::MatrixXd m0 = build_m0(ctx, build_delta(ctx));
      const TraceConditionReport rep = verify_trace_conditions(ctx, m0);
      REQUIRE(rep.residuals.size() == n - 1);
      CHECK(rep.max_residual() <= residual_threshold(n, h));
      CHECK(rep.max_gap() <= 1e-12);
    }
  }
}

TEST_CASE("trace conditions are exactly zero at h = 0") {
  const CertificateContext ctx(0.0, 7);
  const Eigen::MatrixXd m0 = build_m0(ctx, build_delta(ctx));
  const TraceConditionReport rep = verify_trace_conditions(ctx, m0);
  CHECK(rep.max_residual() == 0.0);
  CHECK(rep.max_gap() == 0.0);
}

TEST_CASE("trace condition oracle: explicit basis-matrix products") {
  const CertificateContext ctx(0.6, 5);
  const Eigen::MatrixXd m0 = build_m0(ctx, build_delta(ctx));
  const TraceConditionReport rep = verify_trace_conditions(ctx, m0);
  for (int i = 1; i <= 4; ++i) {
    const Eigen::MatrixXd gi = basis_matrix(5, i);
    const double direct =
        (ctx.Q() * gi * ctx.Q() * m0 - gi * ctx.P()).trace();
    CHECK(std::abs(direct) == doctest::Approx(rep.residuals(i - 1))
                                  .epsilon(1e-12));
  }
}

TEST_CASE("lemma1_condition on a hand-computed n = 2 example") {
  const CertificateContext ctx(0.5, 2);
  Eigen::VectorXd v(1);
  v << 1.0;
  const RecoveryCondition cond = lemma1_condition(ctx, DeviationVector(2, v));
  // P(1,1) = h^2/r2 = 0.2 and ||Q e2||^2 = 0.8 by hand
  CHECK(cond.lhs == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(cond.rhs == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(cond.holds);
}

TEST_CASE("lemma1_condition is vacuous on the zero deviation") {
  const CertificateContext ctx(0.5, 4);
  const RecoveryCondition cond =
      lemma1_condition(ctx, DeviationVector(4, Eigen::VectorXd::Zero(3)));
  CHECK(cond.lhs == 0.0);
  CHECK(cond.rhs == 0.0);
  CHECK_FALSE(cond.holds);
}

TEST_CASE("lemma1_condition rejects mismatched sizes") {
  const CertificateContext ctx(0.5, 4);
  CHECK_THROWS_AS(
      lemma1_condition(ctx, DeviationVector(5, Eigen::VectorXd::Zero(4))),
      std::invalid_argument);
}

TEST_CASE("build_m1 keeps the certificate contractive and consistent") {
  std::mt19937_64 rng(2024);
  for (double h : {-0.9, 0.5}) {
    for (int n : {4, 10}) {
      const CertificateContext ctx(h, n);
      const Eigen::MatrixXd m0 = build_m0(ctx, build_delta(ctx));
      for (int t = 0; t < 20; ++t) {
        const DeviationVector dev = random_unit_deviation(n, rng);
        const PerturbedCertificate m1 = build_m1(ctx, m0, dev);
        CHECK(m1.delta > 0.0);
        CHECK(m1.m1_spectral_norm <= 1.0);
        CHECK(std::abs(m1.trace_lhs - m1.trace_rhs) <=
              1e-12 * std::max(1.0, std::abs(m1.trace_rhs)));
        CHECK((m1.m1 - m1.m1.transpose()).norm() <= 1e-13);
      }
    }
  }
}

TEST_CASE("build_m1 rejects the zero deviation") {
  const CertificateContext ctx(0.5, 4);
  const Eigen::MatrixXd m0 = build_m0(ctx, build_delta(ctx));
  CHECK_THROWS_AS(build_m1(ctx, m0, DeviationVector(4, Eigen::VectorXd::Zero(3))),
                  std::invalid_argument);
}

TEST_CASE("build_certificate bundles verified pieces") {
  const CertificateContext ctx(-0.8, 9);
  const CertificateSet cert = build_certificate(ctx);
  const double thr = residual_threshold(9, -0.8);
  CHECK(cert.facts.max() <= thr);
  CHECK(cert.traces.max_residual() <= thr);
  CHECK(cert.traces.max_gap() <= 1e-12);
  CHECK(cert.m0_norm_gap <= 1e-10);
  CHECK((cert.q1 + cert.q2 - ctx.Q()).norm() <= 1e-14);
  CHECK((cert.m0 + ctx.pole_power(9) * (cert.q1 - cert.q2)).norm() <= 1e-13);
}

TEST_CASE("residual_threshold policy") {
  CHECK(residual_threshold(10, 0.89) == 1e-12);
  CHECK(residual_threshold(10, -0.89) == 1e-12);
  CHECK(residual_threshold(11, 0.5) == 1e-10);
  CHECK(residual_threshold(10, 0.9) == 1e-10);
  CHECK(residual_threshold(20, 0.94) == 1e-10);
}
