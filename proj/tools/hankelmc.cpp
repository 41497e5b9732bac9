#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include <hankelmc/certificate.hpp>
#include <hankelmc/experiments.hpp>
#include <hankelmc/io.hpp>
#include <hankelmc/norms.hpp>
#include <hankelmc/solver.hpp>

namespace {

using hankelmc::format_full;

void require_stable_pole(double h) {
  if (!(std::abs(h) < 1.0))
    throw std::invalid_argument("pole must satisfy |h| < 1, got " +
                                format_full(h));
}

Eigen::VectorXd pole_pinned(double h, int n) {
  require_stable_pole(h);
  Eigen::VectorXd pinned(n);
  double p = 1.0;
  for (int k = 0; k < n; ++k) {
    pinned(k) = p;
    p *= h;
  }
  return pinned;
}

Eigen::VectorXd load_pinned(const std::string& path, int n_flag) {
  std::vector<double> raw;
  try {
    raw = hankelmc::parse_pinned_file(path);
  } catch (const std::runtime_error& e) {
    // An unreadable or malformed file is a usage error, not a numerical one.
    throw std::invalid_argument(e.what());
  }
  const int n = static_cast<int>(raw.size());
  if (n_flag != 0 && n_flag != n)
    throw std::invalid_argument("--n is " + std::to_string(n_flag) + " but " +
                                path + " holds " + std::to_string(n) +
                                " values");
  return Eigen::Map<const Eigen::VectorXd>(raw.data(), n);
}

struct CertifyOpts {
  double h = 0.0;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 12345;
  std::string out;
};

int run_certify(const CertifyOpts& o) {
  const hankelmc::CertificateContext ctx(o.h, o.n);
  const hankelmc::CertificateSet cert = hankelmc::build_certificate(ctx);
  const double thr = hankelmc::residual_threshold(o.n, o.h);

  bool ok = cert.facts.max() <= thr && cert.traces.max_residual() <= thr &&
            cert.traces.max_gap() <= 1e-12 && cert.m0_norm_gap <= 1e-10;

  std::cout << "h=" << format_full(o.h) << " n=" << o.n << '\n'
            << "fact_residual_max=" << format_full(cert.facts.max()) << '\n'
            << "trace_residual_max=" << format_full(cert.traces.max_residual())
            << '\n'
            << "reduction_gap_max=" << format_full(cert.traces.max_gap())
            << '\n'
            << "m0_norm_gap=" << format_full(cert.m0_norm_gap) << '\n'
            << "threshold=" << format_full(thr) << '\n';

  std::vector<std::pair<std::string, double>> kv{
      {"h", o.h},
      {"n", static_cast<double>(o.n)},
      {"fact1", cert.facts.fact1},
      {"fact2", cert.facts.fact2},
      {"fact3", cert.facts.fact3},
      {"fact4", cert.facts.fact4},
      {"fact_residual_max", cert.facts.max()},
      {"trace_residual_max", cert.traces.max_residual()},
      {"reduction_gap_max", cert.traces.max_gap()},
      {"m0_norm_gap", cert.m0_norm_gap},
      {"threshold", thr}};

  if (o.trials > 0) {
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double margin_min = std::numeric_limits<double>::infinity();
    double qhq_ratio_min = std::numeric_limits<double>::infinity();
    double m1_norm_max = 0.0;
    double trace_gap_max = 0.0;
    for (int t = 0; t < o.trials; ++t) {
      Eigen::VectorXd v(o.n - 1);
      do {
        for (int i = 0; i < o.n - 1; ++i) v(i) = gauss(rng);
      } while (v.norm() == 0.0);
      v /= v.norm();
      const hankelmc::DeviationVector dev(o.n, v);
      const Eigen::MatrixXd hmat = materialize(dev);

      const hankelmc::RecoveryCondition rec =
          hankelmc::lemma1_condition(ctx, dev);
      margin_min = std::min(margin_min, rec.rhs - rec.lhs);

      const Eigen::MatrixXd qhq = ctx.Q() * hmat * ctx.Q();
      qhq_ratio_min = std::min(qhq_ratio_min, qhq.norm() / hmat.norm());

      const hankelmc::PerturbedCertificate m1 =
          hankelmc::build_m1(ctx, cert.m0, dev);
      m1_norm_max = std::max(m1_norm_max, m1.m1_spectral_norm);
      trace_gap_max =
          std::max(trace_gap_max, std::abs(m1.trace_lhs - m1.trace_rhs) /
                                      std::max(1.0, std::abs(m1.trace_rhs)));
    }
    ok = ok && margin_min > 0.0 && m1_norm_max <= 1.0 &&
         trace_gap_max <= 1e-12;
    std::cout << "trials=" << o.trials << " seed=" << o.seed << '\n'
              << "lemma_margin_min=" << format_full(margin_min) << '\n'
              << "qhq_ratio_min=" << format_full(qhq_ratio_min) << '\n'
              << "m1_norm_max=" << format_full(m1_norm_max) << '\n'
              << "m1_trace_gap_max=" << format_full(trace_gap_max) << '\n';
    kv.emplace_back("trials", static_cast<double>(o.trials));
    kv.emplace_back("seed", static_cast<double>(o.seed));
    kv.emplace_back("lemma_margin_min", margin_min);
    kv.emplace_back("qhq_ratio_min", qhq_ratio_min);
    kv.emplace_back("m1_norm_max", m1_norm_max);
    kv.emplace_back("m1_trace_gap_max", trace_gap_max);
  }

  kv.emplace_back("verified", ok ? 1.0 : 0.0);
  if (!o.out.empty()) hankelmc::write_key_values(o.out, kv);

  std::cout << "certificate: " << (ok ? "VERIFIED" : "FAILED") << '\n';
  return ok ? 0 : 1;
}

struct CompleteOpts {
  double h = 0.0;
  bool has_h = false;
  std::string pinned_file;
  int n = 0;
  hankelmc::SolverConfig cfg;
  std::string out;
};

int run_complete(const CompleteOpts& o) {
  Eigen::VectorXd pinned;
  if (o.has_h) {
    if (o.n == 0)
      throw std::invalid_argument("--h requires --n to fix the size");
    pinned = pole_pinned(o.h, o.n);
  } else if (!o.pinned_file.empty()) {
    pinned = load_pinned(o.pinned_file, o.n);
  } else {
    throw std::invalid_argument("provide either --h or --pinned-file");
  }

  const hankelmc::SolverResult res = hankelmc::complete(pinned, o.cfg);
  const int len = 2 * res.completed.n() - 1;

  std::cout << "n=" << res.completed.n() << " iterations=" << res.iterations
            << " converged=" << (res.converged ? "yes" : "no") << '\n'
            << "nuclear_norm=" << format_full(res.nuclear_norm_hat) << '\n'
            << "primal_residual=" << format_full(res.primal_residual) << '\n'
            << "dual_residual=" << format_full(res.dual_residual) << '\n';
  for (int k = 0; k < len; ++k)
    std::cout << "antidiag[" << k
              << "]=" << format_full(res.completed.antidiag(k)) << '\n';

  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + o.out);
    out << "k,value\n";
    for (int k = 0; k < len; ++k)
      out << k << ',' << format_full(res.completed.antidiag(k)) << '\n';
  }

  if (!res.converged) {
    std::cerr << "solver did not converge within " << o.cfg.max_iter
              << " iterations\n";
    return 1;
  }
  return 0;
}

struct SweepOpts {
  int n = 10;
  hankelmc::SweepGrid grid{-0.94, 0.94, 0.05};
  int workers = 1;
  hankelmc::SolverConfig cfg;
  std::string out;
  std::string heatmap;
};

int run_sweep(const SweepOpts& o) {
  const std::vector<hankelmc::SweepRecord> records =
      hankelmc::two_pole_sweep(o.n, o.grid, o.cfg, o.workers);

  size_t recovered = 0;
  double max_diff = 0.0;
  int max_iter_seen = 0;
  for (const hankelmc::SweepRecord& r : records) {
    recovered += r.recovered ? 1 : 0;
    max_diff = std::max(max_diff, r.diff);
    max_iter_seen = std::max(max_iter_seen, r.iterations);
  }

  if (!o.out.empty()) hankelmc::emit_csv(records, o.out);
  if (!o.heatmap.empty()) hankelmc::emit_heatmap(records, o.heatmap);

  std::cout << "cells=" << records.size() << " recovered_fraction="
            << format_full(static_cast<double>(recovered) /
                           static_cast<double>(records.size()))
            << " max_diff=" << format_full(max_diff)
            << " max_iterations=" << max_iter_seen << '\n';
  return 0;
}

struct OracleOpts {
  double h = 0.0;
  bool has_h = false;
  std::string pinned_file;
  int n = 0;
  hankelmc::OracleGrid grid;
  bool ranks = false;
};

int run_oracle(const OracleOpts& o) {
  Eigen::VectorXd pinned;
  if (o.has_h) {
    if (o.n == 0)
      throw std::invalid_argument("--h requires --n to fix the size");
    pinned = pole_pinned(o.h, o.n);
  } else if (!o.pinned_file.empty()) {
    pinned = load_pinned(o.pinned_file, o.n);
  } else {
    throw std::invalid_argument("provide either --h or --pinned-file");
  }
  const int n = static_cast<int>(pinned.size());

  const hankelmc::HankelSpec best = hankelmc::oracle_complete(pinned, o.grid);
  const double nn = hankelmc::nuclear_norm(materialize(best));
  for (int k = n; k <= 2 * n - 2; ++k)
    std::cout << "free[" << k << "]=" << format_full(best.antidiag(k)) << '\n';
  std::cout << "nuclear_norm=" << format_full(nn) << '\n';

  if (o.ranks) {
    const hankelmc::RankLandscape land = hankelmc::rank_landscape(pinned, o.grid);
    std::cout << "min_rank=" << land.min_rank
              << " attained_at=" << land.rank_minimal.size() << '\n';
    const size_t show = std::min<size_t>(land.rank_minimal.size(), 5);
    for (size_t i = 0; i < show; ++i) {
      std::cout << "minimizer[" << i << "]=";
      for (int j = 0; j < land.rank_minimal[i].size(); ++j) {
        if (j) std::cout << ' ';
        std::cout << format_full(land.rank_minimal[i](j));
      }
      std::cout << '\n';
    }
  }
  return 0;
}

void add_solver_flags(CLI::App* sub, hankelmc::SolverConfig& cfg) {
  sub->add_option("--rho", cfg.rho, "ADMM penalty parameter");
  sub->add_option("--eps-abs", cfg.eps_abs, "absolute stopping tolerance");
  sub->add_option("--eps-rel", cfg.eps_rel, "relative stopping tolerance");
  sub->add_option("--max-iter", cfg.max_iter, "iteration cap");
  sub->add_option("--recovery-tol", cfg.recovery_tol,
                  "relative Frobenius threshold for recovery");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Nuclear-norm completion of partially observed Hankel matrices and "
      "verification of the dual certificate for single-pole data"};
  // --h is taken by the pole option, so help is long-form only
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", "hankelmc 0.1.0");
  app.require_subcommand(1);

  int rc = 0;

  CertifyOpts certify;
  CLI::App* c = app.add_subcommand(
      "certify", "build and verify the dual certificate for a pole");
  c->set_help_flag("--help", "print this help message and exit");
  c->add_option("--h", certify.h, "pole location, |h| < 1")->required();
  c->add_option("--n", certify.n, "matrix dimension")->required();
  c->add_option("--trials", certify.trials,
                "random unit deviations for the perturbed certificate");
  c->add_option("--seed", certify.seed, "RNG seed for --trials");
  c->add_option("--out", certify.out, "write key=value report to this file");
  c->callback([&] { rc = run_certify(certify); });

  CompleteOpts complete;
  CLI::App* m = app.add_subcommand(
      "complete", "solve the completion problem for pinned data");
  m->set_help_flag("--help", "print this help message and exit");
  CLI::Option* mh =
      m->add_option("--h", complete.h, "single pole; pins antidiag k to h^k");
  CLI::Option* mf = m->add_option("--pinned-file", complete.pinned_file,
                                  "file with one pinned value per line");
  mh->excludes(mf);
  m->add_option("--n", complete.n, "matrix dimension");
  add_solver_flags(m, complete.cfg);
  m->add_option("--out", complete.out, "write completed anti-diagonals as CSV");
  m->callback([&] {
    complete.has_h = mh->count() > 0;
    rc = run_complete(complete);
  });

  SweepOpts sweep;
  CLI::App* s = app.add_subcommand(
      "sweep", "two-pole recovery map over a square grid");
  s->set_help_flag("--help", "print this help message and exit");
  s->add_option("--n", sweep.n, "matrix dimension");
  s->add_option("--h-min", sweep.grid.lo, "grid start");
  s->add_option("--h-max", sweep.grid.hi, "grid end");
  s->add_option("--step", sweep.grid.step, "grid step");
  s->add_option("--workers", sweep.workers, "worker threads");
  add_solver_flags(s, sweep.cfg);
  s->add_option("--out", sweep.out, "write per-cell records as CSV");
  s->add_option("--heatmap", sweep.heatmap, "write the diff grid as text");
  s->callback([&] { rc = run_sweep(sweep); });

  OracleOpts oracle;
  CLI::App* b = app.add_subcommand(
      "oracle", "brute-force scan of the free anti-diagonals (n = 2 or 3)");
  b->set_help_flag("--help", "print this help message and exit");
  CLI::Option* bh =
      b->add_option("--h", oracle.h, "single pole; pins antidiag k to h^k");
  CLI::Option* bf = b->add_option("--pinned-file", oracle.pinned_file,
                                  "file with one pinned value per line");
  bh->excludes(bf);
  b->add_option("--n", oracle.n, "matrix dimension");
  b->add_option("--grid-lo", oracle.grid.lo, "scan start");
  b->add_option("--grid-hi", oracle.grid.hi, "scan end");
  b->add_option("--grid-step", oracle.grid.step,
                "scan step (0 selects the per-size default)");
  b->add_flag("--ranks", oracle.ranks, "also report the rank landscape");
  b->callback([&] {
    oracle.has_h = bh->count() > 0;
    rc = run_oracle(oracle);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
