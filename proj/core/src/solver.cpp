#include <hankelmc/solver.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include <hankelmc/norms.hpp>

namespace hankelmc {

namespace {

void fill_hankel(const Eigen::VectorXd& anti, Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = anti(i + j);
}

struct Scan {
  double lo;
  double step;
  long count;  // points lo, lo+step, ..., lo+(count-1)*step

  double value(long k) const { return lo + static_cast<double>(k) * step; }
};

Scan make_scan(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) ||
      step <= 0.0 || lo > hi)
    throw std::invalid_argument("oracle grid must satisfy lo <= hi, step > 0");
  const long count = static_cast<long>((hi - lo) / step + 1e-9) + 1;
  return {lo, step, count};
}

Scan refine_scan(double center, double coarse_step) {
  return make_scan(center - coarse_step, center + coarse_step,
                   coarse_step / 100.0);
}

int check_oracle_size(const Eigen::Ref<const Eigen::VectorXd>& pinned) {
  const int n = static_cast<int>(pinned.size());
  if (n != 2 && n != 3)
    throw std::invalid_argument(
        "brute-force scan supports n in {2, 3}, got n = " + std::to_string(n));
  if (!pinned.allFinite())
    throw std::invalid_argument("pinned values must be finite");
  return n;
}

double default_step(int n) { return n == 2 ? 1e-4 : 1e-2; }

// Evaluates f(free) = ||Hankel(pinned, free)||_* over a scan, keeping the
// argmin. Strict improvement only, so the first grid argmin wins ties.
class OracleEvaluator {
 public:
  explicit OracleEvaluator(const Eigen::Ref<const Eigen::VectorXd>& pinned)
      : n_(static_cast<int>(pinned.size())),
        anti_(Eigen::VectorXd::Zero(2 * pinned.size() - 1)),
        m_(pinned.size(), pinned.size()) {
    anti_.head(n_) = pinned;
  }

  double eval(const Eigen::VectorXd& free_values) {
    anti_.tail(n_ - 1) = free_values;
    fill_hankel(anti_, m_);
    es_.compute(m_, Eigen::EigenvaluesOnly);
    if (es_.info() != Eigen::Success) throw EigenSolverError(n_, n_);
    return es_.eigenvalues().cwiseAbs().sum();
  }

  void consider(const Eigen::VectorXd& free_values) {
    const double nn = eval(free_values);
    if (nn < best_value_) {
      best_value_ = nn;
      best_ = free_values;
    }
  }

  const Eigen::VectorXd& best() const { return best_; }
  double best_value() const { return best_value_; }

 private:
  int n_;
  Eigen::VectorXd anti_;
  Eigen::MatrixXd m_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_;
  double best_value_ = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_;
};

void scan_free_space(OracleEvaluator& ev, int n, const Scan& s1,
                     const Scan& s2) {
  Eigen::VectorXd v(n - 1);
  for (long a = 0; a < s1.count; ++a) {
    v(0) = s1.value(a);
    if (n == 2) {
      ev.consider(v);
      continue;
    }
    for (long b = 0; b < s2.count; ++b) {
      v(1) = s2.value(b);
      ev.consider(v);
    }
  }
}

}  // namespace

void SolverConfig::validate() const {
  const bool ok = rho > 0.0 && std::isfinite(rho) && eps_abs > 0.0 &&
                  std::isfinite(eps_abs) && eps_rel > 0.0 &&
                  std::isfinite(eps_rel) && max_iter >= 1 &&
                  recovery_tol > 0.0 && std::isfinite(recovery_tol);
  if (!ok)
    throw std::invalid_argument(
        "SolverConfig fields must be positive and finite, max_iter >= 1");
}

SolverResult complete(const Eigen::Ref<const Eigen::VectorXd>& pinned,
                      const SolverConfig& cfg) {
  cfg.validate();
  const int n = static_cast<int>(pinned.size());
  if (n < 2 || n > kMaxDim)
    throw std::invalid_argument("pinned vector must have 2..256 entries, got " +
                                std::to_string(n));
  if (!pinned.allFinite())
    throw std::invalid_argument("pinned values must be finite");

  // The pinned anti-diagonals are written once and never touched again.
  Eigen::VectorXd anti = Eigen::VectorXd::Zero(2 * n - 1);
  anti.head(n) = pinned;

  Eigen::MatrixXd x(n, n), x_old(n, n), w(n, n);
  fill_hankel(anti, x);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  Eigen::VectorXd lam(n);

  const double tau = 1.0 / cfg.rho;
  double primal = 0.0, dual = 0.0;
  bool converged = false;
  int it = 0;
  while (it < cfg.max_iter) {
    ++it;
    // Z-update: eigen-shrinkage of A(x) + U.
    w = x + u;
    es.compute(w);
    if (es.info() != Eigen::Success) throw EigenSolverError(n, n);
    lam = es.eigenvalues();
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(lam(i)) - tau;
      lam(i) = a > 0.0 ? std::copysign(a, lam(i)) : 0.0;
    }
    z.noalias() = es.eigenvectors() * lam.asDiagonal() *
                  es.eigenvectors().transpose();

    // x-update: free anti-diagonal means of Z - U.
    w = z - u;
    for (int k = n; k <= 2 * n - 2; ++k) {
      const int lo = k - (n - 1);
      double sum = 0.0;
      for (int i = lo; i <= n - 1; ++i) sum += w(i, k - i);
      anti(k) = sum / (n - lo);
    }
    x_old.swap(x);
    fill_hankel(anti, x);

    u += x - z;

    primal = (x - z).norm();
    dual = cfg.rho * (x - x_old).norm();
    const double thr =
        cfg.eps_abs * n + cfg.eps_rel * std::max(x.norm(), z.norm());
    if (primal <= thr && dual <= thr) {
      converged = true;
      break;
    }
  }

  return SolverResult{HankelSpec(n, anti), nuclear_norm(x), it,
                      primal, dual, converged};
}

HankelSpec oracle_complete(const Eigen::Ref<const Eigen::VectorXd>& pinned,
                           const OracleGrid& grid) {
  const int n = check_oracle_size(pinned);
  const double step = grid.step > 0.0 ? grid.step : default_step(n);
  const Scan coarse = make_scan(grid.lo, grid.hi, step);
  if (coarse.count > (n == 2 ? 40'000'000L : 10'000L))
    throw std::invalid_argument("oracle grid too fine for an exhaustive scan");

  OracleEvaluator ev(pinned);
  scan_free_space(ev, n, coarse, coarse);

  // One refinement pass: +-1 coarse step around the argmin at 1/100
  // resolution.
  const Eigen::VectorXd coarse_best = ev.best();
  const Scan r1 = refine_scan(coarse_best(0), step);
  const Scan r2 =
      n == 3 ? refine_scan(coarse_best(1), step) : Scan{0.0, 1.0, 0};
  scan_free_space(ev, n, r1, n == 3 ? r2 : r1);

  Eigen::VectorXd anti(2 * n - 1);
  anti.head(n) = pinned;
  anti.tail(n - 1) = ev.best();
  return HankelSpec(n, std::move(anti));
}

RankLandscape rank_landscape(const Eigen::Ref<const Eigen::VectorXd>& pinned,
                             const OracleGrid& grid) {
  const int n = check_oracle_size(pinned);
  const double step = grid.step > 0.0 ? grid.step : default_step(n);
  const Scan scan = make_scan(grid.lo, grid.hi, step);
  if (scan.count > (n == 2 ? 40'000'000L : 10'000L))
    throw std::invalid_argument("rank scan grid too fine");

  Eigen::VectorXd anti = Eigen::VectorXd::Zero(2 * n - 1);
  anti.head(n) = pinned;
  Eigen::MatrixXd m(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;

  RankLandscape out;
  out.min_rank = n + 1;
  Eigen::VectorXd v(n - 1);
  const long rows = scan.count;
  const long cols = n == 3 ? scan.count : 1;
  out.cells.reserve(static_cast<size_t>(rows * cols));
  for (long a = 0; a < rows; ++a) {
    v(0) = scan.value(a);
    for (long b = 0; b < cols; ++b) {
      if (n == 3) v(1) = scan.value(b);
      anti.tail(n - 1) = v;
      fill_hankel(anti, m);
      es.compute(m, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw EigenSolverError(n, n);
      const Eigen::VectorXd sigma = es.eigenvalues().cwiseAbs();
      const double sigma_max = sigma.maxCoeff();
      const int rank =
          sigma_max == 0.0
              ? 0
              : static_cast<int>((sigma.array() > 1e-8 * sigma_max).count());
      out.cells.push_back({v, rank});
      out.min_rank = std::min(out.min_rank, rank);
    }
  }
  for (const RankCell& cell : out.cells)
    if (cell.rank == out.min_rank) out.rank_minimal.push_back(cell.free_values);
  return out;
}

}  // namespace hankelmc
