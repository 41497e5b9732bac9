#include <hankelmc/experiments.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

#include <hankelmc/io.hpp>
#include <hankelmc/norms.hpp>

namespace hankelmc {

namespace {

void check_dimension(int n) {
  if (n < 2 || n > kMaxDim)
    throw std::invalid_argument("dimension must be in 2..256, got " +
                                std::to_string(n));
}

void check_pole(double h) {
  if (!(std::abs(h) < 1.0))
    throw std::invalid_argument("pole must satisfy |h| < 1, got " +
                                format_full(h));
}

// Anti-diagonal profile k -> h1^k + h2^k for k = 0..len-1.
Eigen::VectorXd two_pole_antidiag(double h1, double h2, int len) {
  Eigen::VectorXd anti(len);
  double p1 = 1.0, p2 = 1.0;
  for (int k = 0; k < len; ++k) {
    anti(k) = p1 + p2;
    p1 *= h1;
    p2 *= h2;
  }
  return anti;
}

SweepRecord solve_cell(int n, double h1, double h2,
                       const Eigen::VectorXd& truth_anti,
                       const SolverConfig& cfg) {
  const Eigen::MatrixXd g0 = materialize(HankelSpec(n, truth_anti));
  const SolverResult res = complete(truth_anti.head(n), cfg);
  const Eigen::MatrixXd ghat = materialize(res.completed);
  const double nuc_g0 = nuclear_norm(g0);
  const double rel_err = (ghat - g0).norm() / g0.norm();
  return SweepRecord{h1,
                     h2,
                     nuc_g0,
                     res.nuclear_norm_hat,
                     nuc_g0 - res.nuclear_norm_hat,
                     rel_err <= cfg.recovery_tol,
                     res.iterations};
}

[[noreturn]] void rethrow_with_cell(const std::exception& e, double h1,
                                    double h2) {
  throw std::runtime_error("cell (h1 = " + format_full(h1) +
                           ", h2 = " + format_full(h2) + "): " + e.what());
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write file: " + path.string());
  return out;
}

std::string csv_line(const SweepRecord& r) {
  std::string line;
  line += format_full(r.h1);
  line += ',';
  line += format_full(r.h2);
  line += ',';
  line += format_full(r.nuc_g0);
  line += ',';
  line += format_full(r.nuc_ghat);
  line += ',';
  line += format_full(r.diff);
  line += ',';
  line += r.recovered ? '1' : '0';
  line += ',';
  line += std::to_string(r.iterations);
  line += '\n';
  return line;
}

}  // namespace

std::vector<double> SweepGrid::values() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) ||
      step <= 0.0 || lo > hi)
    throw std::invalid_argument("sweep grid must satisfy lo <= hi, step > 0");
  std::vector<double> v;
  for (long k = 0;; ++k) {
    const double x = lo + static_cast<double>(k) * step;
    if (x > hi + step * 1e-9) break;
    v.push_back(x);
  }
  return v;
}

std::vector<SweepRecord> single_pole_sweep(int n,
                                           const std::vector<double>& h_values,
                                           const SolverConfig& cfg) {
  check_dimension(n);
  cfg.validate();
  for (double h : h_values) check_pole(h);

  std::vector<SweepRecord> records;
  records.reserve(h_values.size());
  for (double h : h_values) {
    Eigen::VectorXd anti(2 * n - 1);
    double p = 1.0;
    for (int k = 0; k < 2 * n - 1; ++k) {
      anti(k) = p;
      p *= h;
    }
    try {
      records.push_back(solve_cell(n, h, h, anti, cfg));
    } catch (const std::exception& e) {
      rethrow_with_cell(e, h, h);
    }
  }
  return records;
}

std::vector<SweepRecord> two_pole_sweep(int n, const SweepGrid& grid,
                                        const SolverConfig& cfg, int workers) {
  check_dimension(n);
  cfg.validate();
  if (workers < 1)
    throw std::invalid_argument("worker count must be >= 1, got " +
                                std::to_string(workers));
  const std::vector<double> hs = grid.values();
  for (double h : hs) check_pole(h);
  const long m = static_cast<long>(hs.size());

  // Upper-triangle task list; the mirror cell is a copy because the
  // pinned data only depends on {h1, h2} as a set.
  std::vector<std::pair<int, int>> tasks;
  tasks.reserve(static_cast<size_t>(m * (m + 1) / 2));
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) tasks.emplace_back(a, b);

  std::vector<SweepRecord> cells(static_cast<size_t>(m * m));
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<size_t> next{0};

  const auto worker = [&] {
    for (;;) {
      const size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const auto [a, b] = tasks[t];
      const double h1 = hs[a], h2 = hs[b];
      try {
        const Eigen::VectorXd anti = two_pole_antidiag(h1, h2, 2 * n - 1);
        SweepRecord rec = solve_cell(n, h1, h2, anti, cfg);
        cells[static_cast<size_t>(a * m + b)] = rec;
        if (a != b) {
          std::swap(rec.h1, rec.h2);
          cells[static_cast<size_t>(b * m + a)] = rec;
        }
      } catch (const std::exception& e) {
        try {
          rethrow_with_cell(e, h1, h2);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      }
    }
  };

  const int spawn = static_cast<int>(
      std::min<size_t>(static_cast<size_t>(workers), tasks.size()));
  if (spawn <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(spawn));
    for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  for (const std::exception_ptr& err : errors)
    if (err) std::rethrow_exception(err);
  return cells;
}

void emit_csv(const std::vector<SweepRecord>& records,
              const std::filesystem::path& path) {
  std::vector<SweepRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SweepRecord& a, const SweepRecord& b) {
                     if (a.h1 != b.h1) return a.h1 < b.h1;
                     return a.h2 < b.h2;
                   });
  std::ofstream out = open_output(path);
  out << "h1,h2,nuc_g0,nuc_ghat,diff,recovered,iterations\n";
  for (const SweepRecord& r : sorted) out << csv_line(r);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void emit_heatmap(const std::vector<SweepRecord>& records,
                  const std::filesystem::path& path) {
  std::map<double, size_t> rows, cols;
  for (const SweepRecord& r : records) {
    rows.emplace(r.h1, 0);
    cols.emplace(r.h2, 0);
  }
  size_t idx = 0;
  for (auto& [h, i] : rows) i = idx++;
  idx = 0;
  for (auto& [h, i] : cols) i = idx++;

  std::vector<double> diff(rows.size() * cols.size());
  std::vector<char> seen(rows.size() * cols.size(), 0);
  for (const SweepRecord& r : records) {
    const size_t at = rows.at(r.h1) * cols.size() + cols.at(r.h2);
    if (seen[at])
      throw std::invalid_argument("duplicate heatmap cell (h1 = " +
                                  format_full(r.h1) +
                                  ", h2 = " + format_full(r.h2) + ")");
    seen[at] = 1;
    diff[at] = r.diff;
  }
  if (records.size() != diff.size()) {
    std::string missing;
    int listed = 0;
    for (const auto& [h1, i] : rows)
      for (const auto& [h2, j] : cols) {
        if (seen[i * cols.size() + j] || listed >= 8) continue;
        missing += " (" + format_full(h1) + ", " + format_full(h2) + ")";
        ++listed;
      }
    if (records.size() + listed < diff.size()) missing += " ...";
    throw std::invalid_argument("heatmap grid is incomplete; missing cells:" +
                                missing);
  }

  std::ofstream out = open_output(path);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) {
      if (j) out << ' ';
      out << format_full(diff[i * cols.size() + j]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hankelmc
