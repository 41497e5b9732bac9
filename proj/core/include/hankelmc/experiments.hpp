#pragma once

#include <filesystem>
#include <vector>

#include <hankelmc/solver.hpp>

namespace hankelmc {

/// One completed grid cell of a pole sweep.
struct SweepRecord {
  double h1;
  double h2;
  double nuc_g0;    // nuclear norm of the true matrix
  double nuc_ghat;  // nuclear norm of the completion
  double diff;      // nuc_g0 - nuc_ghat
  bool recovered;   // relative Frobenius error <= cfg.recovery_tol
  int iterations;
};

/// Inclusive arithmetic progression lo, lo+step, ... while <= hi.
struct SweepGrid {
  double lo;
  double hi;
  double step;
  std::vector<double> values() const;  // throws std::invalid_argument
};

/// Completes the impulse response h^k for each pole in h_values (all
/// |h| < 1) and reports recovery against the rank-one truth. Records have
/// h1 == h2 == h. Solver errors are annotated with the grid position.
std::vector<SweepRecord> single_pole_sweep(int n,
                                           const std::vector<double>& h_values,
                                           const SolverConfig& cfg = {});

/// Completes the two-pole impulse response h1^k + h2^k over the full
/// grid x grid square. Only cells with h1 <= h2 are solved; the mirror
/// cell is copied, so the emitted diff grid is exactly transpose
/// symmetric. Cells are independent; `workers` threads may run them
/// concurrently, and the output is independent of the worker count.
std::vector<SweepRecord> two_pole_sweep(int n, const SweepGrid& grid,
                                        const SolverConfig& cfg = {},
                                        int workers = 1);

/// Writes records as CSV with header
/// `h1,h2,nuc_g0,nuc_ghat,diff,recovered,iterations`, floating-point
/// fields at 17 significant digits, rows sorted h1-major ascending.
/// Identical records produce byte-identical files.
void emit_csv(const std::vector<SweepRecord>& records,
              const std::filesystem::path& path);

/// Writes the diff values as a plain gridded text file: one row per h1
/// (ascending), one column per h2 (ascending), space-separated, 17
/// significant digits. Requires a complete rectangular grid; an
/// incomplete one raises std::invalid_argument listing missing cells.
void emit_heatmap(const std::vector<SweepRecord>& records,
                  const std::filesystem::path& path);

}  // namespace hankelmc
