#pragma once

#include "induction/diagnostics.hpp"
#include "induction/stepper.hpp"

#include <functional>
#include <vector>

namespace induction {

/// Growth-factor record of one g = 0 run.
struct StabilityRun {
  double dt = 0.0;
  long steps = 0;
  double max_growth = 0.0;
  /// max over steps of (growth - 1) / dt, clamped at 0.
  double k_fit = 0.0;
  double final_energy_ratio = 0.0;
  bool finite = true;
};

StabilityRun measure_stability(const ProblemSpec& spec, const Grid2Dd& grid, const DtRule& rule,
                               const SolverOptions& solver = {});

/// Rotation runs on each grid of a doubling sequence, error against the exact
/// solution at spec.final_time.
struct ConvergenceCase {
  Index nx;
  Index ny;
  RunResult result;
  double error_percent;
};

std::vector<ConvergenceCase> run_convergence(const ProblemSpec& spec, SbpOrder order,
                                             const std::vector<std::pair<Index, Index>>& grids, const DtRule& rule,
                                             const RunOptions& options = {},
                                             const std::function<void(const ConvergenceCase&)>& on_case = {});

std::vector<ConvergenceRow> rows_of(const std::vector<ConvergenceCase>& cases);

}  // namespace induction
