#include "induction/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace induction {

StabilityRun measure_stability(const ProblemSpec& spec, const Grid2Dd& grid, const DtRule& rule,
                               const SolverOptions& solver) {
  StabilityRun out;
  out.dt = rule.dt_for(grid);
  const std::vector<double> times = step_times(spec.final_time, out.dt);
  double e0 = 0.0;
  double last = 0.0;

  RunOptions opts;
  opts.solver = solver;
  opts.observers.push_back([&](const StepReport& r) {
    if (r.n == 0) {
      e0 = r.energy;
      last = r.energy;
      return;
    }
    out.steps = r.n;
    out.finite = out.finite && std::isfinite(r.energy);
    out.max_growth = std::max(out.max_growth, r.growth);
    const double h = times[r.n] - times[r.n - 1];
    out.k_fit = std::max(out.k_fit, (r.growth - 1.0) / h);
    last = r.energy;
  });
  run(spec, grid, rule, opts);
  out.final_energy_ratio = e0 > 0.0 ? last / e0 : 1.0;
  return out;
}

std::vector<ConvergenceCase> run_convergence(const ProblemSpec& spec, SbpOrder order,
                                             const std::vector<std::pair<Index, Index>>& grids, const DtRule& rule,
                                             const RunOptions& options,
                                             const std::function<void(const ConvergenceCase&)>& on_case) {
  std::vector<ConvergenceCase> cases;
  for (const auto& [nx, ny] : grids) {
    const Grid2Dd grid(order, nx, ny, spec.domain);
    RunResult result = run(spec, grid, rule, options);
    const VectorField2d exact = exact_rotation(spec.velocity, grid, result.final_state.t);
    const double err = rel_l2_percent(grid, result.final_state.v, exact);
    cases.push_back({nx, ny, std::move(result), err});
    if (on_case) on_case(cases.back());
  }
  return cases;
}

std::vector<ConvergenceRow> rows_of(const std::vector<ConvergenceCase>& cases) {
  std::vector<GridError> errors;
  for (const auto& c : cases) errors.push_back({c.nx, c.ny, c.error_percent});
  return fit_rates(errors);
}

}  // namespace induction
