#include "induction/cli.hpp"

#include "induction/diagnostics.hpp"
#include "induction/experiments.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace induction::cli {

namespace fs = std::filesystem;

namespace {

fs::path prepare_output(const RunConfig& config, const Options& options) {
  const fs::path dir = options.output_dir.value_or(config.output_dir);
  fs::create_directories(dir);
  std::ofstream(dir / "config.json") << to_json(config).dump(2) << '\n';
  return dir;
}

void write_field(const fs::path& file, const Grid2Dd& grid, const VectorField2d& v) {
  std::ofstream out(file);
  write_field_csv(grid, v, out);
}

RunOptions run_options(const RunConfig& config) {
  RunOptions opts;
  opts.solver.kind = config.solver;
  return opts;
}

int report_solver_failure(const SolverError& e, std::ostream& log) {
  log << "solver failure: " << e.what() << '\n';
  if (!e.residual_history.empty()) {
    log << "residual history:";
    for (double r : e.residual_history) log << ' ' << std::setprecision(3) << r;
    log << '\n';
  }
  return kSolverFailure;
}

}  // namespace

int cmd_run(const RunConfig& config, const Options& options, std::ostream& log) {
  const fs::path dir = prepare_output(config, options);
  const Grid2Dd grid(config.scheme, config.grid.nx, config.grid.ny, config.problem.domain);

  std::ofstream diag(dir / "diagnostics.csv");
  diag << "n,t,energy,growth,div_norm\n" << std::setprecision(17);
  RunOptions opts = run_options(config);
  opts.snapshot_times = config.snapshots;
  opts.observers.push_back([&](const StepReport& r) {
    const double div = p_norm(grid, discrete_divergence(grid, r.v));
    diag << r.n << ',' << r.t << ',' << r.energy << ',' << r.growth << ',' << div << '\n';
  });

  RunResult result;
  try {
    result = run(config.problem, grid, config.dt, opts);
  } catch (const SolverError& e) {
    return report_solver_failure(e, log);
  }

  write_field(dir / "initial.csv", grid, result.initial);
  write_field(dir / "final.csv", grid, result.final_state.v);
  std::ofstream index(dir / "snapshots.csv");
  index << "file,target,t,n\n" << std::setprecision(17);
  for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
    const auto& s = result.snapshots[k];
    const std::string name = "snapshot_" + std::to_string(k) + ".csv";
    write_field(dir / name, grid, s.v);
    index << name << ',' << s.target << ',' << s.t << ',' << s.n << '\n';
  }
  if (!options.quiet) {
    log << to_string(config.scheme) << ' ' << grid.nx() << 'x' << grid.ny() << ": " << result.final_state.n
        << " steps of dt=" << result.dt << " to t=" << result.final_state.t << ", output in " << dir.string() << '\n';
  }
  return kOk;
}

int cmd_converge(const RunConfig& config, const Options& options, std::ostream& log) {
  if (config.experiment.kind != ExperimentKind::Converge || config.experiment.grids.empty()) {
    log << "config error: experiment.kind must be 'converge' with a grid list\n";
    return kConfigError;
  }
  const fs::path dir = prepare_output(config, options);
  std::vector<std::pair<Index, Index>> grids;
  for (const auto& g : config.experiment.grids) grids.emplace_back(g.nx, g.ny);

  std::vector<ConvergenceCase> cases;
  try {
    cases = run_convergence(config.problem, config.scheme, grids, config.dt, run_options(config),
                            [&](const ConvergenceCase& c) {
                              if (!options.quiet)
                                log << c.nx << 'x' << c.ny << ": " << std::setprecision(4) << c.error_percent
                                    << " %\n";
                            });
  } catch (const SolverError& e) {
    return report_solver_failure(e, log);
  }

  const auto rows = rows_of(cases);
  std::ofstream csv(dir / "convergence.csv");
  write_convergence_csv(rows, csv);
  std::ofstream txt(dir / "convergence.txt");
  write_convergence_table(rows, to_string(config.scheme), txt);
  if (!options.quiet) write_convergence_table(rows, to_string(config.scheme), log);
  return kOk;
}

int cmd_stability(const RunConfig& config, const Options& options, std::ostream& log) {
  if (config.experiment.kind != ExperimentKind::Stability || config.experiment.dt_list.empty()) {
    log << "config error: experiment.kind must be 'stability' with a dt list\n";
    return kConfigError;
  }
  if (config.problem.boundary != BoundaryMode::ZeroG) {
    log << "config error: boundary: stability runs require zero boundary data\n";
    return kConfigError;
  }
  const fs::path dir = prepare_output(config, options);
  const Grid2Dd grid(config.scheme, config.grid.nx, config.grid.ny, config.problem.domain);

  std::ofstream csv(dir / "stability.csv");
  csv << "dt,steps,max_growth,k_fit,final_energy_ratio,violated\n" << std::setprecision(17);
  bool violated_any = false;
  double k_all = 0.0;
  for (const auto& rule : config.experiment.dt_list) {
    StabilityRun s;
    try {
      s = measure_stability(config.problem, grid, rule, run_options(config).solver);
    } catch (const SolverError& e) {
      return report_solver_failure(e, log);
    }
    const bool violated = !s.finite || (config.experiment.k_bound &&
                                        s.max_growth > 1.0 + *config.experiment.k_bound * s.dt);
    violated_any = violated_any || violated;
    k_all = std::max(k_all, s.k_fit);
    csv << s.dt << ',' << s.steps << ',' << s.max_growth << ',' << s.k_fit << ',' << s.final_energy_ratio << ','
        << (violated ? 1 : 0) << '\n';
    if (!options.quiet) {
      log << "dt=" << std::setprecision(6) << s.dt << " steps=" << s.steps << " max growth=" << std::setprecision(15)
          << s.max_growth << " K=" << std::setprecision(6) << s.k_fit << (violated ? "  VIOLATION" : "") << '\n';
    }
  }
  if (!options.quiet) log << "fitted K over all runs: " << k_all << '\n';
  return violated_any ? kBoundViolation : kOk;
}

int main(int argc, char** argv) {
  CLI::App app{"SBP-SAT backward-Euler solver for the 2D magnetic induction equations"};
  app.require_subcommand(1);
  Options options;
  std::string output_dir;
  app.add_option("--output-dir", output_dir, "Directory for outputs (overrides the config)");
  app.add_flag("--quiet", options.quiet, "Suppress progress output");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Advance one configuration and dump fields and diagnostics");
  auto* converge_cmd = app.add_subcommand("converge", "Error table against the exact rotation solution");
  auto* stability_cmd = app.add_subcommand("stability", "Per-step energy growth for a list of time steps");
  for (auto* sub : {run_cmd, converge_cmd, stability_cmd}) {
    sub->add_option("config", config_path, "JSON run configuration")->required();
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  if (!output_dir.empty()) options.output_dir = output_dir;

  try {
    const RunConfig config = load_config(config_path);
    if (run_cmd->parsed()) return cmd_run(config, options, std::cerr);
    if (converge_cmd->parsed()) return cmd_converge(config, options, std::cerr);
    return cmd_stability(config, options, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace induction::cli
