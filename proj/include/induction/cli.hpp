#pragma once

#include "induction/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace induction::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kSolverFailure = 3,
  kBoundViolation = 4,
};

struct Options {
  std::optional<std::string> output_dir;  // overrides the config
  bool quiet = false;
};

/// Initial/final/snapshot field CSVs plus diagnostics.csv.
int cmd_run(const RunConfig& config, const Options& options, std::ostream& log);
/// convergence.csv and convergence.txt over the configured grid list.
int cmd_converge(const RunConfig& config, const Options& options, std::ostream& log);
/// stability.csv with the per-dt growth report.
int cmd_stability(const RunConfig& config, const Options& options, std::ostream& log);

/// Entry point shared by the executable and the tests.
int main(int argc, char** argv);

}  // namespace induction::cli
