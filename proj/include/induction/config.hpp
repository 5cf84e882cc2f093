#pragma once

#include "induction/model.hpp"
#include "induction/sbp1d.hpp"
#include "induction/stepper.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace induction {

constexpr int kConfigSchemaVersion = 1;

/// Invalid configuration; what() starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class ExperimentKind { Run, Converge, Stability };

struct GridSize {
  Index nx;
  Index ny;
  friend bool operator==(const GridSize&, const GridSize&) = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Run;
  std::vector<GridSize> grids;            // converge
  std::vector<DtRule> dt_list;            // stability
  std::optional<double> k_bound;          // stability: fail if growth > 1 + k_bound * dt
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  SbpOrder scheme = SbpOrder::SBP2;
  GridSize grid{40, 40};
  ProblemSpec problem;
  DtRule dt = DtRule::scaled(2.0, 1.0);
  std::string output_dir = "out";
  std::vector<double> snapshots;
  SolverKind solver = SolverKind::Auto;
  ExperimentConfig experiment;
};

/// Parses and validates; throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

}  // namespace induction
