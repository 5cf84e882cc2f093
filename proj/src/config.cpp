#include "induction/config.hpp"

#include <fstream>

namespace induction {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

Index count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) throw ConfigError(path, "expected a positive integer");
  return static_cast<Index>(v.get<long long>());
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

template <typename F>
auto enum_field(const json& v, const std::string& path, F&& parse) {
  try {
    return parse(text(v, path));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

std::pair<double, double> interval(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected [lower, upper]");
  const double a = number(v[0], path + "[0]");
  const double b = number(v[1], path + "[1]");
  if (!(b > a)) throw ConfigError(path, "upper bound must exceed lower bound");
  return {a, b};
}

DtRule dt_rule(const json& v, const std::string& path) {
  const std::string rule = text(require(v, path, "rule"), join(path, "rule"));
  if (rule == "fixed") {
    const double value = number(require(v, path, "value"), join(path, "value"));
    if (!(value > 0.0)) throw ConfigError(join(path, "value"), "must be positive");
    return DtRule::fixed(value);
  }
  if (rule == "scaled") {
    const double power = number(require(v, path, "power"), join(path, "power"));
    const double constant = number(require(v, path, "constant"), join(path, "constant"));
    if (!(constant > 0.0)) throw ConfigError(join(path, "constant"), "must be positive");
    return DtRule::scaled(power, constant);
  }
  throw ConfigError(join(path, "rule"), "expected 'fixed' or 'scaled'");
}

json dt_rule_json(const DtRule& rule) {
  if (rule.kind == DtRule::Kind::Fixed) return {{"rule", "fixed"}, {"value", rule.value}};
  return {{"rule", "scaled"}, {"power", rule.power}, {"constant", rule.constant}};
}

GridSize grid_size(const json& v, const std::string& path) {
  if (v.is_number_integer()) {
    const Index n = count(v, path);
    return {n, n};
  }
  if (v.is_object())
    return {count(require(v, path, "nx"), join(path, "nx")), count(require(v, path, "ny"), join(path, "ny"))};
  throw ConfigError(path, "expected N or {\"nx\": N, \"ny\": M}");
}

void check_grid(const GridSize& g, SbpOrder scheme, const std::string& path) {
  const Index m = min_points(scheme);
  if (g.nx < m || g.ny < m)
    throw ConfigError(path, to_string(scheme) + " needs at least " + std::to_string(m) + " points per axis");
}

VelocityField velocity(const json& v, const std::string& path) {
  const auto kind = enum_field(require(v, path, "kind"), join(path, "kind"), velocity_kind_from_string);
  switch (kind) {
    case VelocityKind::Rotation: return VelocityField::rotation();
    case VelocityKind::Shear: return VelocityField::shear();
    case VelocityKind::Constant:
      return VelocityField::constant(number(require(v, path, "a"), join(path, "a")),
                                     number(require(v, path, "b"), join(path, "b")));
  }
  throw ConfigError(path, "unhandled velocity");
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "expected an object");
  RunConfig c;

  const auto& version = require(j, "", "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kConfigSchemaVersion)
    throw ConfigError("schema_version", "unsupported (expected " + std::to_string(kConfigSchemaVersion) + ")");

  c.scheme = enum_field(require(j, "", "scheme"), "scheme", sbp_order_from_string);
  c.grid = grid_size(require(j, "", "grid"), "grid");
  check_grid(c.grid, c.scheme, "grid");

  if (const auto it = j.find("domain"); it != j.end()) {
    const auto [ax, bx] = interval(require(*it, "domain", "x"), "domain.x");
    const auto [ay, by] = interval(require(*it, "domain", "y"), "domain.y");
    c.problem.domain = {ax, bx, ay, by};
  }
  c.problem.velocity = velocity(require(j, "", "velocity"), "velocity");
  c.problem.initial = enum_field(require(j, "", "initial"), "initial", initial_data_from_string);
  c.problem.boundary = enum_field(require(j, "", "boundary"), "boundary", boundary_mode_from_string);
  c.problem.final_time = number(require(j, "", "final_time"), "final_time");
  if (!(c.problem.final_time >= 0.0)) throw ConfigError("final_time", "must be non-negative");
  if (c.problem.boundary == BoundaryMode::ExactG && c.problem.velocity.kind() != VelocityKind::Rotation)
    throw ConfigError("boundary", "exact boundary data requires the rotation velocity");

  c.dt = dt_rule(require(j, "", "dt"), "dt");
  if (const auto it = j.find("output_dir"); it != j.end()) c.output_dir = text(*it, "output_dir");
  if (const auto it = j.find("snapshots"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("snapshots", "expected an array of times");
    for (std::size_t k = 0; k < it->size(); ++k)
      c.snapshots.push_back(number((*it)[k], "snapshots[" + std::to_string(k) + "]"));
  }
  if (const auto it = j.find("solver"); it != j.end()) c.solver = enum_field(*it, "solver", solver_kind_from_string);

  const auto& exp = require(j, "", "experiment");
  const std::string kind = text(require(exp, "experiment", "kind"), "experiment.kind");
  if (kind == "run") {
    c.experiment.kind = ExperimentKind::Run;
  } else if (kind == "converge") {
    c.experiment.kind = ExperimentKind::Converge;
    const auto& grids = require(exp, "experiment", "grids");
    if (!grids.is_array() || grids.empty()) throw ConfigError("experiment.grids", "expected a non-empty array");
    for (std::size_t k = 0; k < grids.size(); ++k) {
      const std::string path = "experiment.grids[" + std::to_string(k) + "]";
      const GridSize g = grid_size(grids[k], path);
      check_grid(g, c.scheme, path);
      if (k > 0) {
        const GridSize& prev = c.experiment.grids.back();
        if (g.nx != 2 * prev.nx || g.ny != 2 * prev.ny) throw ConfigError(path, "grid sequence must double");
      }
      c.experiment.grids.push_back(g);
    }
    if (c.problem.velocity.kind() != VelocityKind::Rotation)
      throw ConfigError("velocity.kind", "converge needs the rotation velocity (exact solution)");
  } else if (kind == "stability") {
    c.experiment.kind = ExperimentKind::Stability;
    const auto& list = require(exp, "experiment", "dt_list");
    if (!list.is_array() || list.empty()) throw ConfigError("experiment.dt_list", "expected a non-empty array");
    for (std::size_t k = 0; k < list.size(); ++k)
      c.experiment.dt_list.push_back(dt_rule(list[k], "experiment.dt_list[" + std::to_string(k) + "]"));
    if (const auto it = exp.find("k_bound"); it != exp.end()) {
      c.experiment.k_bound = number(*it, "experiment.k_bound");
      if (!(*c.experiment.k_bound >= 0.0)) throw ConfigError("experiment.k_bound", "must be non-negative");
    }
    if (c.problem.boundary != BoundaryMode::ZeroG)
      throw ConfigError("boundary", "stability runs require zero boundary data");
  } else {
    throw ConfigError("experiment.kind", "expected run, converge or stability");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["scheme"] = to_string(c.scheme);
  j["grid"] = {{"nx", c.grid.nx}, {"ny", c.grid.ny}};
  j["domain"] = {{"x", {c.problem.domain.ax, c.problem.domain.bx}}, {"y", {c.problem.domain.ay, c.problem.domain.by}}};
  json vel = {{"kind", to_string(c.problem.velocity.kind())}};
  if (c.problem.velocity.kind() == VelocityKind::Constant) {
    vel["a"] = c.problem.velocity.a();
    vel["b"] = c.problem.velocity.b();
  }
  j["velocity"] = vel;
  j["initial"] = to_string(c.problem.initial);
  j["boundary"] = to_string(c.problem.boundary);
  j["final_time"] = c.problem.final_time;
  j["dt"] = dt_rule_json(c.dt);
  j["output_dir"] = c.output_dir;
  j["snapshots"] = c.snapshots;
  j["solver"] = to_string(c.solver);

  json exp;
  switch (c.experiment.kind) {
    case ExperimentKind::Run: exp["kind"] = "run"; break;
    case ExperimentKind::Converge: {
      exp["kind"] = "converge";
      exp["grids"] = json::array();
      for (const auto& g : c.experiment.grids) exp["grids"].push_back({{"nx", g.nx}, {"ny", g.ny}});
      break;
    }
    case ExperimentKind::Stability: {
      exp["kind"] = "stability";
      exp["dt_list"] = json::array();
      for (const auto& r : c.experiment.dt_list) exp["dt_list"].push_back(dt_rule_json(r));
      if (c.experiment.k_bound) exp["k_bound"] = *c.experiment.k_bound;
      break;
    }
  }
  j["experiment"] = exp;
  return j;
}

}  // namespace induction
