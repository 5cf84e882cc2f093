#pragma once

#include "induction/grid2d.hpp"
#include "induction/model.hpp"
#include "induction/sat.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace induction {

/// Zeroth-order coupling C = [[-dy u2, dy u1], [dx u2, -dx u1]] with SBP
/// derivatives of the sampled velocity, stored as four pointwise fields.
struct Coupling {
  ScalarFieldd c11, c12, c21, c22;
};

Coupling zeroth_order_coupling(const Grid2Dd& grid, const VelocityField& velocity, double t);
VectorField2d apply_coupling(const Coupling& c, const VectorField2d& v);

/// A(t) = u1 o dx + u2 o dy - C - B on the stacked unknown (b1 block, then b2).
struct SpatialOperator {
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  PenaltySetd penalty;
  double time = 0.0;
};

SpatialOperator assemble(const Grid2Dd& grid, const VelocityField& velocity, double t);

Eigen::VectorXd stack(const VectorField2d& v);
VectorField2d unstack(const Eigen::VectorXd& x);

enum class SolverKind { Auto, Direct, Gmres };

std::string to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& s);

struct SolverOptions {
  SolverKind kind = SolverKind::Auto;
  double tolerance = 1e-10;
  int max_iterations = 500;
  int restart = 50;
  double ilu_droptol = 1e-4;
  int ilu_fill = 2;
  /// Auto picks the sparse LU once dt * max(|u1|/dx + |u2|/dy) reaches this.
  double direct_cfl = 1.0;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

struct StepperState {
  VectorField2d v;
  double t = 0.0;
  long n = 0;
};

struct SolveReport {
  bool direct = true;
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> residual_history;
};

/// Backward Euler: (I + dt A(t + dt)) V^{n+1} = V^n - dt B g(t + dt).
///
/// The assembled operator and its factorization are cached and reused while
/// the velocity is time independent and dt is unchanged.
class BackwardEuler {
 public:
  BackwardEuler(Grid2Dd grid, ProblemSpec spec, SolverOptions options = {});
  ~BackwardEuler();
  BackwardEuler(BackwardEuler&&) noexcept;
  BackwardEuler& operator=(BackwardEuler&&) noexcept;

  StepperState step(const StepperState& state, double dt);

  const Grid2Dd& grid() const { return grid_; }
  const ProblemSpec& spec() const { return spec_; }
  const SolveReport& last_solve() const { return last_; }
  int factorizations() const { return factorizations_; }
  int assemblies() const { return assemblies_; }

 private:
  struct Cache;

  void prepare(double t_new, double dt);

  Grid2Dd grid_;
  ProblemSpec spec_;
  SolverOptions options_;
  std::unique_ptr<Cache> cache_;
  SolveReport last_;
  int factorizations_ = 0;
  int assemblies_ = 0;
};

/// Either a fixed dt or dt = constant * h^power with h = min(dx, dy).
struct DtRule {
  enum class Kind { Fixed, Scaled };
  Kind kind = Kind::Fixed;
  double value = 0.0;
  double power = 1.0;
  double constant = 1.0;

  static DtRule fixed(double dt) { return {Kind::Fixed, dt, 1.0, 1.0}; }
  static DtRule scaled(double power, double constant) { return {Kind::Scaled, 0.0, power, constant}; }

  double dt_for(const Grid2Dd& grid) const;

  friend bool operator==(const DtRule&, const DtRule&) = default;
};

/// Step times for [0, T]: uniform steps of dt, last one shortened to land on T.
std::vector<double> step_times(double final_time, double dt);

struct StepReport {
  long n;
  double t;
  double energy;  // ||V||_P^2
  double growth;  // ||V^n||_P / ||V^{n-1}||_P, 1 at n = 0
  const VectorField2d& v;
};

using StepObserver = std::function<void(const StepReport&)>;

struct Snapshot {
  double target;
  double t;
  long n;
  VectorField2d v;
};

struct RunOptions {
  SolverOptions solver;
  std::vector<double> snapshot_times;
  std::vector<StepObserver> observers;
};

struct RunResult {
  VectorField2d initial;
  StepperState final_state;
  std::vector<Snapshot> snapshots;
  double dt = 0.0;
};

/// Samples the initial data and advances to spec.final_time. Snapshots are
/// taken at the completed step nearest to each requested time.
RunResult run(const ProblemSpec& spec, const Grid2Dd& grid, const DtRule& dt_rule, const RunOptions& options = {});

}  // namespace induction
