#include "induction/stepper.hpp"

#include "induction/krylov.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <limits>

namespace induction {

Coupling zeroth_order_coupling(const Grid2Dd& grid, const VelocityField& velocity, double t) {
  const auto [u1, u2] = sample_velocity(velocity, grid, t);
  return {-ddy(grid, u2), ddy(grid, u1), ddx(grid, u2), -ddx(grid, u1)};
}

VectorField2d apply_coupling(const Coupling& c, const VectorField2d& v) {
  return {c.c11.cwiseProduct(v.b1) + c.c12.cwiseProduct(v.b2), c.c21.cwiseProduct(v.b1) + c.c22.cwiseProduct(v.b2)};
}

SpatialOperator assemble(const Grid2Dd& grid, const VelocityField& velocity, double t) {
  const Index nm = grid.size();
  const auto [u1, u2] = sample_velocity(velocity, grid, t);
  const Coupling c = zeroth_order_coupling(grid, velocity, t);

  SpatialOperator out;
  out.time = t;
  out.penalty = choose_sigmas(grid, u1, u2, t);

  std::vector<Eigen::Triplet<double>> triplets;
  const Index per_row = 2 * (2 * grid.op_x().half_width() + 1) + 2;
  triplets.reserve(static_cast<std::size_t>(2 * nm * per_row));

  for (Index comp = 0; comp < 2; ++comp) {
    const Index off = comp * nm;
    for (Index i = 0; i < grid.nx(); ++i) {
      for (Index j = 0; j < grid.ny(); ++j) {
        const Index k = grid.index(i, j);
        const Index row = off + k;
        if (const double a = u1[k]; a != 0.0)
          grid.op_x().for_each_in_row(i, [&](Index col, double d) {
            triplets.emplace_back(row, off + grid.index(col, j), a * d);
          });
        if (const double a = u2[k]; a != 0.0)
          grid.op_y().for_each_in_row(j, [&](Index col, double d) {
            triplets.emplace_back(row, off + grid.index(i, col), a * d);
          });
        const double same = comp == 0 ? c.c11[k] : c.c22[k];
        const double other = comp == 0 ? c.c12[k] : c.c21[k];
        if (same != 0.0) triplets.emplace_back(row, row, -same);
        if (other != 0.0) triplets.emplace_back(row, (1 - comp) * nm + k, -other);
      }
    }
    for_each_penalty(out.penalty, grid, [&](Index k, double coef) {
      if (coef != 0.0) triplets.emplace_back(off + k, off + k, -coef);
    });
  }

  out.matrix.resize(2 * nm, 2 * nm);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Eigen::VectorXd stack(const VectorField2d& v) {
  Eigen::VectorXd x(v.b1.size() + v.b2.size());
  x << v.b1, v.b2;
  return x;
}

VectorField2d unstack(const Eigen::VectorXd& x) {
  const Index half = x.size() / 2;
  return {x.head(half), x.tail(half)};
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Auto: return "auto";
    case SolverKind::Direct: return "direct";
    case SolverKind::Gmres: return "gmres";
  }
  return "?";
}

SolverKind solver_kind_from_string(const std::string& s) {
  if (s == "auto") return SolverKind::Auto;
  if (s == "direct") return SolverKind::Direct;
  if (s == "gmres") return SolverKind::Gmres;
  throw std::invalid_argument("unknown solver '" + s + "' (expected auto, direct or gmres)");
}

struct BackwardEuler::Cache {
  using ColMatrix = Eigen::SparseMatrix<double>;

  explicit Cache(const SolverOptions& o) : gmres(o.tolerance, o.max_iterations, o.restart) {}

  std::optional<SpatialOperator> op;
  double speed = 0.0;  // max(|u1| / dx + |u2| / dy) over the nodes
  double dt = std::numeric_limits<double>::quiet_NaN();
  bool ready = false;
  bool direct = true;
  ColMatrix system;
  Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>> lu;
  Eigen::IncompleteLUT<double> ilu;
  Gmres gmres;
};

BackwardEuler::BackwardEuler(Grid2Dd grid, ProblemSpec spec, SolverOptions options)
    : grid_(std::move(grid)), spec_(std::move(spec)), options_(options), cache_(std::make_unique<Cache>(options)) {
  spec_.validate();
}

BackwardEuler::~BackwardEuler() = default;
BackwardEuler::BackwardEuler(BackwardEuler&&) noexcept = default;
BackwardEuler& BackwardEuler::operator=(BackwardEuler&&) noexcept = default;

void BackwardEuler::prepare(double t_new, double dt) {
  Cache& c = *cache_;
  if (!c.op || spec_.velocity.time_dependent()) {
    c.op = assemble(grid_, spec_.velocity, t_new);
    const auto [u1, u2] = sample_velocity(spec_.velocity, grid_, t_new);
    c.speed = (u1.cwiseAbs() / grid_.dx() + u2.cwiseAbs() / grid_.dy()).maxCoeff();
    c.ready = false;
    ++assemblies_;
  }
  if (c.ready && dt == c.dt) return;

  switch (options_.kind) {
    case SolverKind::Direct: c.direct = true; break;
    case SolverKind::Gmres: c.direct = false; break;
    case SolverKind::Auto: c.direct = !spec_.velocity.time_dependent() && dt * c.speed >= options_.direct_cfl; break;
  }

  Cache::ColMatrix identity(c.op->matrix.rows(), c.op->matrix.cols());
  identity.setIdentity();
  c.system = identity + dt * Cache::ColMatrix(c.op->matrix);
  c.system.makeCompressed();
  if (c.direct) {
    c.lu.compute(c.system);
    if (c.lu.info() != Eigen::Success)
      throw SolverError("sparse LU factorization failed: " + c.lu.lastErrorMessage(), {});
  } else {
    c.ilu.setDroptol(options_.ilu_droptol);
    c.ilu.setFillfactor(options_.ilu_fill);
    c.ilu.compute(c.system);
    if (c.ilu.info() != Eigen::Success) throw SolverError("incomplete LU factorization failed", {});
  }
  c.dt = dt;
  c.ready = true;
  ++factorizations_;
}

StepperState BackwardEuler::step(const StepperState& state, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  grid_.check(state.v.b1.size(), "step");
  grid_.check(state.v.b2.size(), "step");

  const double t_new = state.t + dt;
  prepare(t_new, dt);
  Cache& c = *cache_;

  Eigen::VectorXd rhs = stack(state.v);
  if (spec_.boundary != BoundaryMode::ZeroG) {
    const VectorField2d g = boundary_g(spec_, grid_, t_new);
    rhs -= dt * stack(apply_sat(c.op->penalty, grid_, g, VectorField2d::Zero(grid_.size())));
  }

  Eigen::VectorXd x;
  last_ = SolveReport{};
  last_.direct = c.direct;
  const double rhs_norm = rhs.norm();
  if (c.direct) {
    x = c.lu.solve(rhs);
    if (c.lu.info() != Eigen::Success) throw SolverError("sparse LU solve failed", {});
    last_.relative_residual = rhs_norm > 0.0 ? (c.system * x - rhs).norm() / rhs_norm : 0.0;
    last_.residual_history = {last_.relative_residual};
    if (!(last_.relative_residual <= options_.tolerance)) {
      throw SolverError("direct solve residual " + std::to_string(last_.relative_residual) + " above tolerance",
                        last_.residual_history);
    }
  } else {
    x = rhs;
    const KrylovResult kr = c.gmres.solve(c.system, c.ilu, rhs, x);
    last_.iterations = kr.iterations;
    last_.relative_residual = kr.relative_residual;
    last_.residual_history = kr.residual_history;
    if (!kr.converged) {
      throw SolverError("GMRES did not converge in " + std::to_string(kr.iterations) +
                            " iterations (relative residual " + std::to_string(kr.relative_residual) + ")",
                        kr.residual_history);
    }
  }
  return {unstack(x), t_new, state.n + 1};
}

double DtRule::dt_for(const Grid2Dd& grid) const {
  const double dt = kind == Kind::Fixed ? value : constant * std::pow(std::min(grid.dx(), grid.dy()), power);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time-step rule yields a non-positive dt");
  return dt;
}

std::vector<double> step_times(double final_time, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  std::vector<double> times{0.0};
  if (final_time <= 0.0) return times;
  // Absorb a trailing sliver below 1e-9 dt into the previous step.
  const auto full = static_cast<long>(std::floor(final_time / dt * (1.0 + 1e-12)));
  for (long n = 1; n <= full; ++n) times.push_back(static_cast<double>(n) * dt);
  if (final_time - times.back() > 1e-9 * dt) {
    times.push_back(final_time);
  } else {
    times.back() = final_time;
  }
  return times;
}

RunResult run(const ProblemSpec& spec, const Grid2Dd& grid, const DtRule& dt_rule, const RunOptions& options) {
  spec.validate();
  RunResult result;
  result.dt = dt_rule.dt_for(grid);
  result.initial = initial_data(spec, grid);
  const std::vector<double> times = step_times(spec.final_time, result.dt);

  // Step index nearest to each snapshot target, fixed up front.
  std::vector<std::pair<long, double>> wanted;
  for (double target : options.snapshot_times) {
    const auto it = std::min_element(times.begin(), times.end(), [target](double a, double b) {
      return std::abs(a - target) < std::abs(b - target);
    });
    wanted.emplace_back(static_cast<long>(it - times.begin()), target);
  }
  const auto take_snapshots = [&](const StepperState& s) {
    for (const auto& [n, target] : wanted)
      if (n == s.n) result.snapshots.push_back({target, s.t, s.n, s.v});
  };

  StepperState state{result.initial, 0.0, 0};
  double energy = p_inner(grid, state.v, state.v);
  for (const auto& obs : options.observers) obs({0, 0.0, energy, 1.0, state.v});
  take_snapshots(state);

  BackwardEuler stepper(grid, spec, options.solver);
  for (std::size_t n = 1; n < times.size(); ++n) {
    double h = times[n] - times[n - 1];
    if (std::abs(h - result.dt) <= 1e-9 * result.dt) h = result.dt;  // keep the cached factorization
    StepperState next = stepper.step(state, h);
    next.t = times[n];
    const double next_energy = p_inner(grid, next.v, next.v);
    const double growth = energy > 0.0 ? std::sqrt(next_energy / energy) : 1.0;
    for (const auto& obs : options.observers) obs({next.n, next.t, next_energy, growth, next.v});
    state = std::move(next);
    energy = next_energy;
    take_snapshots(state);
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace induction
