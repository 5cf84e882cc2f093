#include "induction/model.hpp"

#include <cmath>
#include <stdexcept>

namespace induction {

double VelocityField::u1(double /*x*/, double y, double /*t*/) const {
  switch (kind_) {
    case VelocityKind::Rotation: return -y;
    case VelocityKind::Constant: return a_;
    case VelocityKind::Shear: return y;
  }
  return 0.0;
}

double VelocityField::u2(double x, double /*y*/, double /*t*/) const {
  switch (kind_) {
    case VelocityKind::Rotation: return x;
    case VelocityKind::Constant: return b_;
    case VelocityKind::Shear: return 0.0;
  }
  return 0.0;
}

std::string to_string(VelocityKind kind) {
  switch (kind) {
    case VelocityKind::Rotation: return "rotation";
    case VelocityKind::Constant: return "constant";
    case VelocityKind::Shear: return "shear";
  }
  return "?";
}

VelocityKind velocity_kind_from_string(const std::string& s) {
  if (s == "rotation") return VelocityKind::Rotation;
  if (s == "constant") return VelocityKind::Constant;
  if (s == "shear") return VelocityKind::Shear;
  throw std::invalid_argument("unknown velocity kind '" + s + "'");
}

std::string to_string(InitialData) { return "gaussian_hump"; }

InitialData initial_data_from_string(const std::string& s) {
  if (s == "gaussian_hump") return InitialData::GaussianHump;
  throw std::invalid_argument("unknown initial data '" + s + "'");
}

std::string to_string(BoundaryMode mode) { return mode == BoundaryMode::ZeroG ? "zero" : "exact"; }

BoundaryMode boundary_mode_from_string(const std::string& s) {
  if (s == "zero") return BoundaryMode::ZeroG;
  if (s == "exact") return BoundaryMode::ExactG;
  throw std::invalid_argument("unknown boundary mode '" + s + "' (expected zero or exact)");
}

void ProblemSpec::validate() const {
  if (!(final_time >= 0.0)) throw std::invalid_argument("final_time must be non-negative");
  if (!(domain.bx > domain.ax) || !(domain.by > domain.ay)) throw std::invalid_argument("degenerate domain");
  if (boundary == BoundaryMode::ExactG && velocity.kind() != VelocityKind::Rotation)
    throw std::invalid_argument("exact boundary data is only available for the rotation velocity");
}

std::pair<ScalarFieldd, ScalarFieldd> sample_velocity(const VelocityField& v, const Grid2Dd& grid, double t) {
  return {grid.sample([&](double x, double y) { return v.u1(x, y, t); }),
          grid.sample([&](double x, double y) { return v.u2(x, y, t); })};
}

Eigen::Vector2d gaussian_hump_at(double x, double y) {
  const double xs = x - 0.5;
  const double e = std::exp(-20.0 * (xs * xs + y * y));
  return {-4.0 * y * e, 4.0 * xs * e};
}

namespace {

VectorField2d sample_pointwise(const Grid2Dd& grid, auto&& f) {
  VectorField2d out = VectorField2d::Zero(grid.size());
  for (Index i = 0; i < grid.nx(); ++i) {
    for (Index j = 0; j < grid.ny(); ++j) {
      const Eigen::Vector2d b = f(grid.x(i), grid.y(j));
      out.b1[grid.index(i, j)] = b[0];
      out.b2[grid.index(i, j)] = b[1];
    }
  }
  return out;
}

}  // namespace

VectorField2d gaussian_hump(const Grid2Dd& grid) {
  return sample_pointwise(grid, [](double x, double y) { return gaussian_hump_at(x, y); });
}

Eigen::Vector2d exact_rotation_at(double x, double y, double t) {
  const Eigen::Rotation2Dd rot(t);
  const Eigen::Vector2d back = rot.inverse() * Eigen::Vector2d(x, y);
  return rot * gaussian_hump_at(back.x(), back.y());
}

VectorField2d exact_rotation(const Grid2Dd& grid, double t) {
  return sample_pointwise(grid, [t](double x, double y) { return exact_rotation_at(x, y, t); });
}

VectorField2d exact_rotation(const VelocityField& v, const Grid2Dd& grid, double t) {
  if (v.kind() != VelocityKind::Rotation)
    throw std::invalid_argument("exact solution is only known for the rotation velocity");
  return exact_rotation(grid, t);
}

VectorField2d initial_data(const ProblemSpec& spec, const Grid2Dd& grid) {
  switch (spec.initial) {
    case InitialData::GaussianHump: return gaussian_hump(grid);
  }
  throw std::logic_error("unhandled initial data");
}

VectorField2d boundary_g(const ProblemSpec& spec, const Grid2Dd& grid, double t) {
  if (spec.boundary == BoundaryMode::ZeroG) return VectorField2d::Zero(grid.size());
  return exact_rotation(spec.velocity, grid, t);
}

}  // namespace induction
