#pragma once

#include "induction/grid2d.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>

namespace induction {

enum class VelocityKind { Rotation, Constant, Shear };

/// Prescribed velocity u = (u1, u2) from the built-in catalogue.
///
/// Rotation is u = (-y, x), Constant is u = (a, b), Shear is u = (y, 0).
class VelocityField {
 public:
  static VelocityField rotation() { return VelocityField(VelocityKind::Rotation, 0.0, 0.0); }
  static VelocityField constant(double a, double b) { return VelocityField(VelocityKind::Constant, a, b); }
  static VelocityField shear() { return VelocityField(VelocityKind::Shear, 0.0, 0.0); }

  VelocityKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double u1(double x, double y, double t) const;
  double u2(double x, double y, double t) const;

  /// None of the built-ins depend on time; the stepper keys its factorization
  /// cache on this.
  bool time_dependent() const { return false; }

  friend bool operator==(const VelocityField&, const VelocityField&) = default;

 private:
  VelocityField(VelocityKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  VelocityKind kind_;
  double a_;
  double b_;
};

std::string to_string(VelocityKind kind);
VelocityKind velocity_kind_from_string(const std::string& s);

enum class InitialData { GaussianHump };
enum class BoundaryMode { ZeroG, ExactG };

std::string to_string(InitialData init);
InitialData initial_data_from_string(const std::string& s);
std::string to_string(BoundaryMode mode);
BoundaryMode boundary_mode_from_string(const std::string& s);

struct ProblemSpec {
  VelocityField velocity = VelocityField::rotation();
  InitialData initial = InitialData::GaussianHump;
  BoundaryMode boundary = BoundaryMode::ZeroG;
  Rect domain{-1.0, 1.0, -1.0, 1.0};
  double final_time = 1.0;

  /// Throws std::invalid_argument if the problem is inconsistent.
  void validate() const;
};

std::pair<ScalarFieldd, ScalarFieldd> sample_velocity(const VelocityField& v, const Grid2Dd& grid, double t);

/// B0(x, y) = 4 (-y, x - 1/2) exp(-20 ((x - 1/2)^2 + y^2)).
Eigen::Vector2d gaussian_hump_at(double x, double y);
VectorField2d gaussian_hump(const Grid2Dd& grid);

/// B(x, t) = R(t) B0(R(-t) x) for the rotation u = (-y, x).
Eigen::Vector2d exact_rotation_at(double x, double y, double t);
VectorField2d exact_rotation(const Grid2Dd& grid, double t);
/// Same, but rejects velocities other than Rotation.
VectorField2d exact_rotation(const VelocityField& v, const Grid2Dd& grid, double t);

VectorField2d initial_data(const ProblemSpec& spec, const Grid2Dd& grid);

/// Dirichlet data g on the whole grid; only its face values are ever used.
VectorField2d boundary_g(const ProblemSpec& spec, const Grid2Dd& grid, double t);

}  // namespace induction
