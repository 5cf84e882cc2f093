#pragma once

#include "induction/grid2d.hpp"

#include <algorithm>
#include <stdexcept>

namespace induction {

/// Face-wise SAT coefficients. sigma_left/right are indexed by j (length ny),
/// sigma_bottom/top by i (length nx). Every entry is <= 0.
template <typename Scalar>
struct PenaltySet {
  ScalarField<Scalar> sigma_left;
  ScalarField<Scalar> sigma_right;
  ScalarField<Scalar> sigma_bottom;
  ScalarField<Scalar> sigma_top;
  Scalar valid_at = Scalar(0);
};

using PenaltySetd = PenaltySet<double>;

/// Sharp coefficients from the velocity samples at time t: minus half the
/// inflow normal velocity, zero on outflow and tangential points.
template <typename Scalar>
PenaltySet<Scalar> choose_sigmas(const Grid2D<Scalar>& grid, const ScalarField<Scalar>& u1,
                                 const ScalarField<Scalar>& u2, Scalar t) {
  grid.check(u1.size(), "choose_sigmas");
  grid.check(u2.size(), "choose_sigmas");
  const Index nx = grid.nx();
  const Index ny = grid.ny();
  const auto pos = [](Scalar v) { return std::max(v, Scalar(0)); };
  const auto neg = [](Scalar v) { return std::min(v, Scalar(0)); };

  PenaltySet<Scalar> pen;
  pen.sigma_left.resize(ny);
  pen.sigma_right.resize(ny);
  pen.sigma_bottom.resize(nx);
  pen.sigma_top.resize(nx);
  pen.valid_at = t;
  for (Index j = 0; j < ny; ++j) {
    pen.sigma_left[j] = -pos(u1[grid.index(0, j)]) / Scalar(2);
    pen.sigma_right[j] = neg(u1[grid.index(nx - 1, j)]) / Scalar(2);
  }
  for (Index i = 0; i < nx; ++i) {
    pen.sigma_bottom[i] = -pos(u2[grid.index(i, 0)]) / Scalar(2);
    pen.sigma_top[i] = neg(u2[grid.index(i, ny - 1)]) / Scalar(2);
  }
  return pen;
}

/// Calls f(flat_index, coefficient) for each face contribution of the
/// penalty operator, coefficient = sigma / (boundary norm weight). Corner
/// nodes are visited once per adjacent face.
template <typename Scalar, typename F>
void for_each_penalty(const PenaltySet<Scalar>& pen, const Grid2D<Scalar>& grid, F&& f) {
  const auto& px = grid.op_x().p_diag();
  const auto& py = grid.op_y().p_diag();
  const Index nx = grid.nx();
  const Index ny = grid.ny();
  if (pen.sigma_left.size() != ny || pen.sigma_right.size() != ny || pen.sigma_bottom.size() != nx ||
      pen.sigma_top.size() != nx)
    throw std::invalid_argument("penalty set does not match the grid");

  const auto left = face(grid, Face::Left);
  const auto right = face(grid, Face::Right);
  for (Index j = 0; j < ny; ++j) {
    f(left.indices[j], pen.sigma_left[j] / px[0]);
    f(right.indices[j], pen.sigma_right[j] / px[nx - 1]);
  }
  const auto bottom = face(grid, Face::Bottom);
  const auto top = face(grid, Face::Top);
  for (Index i = 0; i < nx; ++i) {
    f(bottom.indices[i], pen.sigma_bottom[i] / py[0]);
    f(top.indices[i], pen.sigma_top[i] / py[ny - 1]);
  }
}

/// B (V - g), componentwise; zero away from the faces.
template <typename Scalar>
VectorField2<Scalar> apply_sat(const PenaltySet<Scalar>& pen, const Grid2D<Scalar>& grid,
                               const VectorField2<Scalar>& v, const VectorField2<Scalar>& g) {
  for (const auto* f : {&v.b1, &v.b2, &g.b1, &g.b2}) grid.check(f->size(), "apply_sat");
  auto out = VectorField2<Scalar>::Zero(grid.size());
  for_each_penalty(pen, grid, [&](Index k, Scalar c) {
    out.b1[k] += c * (v.b1[k] - g.b1[k]);
    out.b2[k] += c * (v.b2[k] - g.b2[k]);
  });
  return out;
}

}  // namespace induction
