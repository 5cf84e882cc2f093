#pragma once

#include "induction/grid2d.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace induction {

/// Pointwise |B| = (b1^2 + b2^2)^{1/2}.
template <typename Scalar>
ScalarField<Scalar> magnitude(const VectorField2<Scalar>& v) {
  return (v.b1.array().square() + v.b2.array().square()).sqrt().matrix();
}

/// 100 * || |V| - |ref| ||_P / || |ref| ||_P.
template <typename Scalar>
Scalar rel_l2_percent(const Grid2D<Scalar>& grid, const VectorField2<Scalar>& v, const VectorField2<Scalar>& ref) {
  const ScalarField<Scalar> mref = magnitude(ref);
  const Scalar denom = p_norm(grid, mref);
  if (denom == Scalar(0)) throw std::invalid_argument("rel_l2_percent: reference field is zero");
  const ScalarField<Scalar> diff = magnitude(v) - mref;
  return Scalar(100) * p_norm(grid, diff) / denom;
}

template <typename Scalar>
ScalarField<Scalar> discrete_divergence(const Grid2D<Scalar>& grid, const VectorField2<Scalar>& v) {
  return ddx(grid, v.b1) + ddy(grid, v.b2);
}

/// Error of one grid in a doubling sequence. `rate` is empty on the first row.
struct ConvergenceRow {
  Index nx = 0;
  Index ny = 0;
  double error_percent = 0.0;
  std::optional<double> rate;

  std::string label() const { return std::to_string(nx) + "x" + std::to_string(ny); }
};

struct GridError {
  Index nx;
  Index ny;
  double error;
};

/// rate_k = log2(e_{k-1} / e_k); each grid must double the previous one.
inline std::vector<ConvergenceRow> fit_rates(const std::vector<GridError>& errors) {
  if (errors.empty()) throw std::invalid_argument("fit_rates: no rows");
  std::vector<ConvergenceRow> rows;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    const auto& e = errors[k];
    if (!(e.error > 0.0) || !std::isfinite(e.error))
      throw std::invalid_argument("fit_rates: error must be positive and finite");
    ConvergenceRow row{e.nx, e.ny, e.error, std::nullopt};
    if (k > 0) {
      const auto& prev = errors[k - 1];
      if (e.nx != 2 * prev.nx || e.ny != 2 * prev.ny)
        throw std::invalid_argument("fit_rates: grid sequence must double (" + rows.back().label() + " -> " +
                                    row.label() + ")");
      row.rate = std::log2(prev.error / e.error);
    }
    rows.push_back(row);
  }
  return rows;
}

/// CSV with header grid,error_percent,rate (rate column empty on row one).
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os);

/// Aligned plain-text table: grid size, error and rate columns.
void write_convergence_table(const std::vector<ConvergenceRow>& rows, const std::string& scheme, std::ostream& os);

}  // namespace induction
