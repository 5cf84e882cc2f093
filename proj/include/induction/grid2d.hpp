#pragma once

#include "induction/sbp1d.hpp"

#include <functional>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace induction {

/// Axis-aligned rectangle [ax, bx] x [ay, by].
struct Rect {
  double ax = 0.0;
  double bx = 1.0;
  double ay = 0.0;
  double by = 1.0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Grid function stored flat with the y-index fastest: index = i * ny + j.
template <typename Scalar>
using ScalarField = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct VectorField2 {
  ScalarField<Scalar> b1;
  ScalarField<Scalar> b2;

  static VectorField2 Zero(Index n) { return {ScalarField<Scalar>::Zero(n), ScalarField<Scalar>::Zero(n)}; }
};

using ScalarFieldd = ScalarField<double>;
using VectorField2d = VectorField2<double>;

template <typename Scalar>
VectorField2<Scalar> operator+(const VectorField2<Scalar>& a, const VectorField2<Scalar>& b) {
  return {a.b1 + b.b1, a.b2 + b.b2};
}
template <typename Scalar>
VectorField2<Scalar> operator-(const VectorField2<Scalar>& a, const VectorField2<Scalar>& b) {
  return {a.b1 - b.b1, a.b2 - b.b2};
}
template <typename Scalar>
VectorField2<Scalar> operator*(Scalar s, const VectorField2<Scalar>& a) {
  return {s * a.b1, s * a.b2};
}

enum class Face { Left, Right, Bottom, Top };

/// Flat indices of one boundary face, strictly increasing.
struct FaceSelector {
  Face face;
  std::vector<Index> indices;
};

/// Tensor-product grid with one SBP operator per axis.
template <typename Scalar>
class Grid2D {
 public:
  Grid2D(SbpOrder order, Index nx, Index ny, Rect domain = {})
      : domain_(domain),
        nx_(nx),
        ny_(ny),
        dx_(spacing(domain.ax, domain.bx, nx)),
        dy_(spacing(domain.ay, domain.by, ny)),
        op_x_(order, nx, dx_),
        op_y_(order, ny, dy_) {}

  Index nx() const { return nx_; }
  Index ny() const { return ny_; }
  Index size() const { return nx_ * ny_; }
  Index index(Index i, Index j) const { return i * ny_ + j; }
  Scalar dx() const { return dx_; }
  Scalar dy() const { return dy_; }
  const Rect& domain() const { return domain_; }
  SbpOrder order() const { return op_x_.order(); }
  const SbpOperator1D<Scalar>& op_x() const { return op_x_; }
  const SbpOperator1D<Scalar>& op_y() const { return op_y_; }

  Scalar x(Index i) const { return i == nx_ - 1 ? Scalar(domain_.bx) : Scalar(domain_.ax) + Scalar(i) * dx_; }
  Scalar y(Index j) const { return j == ny_ - 1 ? Scalar(domain_.by) : Scalar(domain_.ay) + Scalar(j) * dy_; }

  /// Samples f(x, y) at every node.
  ScalarField<Scalar> sample(const std::function<Scalar(Scalar, Scalar)>& f) const {
    ScalarField<Scalar> out(size());
    for (Index i = 0; i < nx_; ++i)
      for (Index j = 0; j < ny_; ++j) out[index(i, j)] = f(x(i), y(j));
    return out;
  }

  void check(Index n, const char* what) const {
    if (n != size()) {
      throw std::invalid_argument(std::string(what) + ": field of length " + std::to_string(n) +
                                  " does not belong to a " + std::to_string(nx_) + "x" +
                                  std::to_string(ny_) + " grid");
    }
  }

 private:
  static Scalar spacing(double a, double b, Index n) {
    if (!(b > a)) throw std::invalid_argument("degenerate domain interval");
    if (n < 2) throw std::invalid_argument("grid needs at least two points per axis");
    return Scalar((b - a) / double(n - 1));
  }

  Rect domain_;
  Index nx_;
  Index ny_;
  Scalar dx_;
  Scalar dy_;
  SbpOperator1D<Scalar> op_x_;
  SbpOperator1D<Scalar> op_y_;
};

using Grid2Dd = Grid2D<double>;

namespace detail {

template <typename Scalar>
using RowMajorMap = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
template <typename Scalar>
using RowMajorMapMut = Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

}  // namespace detail

/// (D_x kron I) f, applied along the x-index without forming the Kronecker matrix.
template <typename Scalar>
ScalarField<Scalar> ddx(const Grid2D<Scalar>& grid, const ScalarField<Scalar>& f) {
  grid.check(f.size(), "ddx");
  ScalarField<Scalar> out(f.size());
  // Row i of the (nx x ny) row-major view holds the x_i line.
  detail::RowMajorMap<Scalar> in(f.data(), grid.nx(), grid.ny());
  detail::RowMajorMapMut<Scalar> res(out.data(), grid.nx(), grid.ny());
  grid.op_x().apply_rows(in, res);
  return out;
}

/// (I kron D_y) f, applied along the y-index.
template <typename Scalar>
ScalarField<Scalar> ddy(const Grid2D<Scalar>& grid, const ScalarField<Scalar>& f) {
  grid.check(f.size(), "ddy");
  ScalarField<Scalar> out(f.size());
  // Transposed view: (ny x nx) column-major, row j is the y_j line.
  Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> in(f.data(), grid.ny(), grid.nx());
  Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> res(out.data(), grid.ny(), grid.nx());
  grid.op_y().apply_rows(in, res);
  return out;
}

template <typename Scalar>
VectorField2<Scalar> ddx(const Grid2D<Scalar>& grid, const VectorField2<Scalar>& v) {
  return {ddx(grid, v.b1), ddx(grid, v.b2)};
}

template <typename Scalar>
VectorField2<Scalar> ddy(const Grid2D<Scalar>& grid, const VectorField2<Scalar>& v) {
  return {ddy(grid, v.b1), ddy(grid, v.b2)};
}

/// Diagonal of P = P_x kron P_y in flat ordering.
template <typename Scalar>
ScalarField<Scalar> p_weights(const Grid2D<Scalar>& grid) {
  ScalarField<Scalar> w(grid.size());
  detail::RowMajorMapMut<Scalar>(w.data(), grid.nx(), grid.ny()) =
      grid.op_x().p_diag() * grid.op_y().p_diag().transpose();
  return w;
}

template <typename Scalar>
Scalar p_inner(const Grid2D<Scalar>& grid, const ScalarField<Scalar>& v, const ScalarField<Scalar>& w) {
  grid.check(v.size(), "p_inner");
  grid.check(w.size(), "p_inner");
  detail::RowMajorMap<Scalar> vm(v.data(), grid.nx(), grid.ny());
  detail::RowMajorMap<Scalar> wm(w.data(), grid.nx(), grid.ny());
  return grid.op_x().p_diag().dot((vm.cwiseProduct(wm) * grid.op_y().p_diag()).eval());
}

template <typename Scalar>
Scalar p_inner(const Grid2D<Scalar>& grid, const VectorField2<Scalar>& v, const VectorField2<Scalar>& w) {
  return p_inner(grid, v.b1, w.b1) + p_inner(grid, v.b2, w.b2);
}

template <typename Scalar, typename Field>
Scalar p_norm(const Grid2D<Scalar>& grid, const Field& v) {
  using std::sqrt;
  return sqrt(p_inner(grid, v, v));
}

template <typename Scalar>
FaceSelector face(const Grid2D<Scalar>& grid, Face which) {
  FaceSelector sel{which, {}};
  switch (which) {
    case Face::Left:
    case Face::Right: {
      const Index i = which == Face::Left ? 0 : grid.nx() - 1;
      sel.indices.reserve(grid.ny());
      for (Index j = 0; j < grid.ny(); ++j) sel.indices.push_back(grid.index(i, j));
      break;
    }
    case Face::Bottom:
    case Face::Top: {
      const Index j = which == Face::Bottom ? 0 : grid.ny() - 1;
      sel.indices.reserve(grid.nx());
      for (Index i = 0; i < grid.nx(); ++i) sel.indices.push_back(grid.index(i, j));
      break;
    }
  }
  return sel;
}

/// CSV with header x,y,b1,b2 in flat order, 17 significant digits.
template <typename Scalar>
void write_field_csv(const Grid2D<Scalar>& grid, const VectorField2<Scalar>& v, std::ostream& os) {
  grid.check(v.b1.size(), "write_field_csv");
  grid.check(v.b2.size(), "write_field_csv");
  os << "x,y,b1,b2\n" << std::setprecision(17);
  for (Index i = 0; i < grid.nx(); ++i) {
    for (Index j = 0; j < grid.ny(); ++j) {
      const Index k = grid.index(i, j);
      os << grid.x(i) << ',' << grid.y(j) << ',' << v.b1[k] << ',' << v.b2[k] << '\n';
    }
  }
}

}  // namespace induction
