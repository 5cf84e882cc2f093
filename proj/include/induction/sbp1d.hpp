#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace induction {

using Eigen::Index;

enum class SbpOrder { SBP2, SBP4 };

inline std::string to_string(SbpOrder order) { return order == SbpOrder::SBP2 ? "SBP2" : "SBP4"; }

inline SbpOrder sbp_order_from_string(const std::string& s) {
  if (s == "SBP2") return SbpOrder::SBP2;
  if (s == "SBP4") return SbpOrder::SBP4;
  throw std::invalid_argument("unknown SBP order '" + s + "' (expected SBP2 or SBP4)");
}

/// Smallest admissible grid size; below this the two boundary closures overlap.
constexpr Index min_points(SbpOrder order) { return order == SbpOrder::SBP2 ? 4 : 12; }

namespace detail {

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

// Left-boundary closure of the diagonal-norm first-derivative operators.
// Norm weights are in units of dx; Q entries are dimensionless. The right
// closure follows from Q(n-1-i, n-1-j) = -Q(i, j) and the mirrored norm.
struct ClosureTable {
  int rows;                           // closure rows (left side)
  int cols;                           // columns touched by those rows
  int half_width;                     // interior stencil half width
  std::vector<Rational> weights;      // rows entries
  std::vector<Rational> q;            // rows x cols, row-major
  std::vector<Rational> interior_q;   // 2 * half_width + 1 entries
};

inline const ClosureTable& closure_table(SbpOrder order) {
  static const ClosureTable sbp2{
      1, 2, 1,
      {{1, 2}},
      {{-1, 2}, {1, 2}},
      {{-1, 2}, {0, 1}, {1, 2}}};
  static const ClosureTable sbp4{
      4, 6, 2,
      {{17, 48}, {59, 48}, {43, 48}, {49, 48}},
      {{-1, 2},  {59, 96},  {-1, 12},  {-1, 32}, {0, 1},  {0, 1},
       {-59, 96}, {0, 1},   {59, 96},  {0, 1},   {0, 1},  {0, 1},
       {1, 12},  {-59, 96}, {0, 1},    {59, 96}, {-1, 12}, {0, 1},
       {1, 32},  {0, 1},    {-59, 96}, {0, 1},   {2, 3},  {-1, 12}},
      {{1, 12}, {-2, 3}, {0, 1}, {2, 3}, {-1, 12}}};
  return order == SbpOrder::SBP2 ? sbp2 : sbp4;
}

// (a/b) / (c/d) evaluated in integers before the single rounding to Scalar.
template <typename Scalar>
Scalar ratio(Rational q, Rational w) {
  return static_cast<Scalar>(q.num * w.den) / static_cast<Scalar>(q.den * w.num);
}

template <typename Scalar>
Scalar value(Rational r) {
  return static_cast<Scalar>(r.num) / static_cast<Scalar>(r.den);
}

}  // namespace detail

/// Diagonal-norm first-derivative SBP operator D = P^{-1} Q on a uniform 1D grid.
///
/// Storage is banded: one closure block for the left boundary, its mirror for
/// the right boundary and a single interior stencil. The dense/sparse P, Q and
/// D matrices are only materialized on request.
template <typename Scalar>
class SbpOperator1D {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using SparseMatrix = Eigen::SparseMatrix<Scalar>;

  SbpOperator1D(SbpOrder order, Index n, Scalar dx) : order_(order), n_(n), dx_(dx) {
    if (n < min_points(order)) {
      throw std::invalid_argument(to_string(order) + " needs at least " +
                                  std::to_string(min_points(order)) + " points, got " +
                                  std::to_string(n));
    }
    if (!(dx > Scalar(0))) throw std::invalid_argument("grid spacing must be positive");

    const auto& table = detail::closure_table(order);
    rows_ = table.rows;
    cols_ = table.cols;
    half_width_ = table.half_width;

    p_diag_ = Vector::Constant(n, dx);
    for (int i = 0; i < rows_; ++i) {
      const Scalar w = detail::value<Scalar>(table.weights[i]) * dx;
      p_diag_[i] = w;
      p_diag_[n - 1 - i] = w;
    }

    q_closure_.resize(rows_, cols_);
    d_closure_.resize(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        const auto q = table.q[i * cols_ + j];
        q_closure_(i, j) = detail::value<Scalar>(q);
        d_closure_(i, j) = detail::ratio<Scalar>(q, table.weights[i]) / dx;
      }
    }
    q_interior_.resize(2 * half_width_ + 1);
    d_interior_.resize(2 * half_width_ + 1);
    for (int k = 0; k <= 2 * half_width_; ++k) {
      q_interior_[k] = detail::value<Scalar>(table.interior_q[k]);
      d_interior_[k] = q_interior_[k] / dx;
    }
  }

  SbpOrder order() const { return order_; }
  Index size() const { return n_; }
  Scalar dx() const { return dx_; }
  const Vector& p_diag() const { return p_diag_; }
  Index closure_rows() const { return rows_; }
  Index half_width() const { return half_width_; }

  /// Calls f(col, coefficient) for every structural nonzero of row `row` of D.
  template <typename F>
  void for_each_in_row(Index row, F&& f) const {
    visit_row(row, d_closure_, d_interior_, std::forward<F>(f));
  }

  /// Same traversal over Q.
  template <typename F>
  void for_each_in_q_row(Index row, F&& f) const {
    visit_row(row, q_closure_, q_interior_, std::forward<F>(f));
  }

  /// out.row(i) = sum_k D(i, k) * in.row(k). Works on any Eigen expression with
  /// size() rows, so the same code differentiates a 1D vector or one axis of a
  /// 2D field viewed as a matrix.
  template <typename In, typename Out>
  void apply_rows(const Eigen::MatrixBase<In>& in, const Eigen::MatrixBase<Out>& out_) const {
    auto& out = const_cast<Eigen::MatrixBase<Out>&>(out_);
    eigen_assert(in.rows() == n_ && out.rows() == n_ && in.cols() == out.cols());
    for (Index i = 0; i < n_; ++i) {
      out.row(i).setZero();
      for_each_in_row(i, [&](Index k, Scalar c) { out.row(i) += c * in.row(k); });
    }
  }

  SparseMatrix q() const { return assemble([this](Index r, auto&& f) { for_each_in_q_row(r, f); }); }
  SparseMatrix d() const { return assemble([this](Index r, auto&& f) { for_each_in_row(r, f); }); }
  SparseMatrix p() const {
    SparseMatrix m(n_, n_);
    m.reserve(Eigen::VectorXi::Constant(n_, 1));
    for (Index i = 0; i < n_; ++i) m.insert(i, i) = p_diag_[i];
    m.makeCompressed();
    return m;
  }

 private:
  template <typename F>
  void visit_row(Index row, const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& closure,
                 const Vector& interior, F&& f) const {
    if (row < rows_) {
      for (Index j = 0; j < cols_; ++j)
        if (closure(row, j) != Scalar(0)) f(j, closure(row, j));
    } else if (row >= n_ - rows_) {
      const Index mirror = n_ - 1 - row;
      for (Index j = cols_ - 1; j >= 0; --j)
        if (closure(mirror, j) != Scalar(0)) f(n_ - 1 - j, -closure(mirror, j));
    } else {
      for (Index k = -half_width_; k <= half_width_; ++k)
        if (interior[k + half_width_] != Scalar(0)) f(row + k, interior[k + half_width_]);
    }
  }

  template <typename Visit>
  SparseMatrix assemble(Visit&& visit) const {
    std::vector<Eigen::Triplet<Scalar>> triplets;
    triplets.reserve(static_cast<std::size_t>(n_ * (2 * half_width_ + 1)));
    for (Index r = 0; r < n_; ++r)
      visit(r, [&](Index c, Scalar v) { triplets.emplace_back(r, c, v); });
    SparseMatrix m(n_, n_);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
  }

  SbpOrder order_;
  Index n_;
  Scalar dx_;
  Index rows_ = 0;
  Index cols_ = 0;
  Index half_width_ = 0;
  Vector p_diag_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> q_closure_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d_closure_;
  Vector q_interior_;
  Vector d_interior_;
};

using SbpOperator1Dd = SbpOperator1D<double>;

template <typename Scalar>
SbpOperator1D<Scalar> build_sbp(SbpOrder order, Index n, Scalar dx) {
  return SbpOperator1D<Scalar>(order, n, dx);
}

template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply_d(const SbpOperator1D<Scalar>& op,
                                                 const Eigen::MatrixBase<Derived>& w) {
  if (w.size() != op.size()) {
    throw std::invalid_argument("apply_d: vector length " + std::to_string(w.size()) +
                                " does not match operator size " + std::to_string(op.size()));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(op.size());
  op.apply_rows(w, out);
  return out;
}

/// (v, w)_P = v^T P w.
template <typename Scalar, typename DerivedV, typename DerivedW>
Scalar p_inner_1d(const SbpOperator1D<Scalar>& op, const Eigen::MatrixBase<DerivedV>& v,
                  const Eigen::MatrixBase<DerivedW>& w) {
  if (v.size() != op.size() || w.size() != op.size())
    throw std::invalid_argument("p_inner_1d: length mismatch");
  return (op.p_diag().array() * v.array() * w.array()).sum();
}

/// Plain-text dump of P and Q (dense, one row per line) for test tooling.
template <typename Scalar>
void dump_pq(const SbpOperator1D<Scalar>& op, std::ostream& os) {
  const Eigen::IOFormat fmt(Eigen::FullPrecision, Eigen::DontAlignCols, " ", "\n");
  os << "# " << to_string(op.order()) << " n=" << op.size() << " dx=" << std::setprecision(17)
     << op.dx() << "\n# P\n"
     << Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(op.p()).format(fmt) << "\n# Q\n"
     << Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(op.q()).format(fmt) << "\n";
}

}  // namespace induction
