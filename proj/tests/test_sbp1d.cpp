#include "induction/sbp1d.hpp"

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <sstream>

namespace induction {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd dense(const Eigen::SparseMatrix<double>& m) { return MatrixXd(m); }

VectorXd nodes(Index n, double dx) { return VectorXd::LinSpaced(n, 0.0, dx * double(n - 1)); }

MatrixXd corner(Index n) {
  MatrixXd c = MatrixXd::Zero(n, n);
  c(0, 0) = -1.0;
  c(n - 1, n - 1) = 1.0;
  return c;
}

TEST(Sbp1d, Sbp2SmallOperatorEntries) {
  const auto op = build_sbp(SbpOrder::SBP2, 5, 0.25);
  VectorXd p(5);
  p << 0.5, 1, 1, 1, 0.5;
  EXPECT_TRUE(op.p_diag().isApprox(0.25 * p, 1e-15));

  MatrixXd q(5, 5);
  q << -0.5, 0.5, 0, 0, 0,
       -0.5, 0, 0.5, 0, 0,
       0, -0.5, 0, 0.5, 0,
       0, 0, -0.5, 0, 0.5,
       0, 0, 0, -0.5, 0.5;
  EXPECT_EQ(dense(op.q()), q);
}

// Oracle: the 2-1 closure (p0, q00, q01) is the unique solution of the SBP
// constraint plus first-order accuracy of the boundary row.
TEST(Sbp1d, Sbp2ClosureSolvesAccuracyConditions) {
  // Unknowns (p0, q00, q01); rows: q00 = -1/2, q01 + q10 = 0 with q10 = -1/2,
  // D*1 = 0 at row 0, D*x = 1 at row 0 (multiplied through by p0 h).
  MatrixXd a(4, 3);
  VectorXd b(4);
  a << 0, 1, 0,
       0, 0, 1,
       0, 1, 1,
       -1, 0, 1;
  b << -0.5, 0.5, 0.0, 0.0;
  const VectorXd sol = a.colPivHouseholderQr().solve(b);
  ASSERT_NEAR((a * sol - b).norm(), 0.0, 1e-14);

  const double h = 0.1;
  const auto op = build_sbp(SbpOrder::SBP2, 10, h);
  EXPECT_NEAR(op.p_diag()[0] / h, sol[0], 1e-15);
  const MatrixXd q = dense(op.q());
  EXPECT_NEAR(q(0, 0), sol[1], 1e-15);
  EXPECT_NEAR(q(0, 1), sol[2], 1e-15);
}

// Oracle: exactness on x forces P * 1 = Q * x row by row, so the norm follows
// from Q alone.
TEST(Sbp1d, Sbp4NormWeightsFollowFromQ) {
  const double h = 0.05;
  const auto op = build_sbp(SbpOrder::SBP4, 12, h);
  const VectorXd x = nodes(12, h);
  const VectorXd implied = dense(op.q()) * x;
  EXPECT_TRUE(implied.isApprox(op.p_diag(), 1e-13));

  const double expected[] = {17.0 / 48, 59.0 / 48, 43.0 / 48, 49.0 / 48};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(op.p_diag()[i], expected[i] * h, 1e-16);
    EXPECT_NEAR(op.p_diag()[11 - i], expected[i] * h, 1e-16);
  }
  for (int i = 4; i < 8; ++i) EXPECT_DOUBLE_EQ(op.p_diag()[i], h);
}

TEST(Sbp1d, QPlusQTransposeIsCornerMatrix) {
  for (auto order : {SbpOrder::SBP2, SbpOrder::SBP4}) {
    for (Index n : {min_points(order), Index(16), Index(33), Index(100)}) {
      const MatrixXd q = dense(build_sbp(order, n, 1.0 / double(n - 1)).q());
      const MatrixXd s = q + q.transpose();
      EXPECT_LE((s - corner(n)).cwiseAbs().maxCoeff(), 1e-14) << to_string(order) << " n=" << n;
      EXPECT_EQ((s.array() != 0.0).count(), 2);
    }
  }
}

TEST(Sbp1d, ExactOnLowDegreePolynomials) {
  for (auto order : {SbpOrder::SBP2, SbpOrder::SBP4}) {
    const Index n = 30;
    const double h = 0.037;
    const auto op = build_sbp(order, n, h);
    const VectorXd x = nodes(n, h);
    EXPECT_LE(apply_d(op, VectorXd::Constant(n, 3.0)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((apply_d(op, x) - VectorXd::Ones(n)).cwiseAbs().maxCoeff(), 1e-12);
    if (order == SbpOrder::SBP4) {
      const VectorXd x2 = x.array().square();
      EXPECT_LE((apply_d(op, x2) - 2.0 * x).cwiseAbs().maxCoeff(), 1e-12);
      // Interior rows are the fourth-order central stencil: exact on x^4.
      const VectorXd x4 = x.array().pow(4);
      const VectorXd d4 = apply_d(op, x4);
      for (Index i = 4; i < n - 4; ++i) EXPECT_NEAR(d4[i], 4.0 * std::pow(x[i], 3), 1e-11);
    }
  }
}

TEST(Sbp1d, InteriorRowsAreCentralStencils) {
  const double h = 0.5;
  const MatrixXd d2 = dense(build_sbp(SbpOrder::SBP2, 8, h).d());
  EXPECT_DOUBLE_EQ(d2(3, 2), -1.0);
  EXPECT_DOUBLE_EQ(d2(3, 4), 1.0);
  EXPECT_DOUBLE_EQ(d2(3, 3), 0.0);

  const MatrixXd d4 = dense(build_sbp(SbpOrder::SBP4, 14, h).d());
  const double stencil[] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
  for (Index i = 4; i < 10; ++i)
    for (int k = -2; k <= 2; ++k) EXPECT_NEAR(d4(i, i + k), stencil[k + 2] / h, 1e-15);
}

TEST(Sbp1d, RejectsBadArguments) {
  EXPECT_THROW(build_sbp(SbpOrder::SBP2, 3, 0.1), std::invalid_argument);
  EXPECT_THROW(build_sbp(SbpOrder::SBP4, 11, 0.1), std::invalid_argument);
  EXPECT_THROW(build_sbp(SbpOrder::SBP2, 10, 0.0), std::invalid_argument);
  EXPECT_THROW(build_sbp(SbpOrder::SBP4, 20, -1.0), std::invalid_argument);
  EXPECT_NO_THROW(build_sbp(SbpOrder::SBP4, 12, 0.1));

  const auto op = build_sbp(SbpOrder::SBP2, 10, 0.1);
  EXPECT_THROW(apply_d(op, VectorXd::Zero(9)), std::invalid_argument);
  EXPECT_THROW(p_inner_1d(op, VectorXd::Zero(10), VectorXd::Zero(11)), std::invalid_argument);
}

TEST(Sbp1d, BandedApplyMatchesDenseProduct) {
  std::mt19937 rng(7);
  std::normal_distribution<double> dist;
  for (auto order : {SbpOrder::SBP2, SbpOrder::SBP4}) {
    const auto op = build_sbp(order, 41, 0.025);
    VectorXd w(41);
    for (auto& v : w) v = dist(rng);
    const VectorXd banded = apply_d(op, w);
    const VectorXd full = dense(op.d()) * w;
    EXPECT_LE((banded - full).norm(), 1e-15 * full.norm() * 10);
  }
}

TEST(Sbp1d, Sbp4SineInteriorErrorIsFourthOrder) {
  const Index n = 101;
  const double h = 0.01;
  const auto op = build_sbp(SbpOrder::SBP4, n, h);
  const VectorXd x = nodes(n, h);
  const VectorXd err = apply_d(op, VectorXd(x.array().sin())) - VectorXd(x.array().cos());
  for (Index i = 4; i < n - 4; ++i) EXPECT_LE(std::abs(err[i]), std::pow(h, 4));
}

TEST(Sbp1d, PInner) {
  const auto op = build_sbp(SbpOrder::SBP2, 5, 0.25);
  EXPECT_DOUBLE_EQ(p_inner_1d(op, VectorXd::Ones(5), VectorXd::Ones(5)), 1.0);
  EXPECT_EQ(p_inner_1d(op, VectorXd::Zero(5), VectorXd::LinSpaced(5, 1, 5)), 0.0);
}

TEST(Sbp1d, SummationByPartsIdentityOnRandomVectors) {
  std::mt19937 rng(11);
  std::normal_distribution<double> dist;
  for (auto order : {SbpOrder::SBP2, SbpOrder::SBP4}) {
    for (Index n : {12, 16, 33, 100}) {
      const auto op = build_sbp(order, n, 1.0 / double(n - 1));
      for (int trial = 0; trial < 20; ++trial) {
        VectorXd v(n), w(n);
        for (Index i = 0; i < n; ++i) {
          v[i] = dist(rng);
          w[i] = dist(rng);
        }
        const double lhs = p_inner_1d(op, v, apply_d(op, w)) + p_inner_1d(op, apply_d(op, v), w);
        const double rhs = v[n - 1] * w[n - 1] - v[0] * w[0];
        EXPECT_NEAR(lhs, rhs, 1e-12 * v.norm() * w.norm());
      }
      // P-norm is positive definite.
      EXPECT_GT(op.p_diag().minCoeff(), 0.0);
    }
  }
}

double sine_derivative_error(SbpOrder order, Index n) {
  const double h = 1.0 / double(n - 1);
  const auto op = build_sbp(order, n, h);
  const VectorXd x = nodes(n, h);
  const VectorXd e = apply_d(op, VectorXd((2 * M_PI * x).array().sin())) -
                     VectorXd((2 * M_PI) * (2 * M_PI * x).array().cos());
  return std::sqrt(p_inner_1d(op, e, e));
}

// The P-norm rate of the truncation error is interior order for SBP2 and
// closure order + 1/2 for SBP4 (O(h^2) errors on O(1) rows of weight h).
TEST(Sbp1d, DerivativeConvergenceRates) {
  const Index ns[] = {25, 50, 100, 200};
  for (auto order : {SbpOrder::SBP2, SbpOrder::SBP4}) {
    for (int k = 1; k < 4; ++k) {
      const double e0 = sine_derivative_error(order, ns[k - 1]);
      const double e1 = sine_derivative_error(order, ns[k]);
      const double rate = std::log(e0 / e1) / std::log(double(ns[k] - 1) / double(ns[k - 1] - 1));
      if (order == SbpOrder::SBP2) {
        EXPECT_GE(rate, 1.9);
      } else {
        EXPECT_GE(rate, 2.4);
      }
    }
  }
}

TEST(Sbp1d, CommutatorRatioDoesNotGrowUnderRefinement) {
  std::mt19937 rng(3);
  std::normal_distribution<double> dist;
  for (auto order : {SbpOrder::SBP2, SbpOrder::SBP4}) {
    double previous = 0.0;
    for (Index n : {25, 50, 100, 200}) {
      const double h = 1.0 / double(n - 1);
      const auto op = build_sbp(order, n, h);
      const VectorXd u = (M_PI * nodes(n, h)).array().sin();
      double ratio = 0.0;
      for (int trial = 0; trial < 50; ++trial) {
        VectorXd w(n);
        for (auto& v : w) v = dist(rng);
        const VectorXd c = apply_d(op, VectorXd(u.cwiseProduct(w))) - u.cwiseProduct(apply_d(op, w));
        const double r = std::sqrt(p_inner_1d(op, c, c) / p_inner_1d(op, w, w));
        EXPECT_LE(r, 2.0 * M_PI);
        ratio += r / 50.0;
      }
      if (previous > 0.0) EXPECT_LE(ratio, 1.05 * previous);
      previous = ratio;
    }
  }
}

// Largest singular value of P^{1/2} (D U - U D) P^{-1/2}: the worst case
// over all w. It stays below 2 max|u'| and its increments shrink.
TEST(Sbp1d, CommutatorOperatorNormIsBounded) {
  for (auto order : {SbpOrder::SBP2, SbpOrder::SBP4}) {
    std::vector<double> norms;
    for (Index n : {50, 100, 200, 400}) {
      const auto op = build_sbp(order, n, 1.0 / double(n - 1));
      const VectorXd u = (M_PI * VectorXd::LinSpaced(n, 0.0, 1.0)).array().sin();
      const MatrixXd d = dense(op.d());
      const MatrixXd c = d * u.asDiagonal() - u.asDiagonal() * d;
      const VectorXd s = op.p_diag().array().sqrt();
      const MatrixXd m = s.asDiagonal() * c * s.cwiseInverse().asDiagonal();
      norms.push_back(Eigen::JacobiSVD<MatrixXd>(m).singularValues()[0]);
    }
    for (std::size_t k = 0; k < norms.size(); ++k) {
      EXPECT_LE(norms[k], 2.0 * M_PI);
      if (k >= 2) EXPECT_LT(norms[k] - norms[k - 1], 0.6 * (norms[k - 1] - norms[k - 2]));
    }
  }
}

TEST(Sbp1d, DumpWritesBothMatrices) {
  std::ostringstream os;
  dump_pq(build_sbp(SbpOrder::SBP2, 4, 1.0), os);
  const std::string s = os.str();
  EXPECT_NE(s.find("# P"), std::string::npos);
  EXPECT_NE(s.find("# Q"), std::string::npos);
  EXPECT_NE(s.find("-0.5 0.5 0 0"), std::string::npos);
}

}  // namespace
}  // namespace induction
