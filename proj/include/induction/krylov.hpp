#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <vector>

namespace induction {

struct KrylovResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> residual_history;  // relative residual, initial guess first
};

/// Right-preconditioned restarted GMRES(m).
///
/// Keeps its Krylov basis between calls so repeated solves with the same
/// dimension do not reallocate. `precond.solve(v)` must return M^{-1} v.
class Gmres {
 public:
  Gmres(double tolerance, int max_iterations, int restart)
      : tol_(tolerance), max_iterations_(max_iterations), restart_(restart) {}

  template <typename Matrix, typename Preconditioner>
  KrylovResult solve(const Matrix& a, const Preconditioner& precond, const Eigen::VectorXd& b, Eigen::VectorXd& x) {
    KrylovResult res;
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
      x.setZero();
      res.converged = true;
      res.residual_history.push_back(0.0);
      return res;
    }
    ensure(b.size());

    r_.noalias() = b - a * x;
    double beta = r_.norm();
    res.relative_residual = beta / bnorm;
    res.residual_history.push_back(res.relative_residual);

    while (res.relative_residual > tol_ && res.iterations < max_iterations_) {
      basis_[0] = r_ / beta;
      g_.setZero();
      g_[0] = beta;
      int k = 0;
      while (k < restart_ && res.iterations < max_iterations_) {
        z_[k] = precond.solve(basis_[k]);
        w_.noalias() = a * z_[k];
        for (int i = 0; i <= k; ++i) {  // modified Gram-Schmidt
          h_(i, k) = basis_[i].dot(w_);
          w_ -= h_(i, k) * basis_[i];
        }
        h_(k + 1, k) = w_.norm();
        if (h_(k + 1, k) != 0.0) basis_[k + 1] = w_ / h_(k + 1, k);

        for (int i = 0; i < k; ++i) {
          const double tmp = cs_[i] * h_(i, k) + sn_[i] * h_(i + 1, k);
          h_(i + 1, k) = -sn_[i] * h_(i, k) + cs_[i] * h_(i + 1, k);
          h_(i, k) = tmp;
        }
        const double denom = std::hypot(h_(k, k), h_(k + 1, k));
        cs_[k] = h_(k, k) / denom;
        sn_[k] = h_(k + 1, k) / denom;
        h_(k, k) = denom;
        h_(k + 1, k) = 0.0;
        g_[k + 1] = -sn_[k] * g_[k];
        g_[k] = cs_[k] * g_[k];

        ++k;
        ++res.iterations;
        res.residual_history.push_back(std::abs(g_[k]) / bnorm);
        if (res.residual_history.back() <= tol_) break;
      }

      const Eigen::VectorXd y = h_.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g_.head(k));
      for (int i = 0; i < k; ++i) x += y[i] * z_[i];
      r_.noalias() = b - a * x;
      beta = r_.norm();
      res.relative_residual = beta / bnorm;
    }
    res.converged = res.relative_residual <= tol_;
    return res;
  }

 private:
  void ensure(Eigen::Index n) {
    if (static_cast<int>(basis_.size()) == restart_ + 1 && basis_[0].size() == n) return;
    basis_.assign(restart_ + 1, Eigen::VectorXd::Zero(n));
    z_.assign(restart_, Eigen::VectorXd::Zero(n));
    h_ = Eigen::MatrixXd::Zero(restart_ + 1, restart_);
    cs_.resize(restart_);
    sn_.resize(restart_);
    g_.resize(restart_ + 1);
  }

  double tol_;
  int max_iterations_;
  int restart_;
  std::vector<Eigen::VectorXd> basis_;
  std::vector<Eigen::VectorXd> z_;
  Eigen::VectorXd r_, w_;
  Eigen::MatrixXd h_;
  Eigen::VectorXd cs_, sn_, g_;
};

}  // namespace induction
