#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

namespace linrl {

/// Sufficient statistic of ridge regression: the regularized gram matrix
/// lambda*I + sum phi phi^T, the moment vector sum target*phi, and the sample
/// count. Single writer; snapshots are plain values and safe to share.
class RidgeState {
 public:
  RidgeState(int dim, double lambda);

  /// Rank-one update with one (feature, target) pair. Rejects non-finite input.
  void update(const Eigen::VectorXd& phi, double target);

  /// Ridge estimate solving gram * w = moment. With no data this is zero.
  Eigen::VectorXd weights() const;

  /// Solution of gram * y = v.
  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;

  /// (||v||_gram, ||v||_gram^{-1}).
  std::pair<double, double> weighted_norms(const Eigen::VectorXd& v) const;
  double quad_norm(const Eigen::VectorXd& v) const;      // ||v||_gram
  double inv_quad_norm(const Eigen::VectorXd& v) const;  // ||v||_gram^{-1}
  double inv_trace_product(const Eigen::MatrixXd& m) const;  // trace(gram^{-1} m)

  double log_det() const;

  int dim() const { return dim_; }
  double lambda() const { return lambda_; }
  int count() const { return count_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::VectorXd& moment() const { return moment_; }

  /// Versioned JSON snapshot of (gram, moment, count, lambda).
  std::string to_json() const;
  static RidgeState from_json(const std::string& text);

 private:
  const Eigen::LLT<Eigen::MatrixXd>& factor() const;

  int dim_;
  double lambda_;
  int count_ = 0;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd moment_;
  mutable Eigen::LLT<Eigen::MatrixXd> llt_;
  mutable bool factor_stale_ = true;
};

/// Both sides of the log-determinant potential inequality for a feature
/// sequence with squared norms at most L: the left side accumulates
/// log(1 + ||phi_t||^2) in the norm of the running inverse gram, the right
/// side is d*log(lambda + T*L^2/d). Callers assert lhs <= rhs.
std::pair<double, double> determinant_lemma_gap(
    const std::vector<Eigen::VectorXd>& features, double lambda, int dim,
    double norm_bound, int t_max);

}  // namespace linrl
