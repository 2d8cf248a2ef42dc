#pragma once

#include <Eigen/Core>
#include <vector>

#include "linrl/ridge.hpp"

namespace linrl {

/// Ellipsoid { w : ||w - center||_shape <= radius } at confidence level
/// 1 - delta. `shape` is the regularized gram matrix of the estimator.
struct ConfidenceSet {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;
  double radius = 0.0;
  double delta = 0.0;

  double distance(const Eigen::VectorXd& w) const;
  bool contains(const Eigen::VectorXd& w, double slack = 1e-12) const;
};

/// Per-step ellipsoid radius
///   sigma * sqrt(2 log(H/delta) + d log(1 + t L^2 / lambda))
///     + sqrt(lambda) * weight_bound + theta_next * rho_next,
/// where (theta_next, rho_next) come from the step below in the backward
/// recursion; pass (0, 0) at the last step.
double confidence_radius(int t, double delta, int dim, double sigma,
                         double lambda, double norm_bound, double weight_bound,
                         int horizon, double theta_next, double rho_next);

/// Radii for all steps h = 1..H, evaluated backward from h = H. `rho_next[h-1]`
/// must hold the rho value for step h+1 (the entry for h = H is ignored and
/// treated as the conventional zero).
std::vector<double> radius_schedule(int t, double delta, int dim, double sigma,
                                    double lambda, double norm_bound,
                                    double weight_bound, int horizon,
                                    const std::vector<double>& rho_next);

/// Empirical rho: square root of the summed squared inverse-gram norms of the
/// optimal-action features observed so far.
double rho_empirical(const RidgeState& state,
                     const std::vector<Eigen::VectorXd>& optimal_features);
/// Same quantity from a precomputed outer-product accumulator
/// M = sum phi phi^T of the optimal-action features: sqrt(trace(gram^{-1} M)).
double rho_empirical(const RidgeState& state, const Eigen::MatrixXd& outer_sum);

/// Horizon combination of per-step rho values
///   sum_{i=1..H} gamma^{2(H-i)} (1 + sum_{j=2..i} gamma^{j-1}
///                                  prod_{k=1..j-1} rho[H-(i-k)+1])^2.
/// `rhos` holds the values for steps 2..H+1 in order (length H); the last
/// entry is conventionally zero and never enters the sum.
double bar_rho(const std::vector<double>& rhos, double gamma, int horizon);

}  // namespace linrl
