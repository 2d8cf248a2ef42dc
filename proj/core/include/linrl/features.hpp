#pragma once

#include <Eigen/Core>
#include <functional>

namespace linrl {

/// Fixed per-timestep embedding of (state, action) pairs into R^d.
/// `norm_bound` is the declared bound L on the squared spectral norm of the
/// outer product phi phi^T, i.e. ||phi||_2^4 <= L for every reachable input.
struct FeatureMap {
  int dim = 0;
  int horizon = 0;
  double norm_bound = 1.0;
  // (state, action, step h in [1..H]) -> vector of length dim.
  std::function<Eigen::VectorXd(int, int, int)> eval;

  Eigen::VectorXd operator()(int x, int a, int h) const { return eval(x, a, h); }
};

/// Indicator features over (state, action); dim = n_states * n_actions and
/// the same map is used at every step. Always exactly realizable: any table
/// of Q values is linear in these features. L = 1.
inline FeatureMap tabular_one_hot(int n_states, int n_actions, int horizon) {
  if (n_states < 1 || n_actions < 1)
    throw std::invalid_argument("tabular_one_hot: n_states and n_actions must be >= 1");
  FeatureMap map;
  map.dim = n_states * n_actions;
  map.horizon = horizon;
  map.norm_bound = 1.0;
  map.eval = [n_states, n_actions, d = map.dim](int x, int a, int /*h*/) {
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(d);
    phi(x * n_actions + a) = 1.0;
    return phi;
  };
  return map;
}

/// Indicator features over states alone (the per-action-head layout used by
/// agents that keep one weight vector per action).
inline Eigen::VectorXd state_one_hot(int n_states, int x) {
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n_states);
  phi(x) = 1.0;
  return phi;
}

}  // namespace linrl
