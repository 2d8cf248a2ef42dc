#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "linrl/features.hpp"
#include "linrl/rng.hpp"

namespace linrl {

/// Finite episodic MDP. Indexing is tables[h-1] for step h in [1..H].
/// Immutable after construction; rollout state lives entirely in the caller,
/// so one instance can be shared across threads.
struct EpisodicMdp {
  int n_states = 0;
  int n_actions = 0;
  int horizon = 0;
  double gamma = 1.0;
  // transition[h-1] is an (n_states*n_actions) x n_states row-stochastic matrix;
  // row index x*n_actions + a.
  std::vector<Eigen::MatrixXd> transition;
  // reward_mean[h-1] is n_states x n_actions.
  std::vector<Eigen::MatrixXd> reward_mean;
  // Zero-mean reward noise, uniform on [-noise_bound, noise_bound].
  double noise_bound = 0.0;
  Eigen::VectorXd initial_dist;
  // States with no obtainable future reward (self-loops); used for terminal flags.
  std::vector<bool> absorbing;
  // Optional realized reward conditioned on the landed state. Its expectation
  // over the transition row must equal reward_mean; when unset, realized
  // rewards are reward_mean plus noise regardless of the landed state.
  std::function<double(int x, int a, int h, int x_next)> arrival_reward;

  double transition_prob(int x, int a, int h, int x_next) const {
    return transition[h - 1](x * n_actions + a, x_next);
  }

  int sample_initial(RngStream& rng) const;
  int sample_next(int x, int a, int h, RngStream& rng) const;
  double sample_reward_given_next(int x, int a, int h, int x_next, RngStream& rng) const;

  void validate() const;  // throws on malformed rows / sizes
};

/// Exact per-step weights realizing the optimal Q function linearly in a
/// paired feature map: Q*_h(x,a) = phi(x,a,h) . weights[h-1].
struct LinearQRealization {
  std::vector<Eigen::VectorXd> weights;  // one vector per step h in [1..H]
  double weight_bound = 0.0;             // bound on the Euclidean norm of each
};

/// Environment plus its exact linear description: the simulators hand agents
/// the feature map, and hand the harness the ground-truth weights.
/// `config_json` is the config document the environment was built from, so
/// environment configs serialize in both directions.
struct EnvModel {
  EpisodicMdp mdp;
  FeatureMap features;
  LinearQRealization realization;
  std::string config_json;
};

/// Exact optimal tables from backward induction:
/// q[h-1] is n_states x n_actions, v[h-1] its row-wise max.
struct OptimalSolution {
  std::vector<Eigen::MatrixXd> q;
  std::vector<Eigen::VectorXd> v;
  std::vector<std::vector<int>> greedy;  // argmax action, ties to lowest index

  double initial_value(const EpisodicMdp& mdp) const {
    return mdp.initial_dist.dot(v[0]);
  }
};

OptimalSolution optimal_q(const EpisodicMdp& mdp);

/// A policy as an action distribution per (state, step). Deterministic
/// policies are the special case of a point mass.
struct StochasticPolicy {
  std::function<Eigen::VectorXd(int x, int h)> probs;
};

StochasticPolicy make_deterministic_policy(int n_actions,
                                           std::function<int(int, int)> action);
StochasticPolicy make_uniform_policy(int n_actions);

/// Exact expected (discounted) return of the policy from the initial
/// distribution, by backward induction on the policy.
double policy_value(const EpisodicMdp& mdp, const StochasticPolicy& policy);

/// Lowest-index argmax; the tie rule used everywhere.
int argmax_lowest(const Eigen::VectorXd& values);

}  // namespace linrl
