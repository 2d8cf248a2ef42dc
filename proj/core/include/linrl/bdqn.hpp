#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "linrl/agents.hpp"
#include "linrl/blr.hpp"
#include "linrl/rng.hpp"

namespace linrl {

/// Bounded FIFO store of transitions with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(const Transition& tr);
  const Transition& sample(RngStream& rng) const;
  int size() const { return static_cast<int>(data_.size()); }
  int capacity() const { return capacity_; }
  const Transition& at(int i) const { return data_[i]; }

 private:
  int capacity_;
  int write_ = 0;
  std::vector<Transition> data_;
};

enum class ExplorationMode { kThompson, kEpsilonGreedy };

struct BdqnConfig {
  int sample_period = 1000;       // steps between posterior draws
  int posterior_period = 100000;  // steps between posterior rebuilds
  int target_period = 10000;      // retained feature-sync hook period
  int batch_size = 100000;        // replay samples per rebuild
  int replay_capacity = 100000;
  double sigma_prior = 0.001;
  double sigma_noise = 1.0;
  double gamma = 1.0;
  ExplorationMode mode = ExplorationMode::kThompson;
  double epsilon = 0.1;  // used only in epsilon-greedy mode
};

/// Thompson-sampling agent over fixed state features with one weight vector
/// per action. Once per rebuild period the per-action Gaussian beliefs are
/// recomputed by conjugate regression on a uniform replay batch and the target
/// weights snap to the new means; once per sample period fresh weights are
/// drawn around the targets; acting is greedy on the drawn weights. Regression
/// responses bootstrap through the target weights:
///   y = r                                   for terminal transitions,
///   y = r + gamma * w_target[best] . phi(x') otherwise,
/// with best = argmax_a w_a . phi(x'). In epsilon-greedy mode the draws are
/// skipped (weights stay at the means) and acting is epsilon-greedy instead;
/// everything else is identical, which isolates the exploration rule.
class BdqnLiteAgent : public Agent {
 public:
  BdqnLiteAgent(std::function<Eigen::VectorXd(int)> state_features, int feature_dim,
                int n_actions, BdqnConfig cfg);
  /// One-hot state features.
  static BdqnLiteAgent tabular(int n_states, int n_actions, BdqnConfig cfg);

  int act(int x, int h, RngStream& rng) override;
  void observe(const Transition& tr) override;
  StochasticPolicy episode_policy() const override;
  std::string kind() const override {
    return cfg_.mode == ExplorationMode::kThompson ? "bdqn" : "bdqn-eps";
  }

  /// Greedy policy on the posterior means, lifted to all steps; the learned
  /// exploitation policy both exploration modes are compared on.
  StochasticPolicy mean_greedy_policy() const;

  long long steps() const { return steps_; }
  long long rebuild_count() const { return rebuilds_; }
  long long sample_count() const { return samples_; }
  long long target_sync_count() const { return target_syncs_; }
  const ReplayBuffer& replay() const { return replay_; }
  const GaussianPosterior& posterior(int a) const { return posteriors_[a]; }
  const Eigen::VectorXd& sampled_weights(int a) const { return weights_[a]; }
  const Eigen::VectorXd& target_weights(int a) const { return target_weights_[a]; }

 private:
  void rebuild_posteriors(RngStream& rng);
  void draw_weights(RngStream& rng);
  int greedy_on(const std::vector<Eigen::VectorXd>& weights, int x) const;

  std::function<Eigen::VectorXd(int)> features_;
  int dim_;
  int n_actions_;
  BdqnConfig cfg_;
  ReplayBuffer replay_;
  std::vector<GaussianPosterior> posteriors_;
  std::vector<Eigen::VectorXd> weights_;         // acting weights (posterior draws)
  std::vector<Eigen::VectorXd> target_weights_;  // lagged means used in responses
  long long steps_ = 0;
  long long rebuilds_ = 0;
  long long samples_ = 0;
  long long target_syncs_ = 0;
};

}  // namespace linrl
