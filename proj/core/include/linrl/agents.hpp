#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "linrl/blr.hpp"
#include "linrl/confidence.hpp"
#include "linrl/envs.hpp"
#include "linrl/mdp.hpp"
#include "linrl/ridge.hpp"
#include "linrl/rng.hpp"

namespace linrl {

/// One observed step of an episode.
struct Transition {
  int x = 0;
  int a = 0;
  double r = 0.0;
  int x_next = 0;
  int h = 1;
  bool terminal = false;
};

/// Rollout interface the harness drives. One instance per run; agents are not
/// shared across threads.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual void begin_episode(RngStream& rng) { (void)rng; }
  virtual int act(int x, int h, RngStream& rng) = 0;
  virtual void observe(const Transition& tr) { (void)tr; }
  virtual void end_episode() {}
  /// The (possibly stochastic) policy the agent deploys this episode, fixed at
  /// episode start; this is what pseudo-regret evaluates exactly.
  virtual StochasticPolicy episode_policy() const = 0;
  virtual std::string kind() const = 0;
};

/// With probability 1-eps the lowest-index argmax, otherwise uniform over all
/// actions.
int epsilon_greedy_action(const Eigen::VectorXd& q_values, double epsilon,
                          RngStream& rng);

/// softmax(q / temperature) computed with max subtraction.
Eigen::VectorXd softmax_probabilities(const Eigen::VectorXd& q_values,
                                      double temperature);
int boltzmann_action(const Eigen::VectorXd& q_values, double temperature,
                     RngStream& rng);

/// Per-step ridge estimation with ellipsoid radii and the pessimistic
/// regression targets they induce. Shared by the optimistic and the
/// posterior-sampling agents: both regress on the observable target
///   r + gamma * (best lower-confidence value at the next step),
/// with statistics refreshed once per episode.
class StepwiseEstimator {
 public:
  /// fixed_rho < 0 selects the empirical plug-in computed from the
  /// optimal-action features (simulator-side knowledge); otherwise the given
  /// constant is used at every step.
  StepwiseEstimator(const EnvModel& env, double lambda, double sigma,
                    double delta, double fixed_rho = -1.0);

  double ucb_value(int x, int a, int h) const;
  double lcb_value(int x, int a, int h) const;
  /// max_a of the lower-confidence values at (x_next, h_next); 0 beyond the
  /// horizon.
  double pessimistic_next_value(int x_next, int h_next) const;
  /// Regression response for the transition's step: r at the last step, else
  /// r + gamma * pessimistic_next_value.
  double build_target(const Transition& tr) const;
  /// The ellipsoid member realizing the best pessimistic action value at
  /// (x, h); always inside the step's confidence set.
  Eigen::VectorXd pessimistic_weights(int x, int h) const;

  void record(const Transition& tr);
  void commit_episode();

  int episodes() const { return episodes_; }
  double theta(int h) const { return theta_[h - 1]; }
  double rho_next(int h) const { return rho_next_[h - 1]; }
  const RidgeState& state(int h) const { return states_[h - 1]; }
  const Eigen::VectorXd& estimate(int h) const { return estimates_[h - 1]; }
  ConfidenceSet confidence_set(int h) const;
  const std::vector<Eigen::VectorXd>& step_features(int h) const {
    return features_[h - 1];
  }
  const std::vector<double>& step_targets(int h) const { return targets_[h - 1]; }
  const EnvModel& env() const { return *env_; }

 private:
  const EnvModel* env_;
  double lambda_, sigma_, delta_, fixed_rho_;
  int horizon_, dim_;
  std::vector<RidgeState> states_;
  std::vector<Eigen::VectorXd> estimates_;
  std::vector<double> theta_;
  std::vector<double> rho_next_;  // rho for step h+1, per h
  // Running sum of squared inverse-gram norms of the optimal-action features,
  // each taken against the gram in force when the sample was recorded. This
  // dominates the same sum under any later gram, so it is a valid
  // uniform-in-time rho bound; the end-time plug-in is not.
  std::vector<double> rho_sq_;
  std::vector<std::vector<Eigen::VectorXd>> features_;
  std::vector<std::vector<double>> targets_;
  std::vector<std::pair<Eigen::VectorXd, double>> pending_;
  std::vector<int> pending_steps_;
  std::vector<std::vector<int>> greedy_optimal_;  // optimal action per (h, x)
  int episodes_ = 0;

  void refresh();
};

struct LinUcbConfig {
  double delta = 0.1;
  double lambda = 1.0;
  double sigma = 0.1;
  double fixed_rho = -1.0;
};

/// Optimism under uncertainty: per-step confidence ellipsoids around the ridge
/// estimates; actions maximize the closed-form upper-confidence value
/// phi.w_hat + theta ||phi|| in the inverse-gram norm. Statistics update in a
/// batch at episode end.
class LinUcbAgent : public Agent {
 public:
  LinUcbAgent(const EnvModel& env, LinUcbConfig cfg);

  int select_action(int x, int h) const;
  double pessimistic_next_value(int x_next, int h_next) const {
    return core_.pessimistic_next_value(x_next, h_next);
  }
  double build_target(const Transition& tr) const { return core_.build_target(tr); }
  const StepwiseEstimator& core() const { return core_; }

  void begin_episode(RngStream& rng) override;
  int act(int x, int h, RngStream& rng) override;
  void observe(const Transition& tr) override;
  void end_episode() override;
  StochasticPolicy episode_policy() const override;
  std::string kind() const override { return "linucb"; }

 private:
  const EnvModel* env_;
  StepwiseEstimator core_;
  std::vector<std::vector<int>> plan_;  // action per (h-1, x), frozen per episode
};

struct LinPsrlConfig {
  double prior_variance = 1.0;  // zero-mean Gaussian prior over each step's weights
  double sigma = 0.1;           // likelihood noise scale
  double delta = 0.1;           // level for the internal target machinery
  double fixed_rho = -1.0;
};

/// Posterior sampling: one Gaussian draw per step at the start of each
/// episode, greedy on the draws for the whole episode. Posteriors are the
/// conjugate regression beliefs over the same observable targets the
/// optimistic agent regresses on.
class LinPsrlAgent : public Agent {
 public:
  LinPsrlAgent(const EnvModel& env, LinPsrlConfig cfg);

  void begin_episode(RngStream& rng) override;
  int act(int x, int h, RngStream& rng) override;
  void observe(const Transition& tr) override;
  void end_episode() override;
  StochasticPolicy episode_policy() const override;
  std::string kind() const override { return "linpsrl"; }

  const GaussianPosterior& posterior(int h) const { return posteriors_[h - 1]; }
  const Eigen::VectorXd& sampled_weights(int h) const { return samples_[h - 1]; }
  const StepwiseEstimator& core() const { return core_; }

 private:
  void rebuild_posteriors();

  const EnvModel* env_;
  LinPsrlConfig cfg_;
  NoiseModel likelihood_;
  StepwiseEstimator core_;
  std::vector<GaussianPosterior> posteriors_;
  std::vector<Eigen::VectorXd> samples_;
  std::vector<std::vector<int>> plan_;
};

struct EpsGreedyTabularConfig {
  double epsilon = 0.1;
};

/// Baseline: per-(state, action, step) running-average value estimates
/// (step size 1/n) with fixed-epsilon uniform exploration. The deployed
/// policy is the epsilon mixture of the greedy table.
class EpsGreedyTabularAgent : public Agent {
 public:
  EpsGreedyTabularAgent(const EnvModel& env, EpsGreedyTabularConfig cfg);

  int act(int x, int h, RngStream& rng) override;
  void observe(const Transition& tr) override;
  void end_episode() override;
  StochasticPolicy episode_policy() const override;
  std::string kind() const override { return "epsgreedy"; }

  const Eigen::MatrixXd& q_table(int h) const { return q_[h - 1]; }

 private:
  const EnvModel* env_;
  EpsGreedyTabularConfig cfg_;
  std::vector<Eigen::MatrixXd> q_;
  std::vector<Eigen::MatrixXd> counts_;
  std::vector<Transition> episode_buf_;
};

/// Baseline: the same decaying tabular estimates behind a softmax behavior
/// policy at a fixed temperature.
class BoltzmannTabularAgent : public Agent {
 public:
  BoltzmannTabularAgent(const EnvModel& env, double temperature);

  int act(int x, int h, RngStream& rng) override;
  void observe(const Transition& tr) override;
  void end_episode() override;
  StochasticPolicy episode_policy() const override;
  std::string kind() const override { return "boltzmann"; }

 private:
  const EnvModel* env_;
  double temperature_;
  std::vector<Eigen::MatrixXd> q_;
  std::vector<Eigen::MatrixXd> counts_;
  std::vector<Transition> episode_buf_;
};

/// Knows the optimal tables; zero-regret reference.
class OracleAgent : public Agent {
 public:
  explicit OracleAgent(const EnvModel& env);
  int act(int x, int h, RngStream& rng) override;
  StochasticPolicy episode_policy() const override;
  std::string kind() const override { return "oracle"; }

 private:
  const EnvModel* env_;
  OptimalSolution solution_;
};

class UniformRandomAgent : public Agent {
 public:
  explicit UniformRandomAgent(const EnvModel& env) : n_actions_(env.mdp.n_actions) {}
  int act(int x, int h, RngStream& rng) override;
  StochasticPolicy episode_policy() const override {
    return make_uniform_policy(n_actions_);
  }
  std::string kind() const override { return "uniform"; }

 private:
  int n_actions_;
};

}  // namespace linrl
