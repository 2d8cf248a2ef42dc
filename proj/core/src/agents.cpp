#include "linrl/agents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace linrl {

namespace {

int sample_from_probs(const Eigen::VectorXd& probs, RngStream& rng) {
  double u = rng.next_double();
  double acc = 0.0;
  for (int i = 0; i < probs.size(); ++i) {
    acc += probs(i);
    if (u < acc) return i;
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

int epsilon_greedy_action(const Eigen::VectorXd& q_values, double epsilon,
                          RngStream& rng) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("epsilon_greedy_action: epsilon must be in [0,1]");
  if (epsilon > 0.0 && rng.next_double() < epsilon)
    return rng.next_int(static_cast<int>(q_values.size()));
  return argmax_lowest(q_values);
}

Eigen::VectorXd softmax_probabilities(const Eigen::VectorXd& q_values,
                                      double temperature) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("softmax_probabilities: temperature must be > 0");
  Eigen::VectorXd z = (q_values.array() - q_values.maxCoeff()) / temperature;
  Eigen::VectorXd p = z.array().exp();
  return p / p.sum();
}

int boltzmann_action(const Eigen::VectorXd& q_values, double temperature,
                     RngStream& rng) {
  return sample_from_probs(softmax_probabilities(q_values, temperature), rng);
}

// ---------------------------------------------------------------------------
// StepwiseEstimator

StepwiseEstimator::StepwiseEstimator(const EnvModel& env, double lambda,
                                     double sigma, double delta, double fixed_rho)
    : env_(&env),
      lambda_(lambda),
      sigma_(sigma),
      delta_(delta),
      fixed_rho_(fixed_rho),
      horizon_(env.mdp.horizon),
      dim_(env.features.dim) {
  states_.assign(horizon_, RidgeState(dim_, lambda_));
  estimates_.assign(horizon_, Eigen::VectorXd::Zero(dim_));
  rho_next_.assign(horizon_, 0.0);
  rho_sq_.assign(horizon_, 0.0);
  features_.resize(horizon_);
  targets_.resize(horizon_);

  // Optimal actions per (h, x) from the environment's exact weights; used only
  // for the empirical rho plug-in.
  greedy_optimal_.assign(horizon_, std::vector<int>(env.mdp.n_states, 0));
  for (int h = 1; h <= horizon_; ++h)
    for (int x = 0; x < env.mdp.n_states; ++x) {
      Eigen::VectorXd vals(env.mdp.n_actions);
      for (int a = 0; a < env.mdp.n_actions; ++a)
        vals(a) = env.features(x, a, h).dot(env.realization.weights[h - 1]);
      greedy_optimal_[h - 1][x] = argmax_lowest(vals);
    }

  theta_ = radius_schedule(0, delta_, dim_, sigma_, lambda_,
                           env.features.norm_bound,
                           env.realization.weight_bound, horizon_, rho_next_);
}

double StepwiseEstimator::ucb_value(int x, int a, int h) const {
  Eigen::VectorXd phi = env_->features(x, a, h);
  return phi.dot(estimates_[h - 1]) + theta_[h - 1] * states_[h - 1].inv_quad_norm(phi);
}

double StepwiseEstimator::lcb_value(int x, int a, int h) const {
  Eigen::VectorXd phi = env_->features(x, a, h);
  return phi.dot(estimates_[h - 1]) - theta_[h - 1] * states_[h - 1].inv_quad_norm(phi);
}

double StepwiseEstimator::pessimistic_next_value(int x_next, int h_next) const {
  if (h_next > horizon_) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < env_->mdp.n_actions; ++a)
    best = std::max(best, lcb_value(x_next, a, h_next));
  return best;
}

double StepwiseEstimator::build_target(const Transition& tr) const {
  if (tr.h >= horizon_) return tr.r;
  // Rewards are nonnegative after return normalization, so zero is itself a
  // valid pessimistic value; flooring tightens the bound and keeps one early
  // wide-radius sample from permanently depressing an estimate.
  double next = std::max(0.0, pessimistic_next_value(tr.x_next, tr.h + 1));
  return tr.r + env_->mdp.gamma * next;
}

Eigen::VectorXd StepwiseEstimator::pessimistic_weights(int x, int h) const {
  Eigen::VectorXd best_phi;
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < env_->mdp.n_actions; ++a) {
    double v = lcb_value(x, a, h);
    if (v > best) {
      best = v;
      best_phi = env_->features(x, a, h);
    }
  }
  double n = states_[h - 1].inv_quad_norm(best_phi);
  if (n <= 0.0) return estimates_[h - 1];
  return estimates_[h - 1] - (theta_[h - 1] / n) * states_[h - 1].solve(best_phi);
}

ConfidenceSet StepwiseEstimator::confidence_set(int h) const {
  ConfidenceSet set;
  set.center = estimates_[h - 1];
  set.shape = states_[h - 1].gram();
  set.radius = theta_[h - 1];
  set.delta = delta_;
  return set;
}

void StepwiseEstimator::record(const Transition& tr) {
  Eigen::VectorXd phi = env_->features(tr.x, tr.a, tr.h);
  double target = build_target(tr);
  pending_.emplace_back(phi, target);
  pending_steps_.push_back(tr.h);
  Eigen::VectorXd phi_star =
      env_->features(tr.x, greedy_optimal_[tr.h - 1][tr.x], tr.h);
  double n = states_[tr.h - 1].inv_quad_norm(phi_star);
  rho_sq_[tr.h - 1] += n * n;
}

void StepwiseEstimator::commit_episode() {
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    int h = pending_steps_[i];
    states_[h - 1].update(pending_[i].first, pending_[i].second);
    features_[h - 1].push_back(pending_[i].first);
    targets_[h - 1].push_back(pending_[i].second);
  }
  pending_.clear();
  pending_steps_.clear();
  ++episodes_;
  refresh();
}

void StepwiseEstimator::refresh() {
  for (int h = 1; h <= horizon_; ++h) estimates_[h - 1] = states_[h - 1].weights();
  for (int h = 1; h < horizon_; ++h)
    rho_next_[h - 1] =
        fixed_rho_ >= 0.0 ? fixed_rho_ : std::sqrt(rho_sq_[h]);  // step h+1
  rho_next_[horizon_ - 1] = 0.0;
  theta_ = radius_schedule(episodes_, delta_, dim_, sigma_, lambda_,
                           env_->features.norm_bound,
                           env_->realization.weight_bound, horizon_, rho_next_);
}

// ---------------------------------------------------------------------------
// LinUcbAgent

LinUcbAgent::LinUcbAgent(const EnvModel& env, LinUcbConfig cfg)
    : env_(&env), core_(env, cfg.lambda, cfg.sigma, cfg.delta, cfg.fixed_rho) {
  plan_.assign(env.mdp.horizon, std::vector<int>(env.mdp.n_states, 0));
  RngStream unused(0, "init");
  begin_episode(unused);
}

int LinUcbAgent::select_action(int x, int h) const {
  Eigen::VectorXd scores(env_->mdp.n_actions);
  for (int a = 0; a < env_->mdp.n_actions; ++a) scores(a) = core_.ucb_value(x, a, h);
  return argmax_lowest(scores);
}

void LinUcbAgent::begin_episode(RngStream&) {
  for (int h = 1; h <= env_->mdp.horizon; ++h)
    for (int x = 0; x < env_->mdp.n_states; ++x)
      plan_[h - 1][x] = select_action(x, h);
}

int LinUcbAgent::act(int x, int h, RngStream&) { return plan_[h - 1][x]; }

void LinUcbAgent::observe(const Transition& tr) { core_.record(tr); }

void LinUcbAgent::end_episode() { core_.commit_episode(); }

StochasticPolicy LinUcbAgent::episode_policy() const {
  return make_deterministic_policy(
      env_->mdp.n_actions, [plan = plan_](int x, int h) { return plan[h - 1][x]; });
}

// ---------------------------------------------------------------------------
// LinPsrlAgent

LinPsrlAgent::LinPsrlAgent(const EnvModel& env, LinPsrlConfig cfg)
    : env_(&env),
      cfg_(cfg),
      likelihood_(cfg.sigma),
      core_(env, cfg.sigma * cfg.sigma / cfg.prior_variance, cfg.sigma, cfg.delta,
            cfg.fixed_rho) {
  if (!(cfg.prior_variance > 0.0))
    throw std::invalid_argument("LinPsrlAgent: prior variance must be > 0");
  const int dim = env.features.dim;
  GaussianPosterior prior;
  prior.mean = Eigen::VectorXd::Zero(dim);
  prior.cov = cfg.prior_variance * Eigen::MatrixXd::Identity(dim, dim);
  posteriors_.assign(env.mdp.horizon, prior);
  samples_.assign(env.mdp.horizon, prior.mean);
  plan_.assign(env.mdp.horizon, std::vector<int>(env.mdp.n_states, 0));
}

void LinPsrlAgent::begin_episode(RngStream& rng) {
  for (int h = 1; h <= env_->mdp.horizon; ++h) {
    samples_[h - 1] = sample_gaussian(posteriors_[h - 1], rng);
    for (int x = 0; x < env_->mdp.n_states; ++x) {
      Eigen::VectorXd vals(env_->mdp.n_actions);
      for (int a = 0; a < env_->mdp.n_actions; ++a)
        vals(a) = env_->features(x, a, h).dot(samples_[h - 1]);
      plan_[h - 1][x] = argmax_lowest(vals);
    }
  }
}

int LinPsrlAgent::act(int x, int h, RngStream&) { return plan_[h - 1][x]; }

void LinPsrlAgent::observe(const Transition& tr) { core_.record(tr); }

void LinPsrlAgent::end_episode() {
  core_.commit_episode();
  rebuild_posteriors();
}

void LinPsrlAgent::rebuild_posteriors() {
  for (int h = 1; h <= env_->mdp.horizon; ++h)
    posteriors_[h - 1] =
        blr_posterior(core_.step_features(h), core_.step_targets(h),
                      std::sqrt(cfg_.prior_variance), likelihood_.sigma,
                      env_->features.dim);
}

StochasticPolicy LinPsrlAgent::episode_policy() const {
  return make_deterministic_policy(
      env_->mdp.n_actions, [plan = plan_](int x, int h) { return plan[h - 1][x]; });
}

// ---------------------------------------------------------------------------
// EpsGreedyTabularAgent

EpsGreedyTabularAgent::EpsGreedyTabularAgent(const EnvModel& env,
                                             EpsGreedyTabularConfig cfg)
    : env_(&env), cfg_(cfg) {
  if (cfg.epsilon < 0.0 || cfg.epsilon > 1.0)
    throw std::invalid_argument("EpsGreedyTabularAgent: epsilon must be in [0,1]");
  q_.assign(env.mdp.horizon, Eigen::MatrixXd::Zero(env.mdp.n_states, env.mdp.n_actions));
  counts_ = q_;
}

int EpsGreedyTabularAgent::act(int x, int h, RngStream& rng) {
  return epsilon_greedy_action(q_[h - 1].row(x).transpose(), cfg_.epsilon, rng);
}

void EpsGreedyTabularAgent::observe(const Transition& tr) {
  episode_buf_.push_back(tr);
}

void EpsGreedyTabularAgent::end_episode() {
  // Backward over the episode so late-step estimates feed earlier targets.
  for (auto it = episode_buf_.rbegin(); it != episode_buf_.rend(); ++it) {
    const Transition& tr = *it;
    double cont =
        tr.h >= env_->mdp.horizon ? 0.0 : q_[tr.h].row(tr.x_next).maxCoeff();
    double target = tr.r + env_->mdp.gamma * cont;
    double n = ++counts_[tr.h - 1](tr.x, tr.a);
    q_[tr.h - 1](tr.x, tr.a) += (target - q_[tr.h - 1](tr.x, tr.a)) / n;
  }
  episode_buf_.clear();
}

StochasticPolicy EpsGreedyTabularAgent::episode_policy() const {
  const int n_actions = env_->mdp.n_actions;
  std::vector<std::vector<int>> greedy(env_->mdp.horizon,
                                       std::vector<int>(env_->mdp.n_states, 0));
  for (int h = 1; h <= env_->mdp.horizon; ++h)
    for (int x = 0; x < env_->mdp.n_states; ++x)
      greedy[h - 1][x] = argmax_lowest(q_[h - 1].row(x).transpose());
  StochasticPolicy p;
  p.probs = [greedy = std::move(greedy), n_actions, eps = cfg_.epsilon](int x, int h) {
    Eigen::VectorXd probs = Eigen::VectorXd::Constant(n_actions, eps / n_actions);
    probs(greedy[h - 1][x]) += 1.0 - eps;
    return probs;
  };
  return p;
}

// ---------------------------------------------------------------------------
// BoltzmannTabularAgent

BoltzmannTabularAgent::BoltzmannTabularAgent(const EnvModel& env, double temperature)
    : env_(&env), temperature_(temperature) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("BoltzmannTabularAgent: temperature must be > 0");
  q_.assign(env.mdp.horizon, Eigen::MatrixXd::Zero(env.mdp.n_states, env.mdp.n_actions));
  counts_ = q_;
}

int BoltzmannTabularAgent::act(int x, int h, RngStream& rng) {
  return boltzmann_action(q_[h - 1].row(x).transpose(), temperature_, rng);
}

void BoltzmannTabularAgent::observe(const Transition& tr) {
  episode_buf_.push_back(tr);
}

void BoltzmannTabularAgent::end_episode() {
  for (auto it = episode_buf_.rbegin(); it != episode_buf_.rend(); ++it) {
    const Transition& tr = *it;
    double cont =
        tr.h >= env_->mdp.horizon ? 0.0 : q_[tr.h].row(tr.x_next).maxCoeff();
    double target = tr.r + env_->mdp.gamma * cont;
    double n = ++counts_[tr.h - 1](tr.x, tr.a);
    q_[tr.h - 1](tr.x, tr.a) += (target - q_[tr.h - 1](tr.x, tr.a)) / n;
  }
  episode_buf_.clear();
}

StochasticPolicy BoltzmannTabularAgent::episode_policy() const {
  std::vector<Eigen::MatrixXd> q = q_;
  double temperature = temperature_;
  StochasticPolicy p;
  p.probs = [q = std::move(q), temperature](int x, int h) {
    return softmax_probabilities(q[h - 1].row(x).transpose(), temperature);
  };
  return p;
}

// ---------------------------------------------------------------------------
// Oracle / uniform reference agents

OracleAgent::OracleAgent(const EnvModel& env)
    : env_(&env), solution_(optimal_q(env.mdp)) {}

int OracleAgent::act(int x, int h, RngStream&) { return solution_.greedy[h - 1][x]; }

StochasticPolicy OracleAgent::episode_policy() const {
  return make_deterministic_policy(
      env_->mdp.n_actions,
      [greedy = solution_.greedy](int x, int h) { return greedy[h - 1][x]; });
}

int UniformRandomAgent::act(int, int, RngStream& rng) {
  return rng.next_int(n_actions_);
}

}  // namespace linrl
