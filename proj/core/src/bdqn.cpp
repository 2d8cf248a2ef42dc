#include "linrl/bdqn.hpp"

#include <stdexcept>

namespace linrl {

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
  data_.reserve(capacity);
}

void ReplayBuffer::push(const Transition& tr) {
  if (size() < capacity_) {
    data_.push_back(tr);
  } else {
    data_[write_] = tr;
  }
  write_ = (write_ + 1) % capacity_;
}

const Transition& ReplayBuffer::sample(RngStream& rng) const {
  if (data_.empty()) throw std::logic_error("ReplayBuffer: sample from empty buffer");
  return data_[rng.next_int(size())];
}

BdqnLiteAgent::BdqnLiteAgent(std::function<Eigen::VectorXd(int)> state_features,
                             int feature_dim, int n_actions, BdqnConfig cfg)
    : features_(std::move(state_features)),
      dim_(feature_dim),
      n_actions_(n_actions),
      cfg_(cfg),
      replay_(cfg.replay_capacity) {
  if (cfg.sample_period < 1 || cfg.posterior_period < 1 || cfg.target_period < 1 ||
      cfg.batch_size < 1)
    throw std::invalid_argument("BdqnLiteAgent: periods and batch size must be >= 1");
  if (!(cfg.sigma_prior > 0.0) || !(cfg.sigma_noise > 0.0))
    throw std::invalid_argument("BdqnLiteAgent: sigma values must be > 0");
  GaussianPosterior prior;
  prior.mean = Eigen::VectorXd::Zero(dim_);
  prior.cov = cfg.sigma_prior * cfg.sigma_prior * Eigen::MatrixXd::Identity(dim_, dim_);
  posteriors_.assign(n_actions_, prior);
  weights_.assign(n_actions_, prior.mean);
  target_weights_.assign(n_actions_, prior.mean);
}

BdqnLiteAgent BdqnLiteAgent::tabular(int n_states, int n_actions, BdqnConfig cfg) {
  return BdqnLiteAgent([n_states](int x) { return state_one_hot(n_states, x); },
                       n_states, n_actions, cfg);
}

int BdqnLiteAgent::greedy_on(const std::vector<Eigen::VectorXd>& weights, int x) const {
  Eigen::VectorXd phi = features_(x);
  Eigen::VectorXd scores(n_actions_);
  for (int a = 0; a < n_actions_; ++a) scores(a) = weights[a].dot(phi);
  return argmax_lowest(scores);
}

void BdqnLiteAgent::rebuild_posteriors(RngStream& rng) {
  ++rebuilds_;
  std::vector<std::vector<Eigen::VectorXd>> feats(n_actions_);
  std::vector<std::vector<double>> responses(n_actions_);
  for (int b = 0; b < cfg_.batch_size && replay_.size() > 0; ++b) {
    const Transition& tr = replay_.sample(rng);
    double y = tr.r;
    if (!tr.terminal) {
      int best = greedy_on(weights_, tr.x_next);
      y += cfg_.gamma * target_weights_[best].dot(features_(tr.x_next));
    }
    feats[tr.a].push_back(features_(tr.x));
    responses[tr.a].push_back(y);
  }
  for (int a = 0; a < n_actions_; ++a) {
    posteriors_[a] =
        blr_posterior(feats[a], responses[a], cfg_.sigma_prior, cfg_.sigma_noise, dim_);
    target_weights_[a] = posteriors_[a].mean;
  }
  if (cfg_.mode == ExplorationMode::kEpsilonGreedy)
    for (int a = 0; a < n_actions_; ++a) weights_[a] = posteriors_[a].mean;
}

void BdqnLiteAgent::draw_weights(RngStream& rng) {
  ++samples_;
  for (int a = 0; a < n_actions_; ++a) {
    GaussianPosterior centered{target_weights_[a], posteriors_[a].cov};
    weights_[a] = sample_gaussian(centered, rng);
  }
}

int BdqnLiteAgent::act(int x, int /*h*/, RngStream& rng) {
  ++steps_;
  if (steps_ % cfg_.posterior_period == 0) rebuild_posteriors(rng);
  if (cfg_.mode == ExplorationMode::kThompson && steps_ % cfg_.sample_period == 0)
    draw_weights(rng);
  if (steps_ % cfg_.target_period == 0) ++target_syncs_;  // feature-sync hook

  if (cfg_.mode == ExplorationMode::kEpsilonGreedy) {
    Eigen::VectorXd phi = features_(x);
    Eigen::VectorXd scores(n_actions_);
    for (int a = 0; a < n_actions_; ++a) scores(a) = weights_[a].dot(phi);
    return epsilon_greedy_action(scores, cfg_.epsilon, rng);
  }
  return greedy_on(weights_, x);
}

void BdqnLiteAgent::observe(const Transition& tr) { replay_.push(tr); }

namespace {

// Snapshot policy: greedy on the given weights, optionally epsilon-mixed.
// Self-contained so the policy stays valid independent of the agent.
StochasticPolicy weight_greedy_policy(std::function<Eigen::VectorXd(int)> features,
                                      std::vector<Eigen::VectorXd> weights,
                                      int n_actions, double epsilon) {
  StochasticPolicy p;
  p.probs = [features = std::move(features), weights = std::move(weights),
             n_actions, epsilon](int x, int) {
    Eigen::VectorXd phi = features(x);
    Eigen::VectorXd scores(n_actions);
    for (int a = 0; a < n_actions; ++a) scores(a) = weights[a].dot(phi);
    Eigen::VectorXd probs = Eigen::VectorXd::Constant(n_actions, epsilon / n_actions);
    probs(argmax_lowest(scores)) += 1.0 - epsilon;
    return probs;
  };
  return p;
}

}  // namespace

StochasticPolicy BdqnLiteAgent::episode_policy() const {
  double epsilon = cfg_.mode == ExplorationMode::kEpsilonGreedy ? cfg_.epsilon : 0.0;
  return weight_greedy_policy(features_, weights_, n_actions_, epsilon);
}

StochasticPolicy BdqnLiteAgent::mean_greedy_policy() const {
  std::vector<Eigen::VectorXd> means(n_actions_);
  for (int a = 0; a < n_actions_; ++a) means[a] = posteriors_[a].mean;
  return weight_greedy_policy(features_, std::move(means), n_actions_, 0.0);
}

}  // namespace linrl
