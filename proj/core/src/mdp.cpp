#include "linrl/mdp.hpp"

#include <cmath>
#include <stdexcept>

namespace linrl {

namespace {

int sample_categorical(const Eigen::VectorXd& probs, RngStream& rng) {
  double u = rng.next_double();
  double acc = 0.0;
  for (int i = 0; i < probs.size(); ++i) {
    acc += probs(i);
    if (u < acc) return i;
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

int EpisodicMdp::sample_initial(RngStream& rng) const {
  return sample_categorical(initial_dist, rng);
}

int EpisodicMdp::sample_next(int x, int a, int h, RngStream& rng) const {
  return sample_categorical(transition[h - 1].row(x * n_actions + a), rng);
}

double EpisodicMdp::sample_reward_given_next(int x, int a, int h, int x_next,
                                             RngStream& rng) const {
  double noise = noise_bound > 0.0 ? noise_bound * (2.0 * rng.next_double() - 1.0) : 0.0;
  double base = arrival_reward ? arrival_reward(x, a, h, x_next) : reward_mean[h - 1](x, a);
  return base + noise;
}

void EpisodicMdp::validate() const {
  if (n_states < 1 || n_actions < 1 || horizon < 1)
    throw std::invalid_argument("EpisodicMdp: empty state/action space or horizon");
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("EpisodicMdp: gamma must be in [0,1]");
  if (static_cast<int>(transition.size()) != horizon ||
      static_cast<int>(reward_mean.size()) != horizon)
    throw std::invalid_argument("EpisodicMdp: tables do not match horizon");
  for (int h = 1; h <= horizon; ++h) {
    const auto& P = transition[h - 1];
    if (P.rows() != n_states * n_actions || P.cols() != n_states)
      throw std::invalid_argument("EpisodicMdp: transition shape mismatch");
    for (int r = 0; r < P.rows(); ++r) {
      if (std::abs(P.row(r).sum() - 1.0) > 1e-12)
        throw std::invalid_argument("EpisodicMdp: transition row does not sum to 1");
      if ((P.row(r).array() < -1e-15).any())
        throw std::invalid_argument("EpisodicMdp: negative transition probability");
    }
  }
  if (std::abs(initial_dist.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("EpisodicMdp: initial distribution does not sum to 1");
}

int argmax_lowest(const Eigen::VectorXd& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i)
    if (values(i) > values(best)) best = i;
  return best;
}

OptimalSolution optimal_q(const EpisodicMdp& mdp) {
  OptimalSolution sol;
  sol.q.resize(mdp.horizon);
  sol.v.resize(mdp.horizon);
  sol.greedy.resize(mdp.horizon);
  Eigen::VectorXd v_next = Eigen::VectorXd::Zero(mdp.n_states);
  for (int h = mdp.horizon; h >= 1; --h) {
    Eigen::MatrixXd q(mdp.n_states, mdp.n_actions);
    for (int x = 0; x < mdp.n_states; ++x)
      for (int a = 0; a < mdp.n_actions; ++a) {
        double cont =
            h == mdp.horizon ? 0.0 : mdp.transition[h - 1].row(x * mdp.n_actions + a).dot(v_next);
        q(x, a) = mdp.reward_mean[h - 1](x, a) + mdp.gamma * cont;
      }
    sol.q[h - 1] = q;
    sol.v[h - 1].resize(mdp.n_states);
    sol.greedy[h - 1].resize(mdp.n_states);
    for (int x = 0; x < mdp.n_states; ++x) {
      int a = argmax_lowest(q.row(x).transpose());
      sol.greedy[h - 1][x] = a;
      sol.v[h - 1](x) = q(x, a);
    }
    v_next = sol.v[h - 1];
  }
  return sol;
}

StochasticPolicy make_deterministic_policy(int n_actions,
                                           std::function<int(int, int)> action) {
  StochasticPolicy p;
  p.probs = [n_actions, action = std::move(action)](int x, int h) {
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(n_actions);
    probs(action(x, h)) = 1.0;
    return probs;
  };
  return p;
}

StochasticPolicy make_uniform_policy(int n_actions) {
  StochasticPolicy p;
  p.probs = [n_actions](int, int) {
    return Eigen::VectorXd::Constant(n_actions, 1.0 / n_actions);
  };
  return p;
}

double policy_value(const EpisodicMdp& mdp, const StochasticPolicy& policy) {
  Eigen::VectorXd v_next = Eigen::VectorXd::Zero(mdp.n_states);
  for (int h = mdp.horizon; h >= 1; --h) {
    Eigen::VectorXd v(mdp.n_states);
    for (int x = 0; x < mdp.n_states; ++x) {
      Eigen::VectorXd probs = policy.probs(x, h);
      double val = 0.0;
      for (int a = 0; a < mdp.n_actions; ++a) {
        if (probs(a) == 0.0) continue;
        double cont =
            h == mdp.horizon ? 0.0 : mdp.transition[h - 1].row(x * mdp.n_actions + a).dot(v_next);
        val += probs(a) * (mdp.reward_mean[h - 1](x, a) + mdp.gamma * cont);
      }
      v(x) = val;
    }
    v_next = v;
  }
  return mdp.initial_dist.dot(v_next);
}

}  // namespace linrl
