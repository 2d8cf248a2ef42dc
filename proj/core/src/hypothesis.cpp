#include "linrl/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linrl {

namespace {
constexpr double kResidualTol = 1e-9;
}

HypothesisSetPsrl::HypothesisSetPsrl(std::vector<QHypothesis> hypotheses)
    : hypotheses_(std::move(hypotheses)) {
  if (hypotheses_.empty())
    throw std::invalid_argument("HypothesisSetPsrl: empty hypothesis set");
  mass_.assign(hypotheses_.size(), 1.0 / hypotheses_.size());
}

int HypothesisSetPsrl::draw(RngStream& rng) const {
  double u = rng.next_double();
  double acc = 0.0;
  for (std::size_t k = 0; k < mass_.size(); ++k) {
    acc += mass_[k];
    if (u < acc) return static_cast<int>(k);
  }
  return static_cast<int>(mass_.size()) - 1;
}

void HypothesisSetPsrl::eliminate_inconsistent(
    const std::vector<Transition>& trajectory, double gamma, int horizon) {
  for (std::size_t k = 0; k < hypotheses_.size(); ++k) {
    if (mass_[k] == 0.0) continue;
    for (const Transition& tr : trajectory) {
      double cont = tr.h >= horizon
                        ? 0.0
                        : hypotheses_[k].q[tr.h].row(tr.x_next).maxCoeff();
      double residual = hypotheses_[k].q[tr.h - 1](tr.x, tr.a) - (tr.r + gamma * cont);
      if (std::abs(residual) > kResidualTol) {
        mass_[k] = 0.0;
        break;
      }
    }
  }
  double total = 0.0;
  for (double m : mass_) total += m;
  if (total <= 0.0)
    throw std::runtime_error("HypothesisSetPsrl: every hypothesis eliminated");
  for (double& m : mass_) m /= total;
}

HypothesisEpisodeResult hypothesis_psrl_episode(HypothesisSetPsrl& agent,
                                                const EnvModel& env,
                                                RngStream& rng) {
  const EpisodicMdp& mdp = env.mdp;
  HypothesisEpisodeResult result;
  result.drawn = agent.draw(rng);
  const QHypothesis& chosen = agent.hypothesis(result.drawn);

  std::vector<Transition> trajectory;
  int x = mdp.sample_initial(rng);
  for (int h = 1; h <= mdp.horizon; ++h) {
    int a = argmax_lowest(chosen.q[h - 1].row(x).transpose());
    int x_next = mdp.sample_next(x, a, h, rng);
    double r = mdp.sample_reward_given_next(x, a, h, x_next, rng);
    trajectory.push_back({x, a, r, x_next, h,
                          h == mdp.horizon || mdp.absorbing[x_next]});
    result.episode_return += r;
    x = x_next;
  }
  agent.eliminate_inconsistent(trajectory, mdp.gamma, mdp.horizon);
  result.mass = agent.mass();
  return result;
}

std::vector<QHypothesis> maze_goal_hypotheses(const GridSpec& grid, int count,
                                              RngStream& rng, int* true_index) {
  MazeLayout layout = parse_grid(grid);
  std::vector<int> dist = maze_distances(grid, layout.start_cell);
  if (dist[layout.goal_cell] < 0)
    throw std::invalid_argument("maze hypotheses: goal unreachable");
  const int horizon = dist[layout.goal_cell];

  std::vector<int> candidates;
  for (int c = 0; c < layout.n_cells; ++c)
    if (c != layout.goal_cell && c != layout.start_cell && dist[c] >= 1 &&
        dist[c] <= horizon)
      candidates.push_back(c);
  if (static_cast<int>(candidates.size()) < count - 1)
    throw std::invalid_argument("maze hypotheses: grid too small for requested count");

  // Fisher-Yates with the caller's stream, then keep the first count-1.
  for (int i = static_cast<int>(candidates.size()) - 1; i > 0; --i)
    std::swap(candidates[i], candidates[rng.next_int(i + 1)]);
  candidates.resize(count - 1);

  std::vector<int> goals = candidates;
  goals.insert(goals.begin() + rng.next_int(count), layout.goal_cell);

  std::vector<QHypothesis> set;
  set.reserve(count);
  for (int goal : goals) {
    QHypothesis hyp;
    hyp.q = optimal_q(maze_mdp_with_goal(grid, goal, horizon)).q;
    set.push_back(std::move(hyp));
    if (goal == layout.goal_cell && true_index) *true_index = static_cast<int>(set.size()) - 1;
  }
  return set;
}

}  // namespace linrl
