#pragma once

#include <Eigen/Core>
#include <vector>

#include "linrl/agents.hpp"
#include "linrl/envs.hpp"

namespace linrl {

/// Candidate optimal Q function: one table per step.
struct QHypothesis {
  std::vector<Eigen::MatrixXd> q;  // q[h-1] is n_states x n_actions
};

/// Posterior sampling over a finite set of candidate Q functions containing
/// the truth. Drawing is proportional to the mass vector; hypotheses whose
/// predictions are contradicted by a deterministic observation drop to mass
/// zero and stay there.
class HypothesisSetPsrl {
 public:
  explicit HypothesisSetPsrl(std::vector<QHypothesis> hypotheses);

  int draw(RngStream& rng) const;
  int size() const { return static_cast<int>(hypotheses_.size()); }
  const std::vector<double>& mass() const { return mass_; }
  const QHypothesis& hypothesis(int k) const { return hypotheses_[k]; }

  /// Zero the mass of every hypothesis with a nonzero Bellman residual along
  /// the observed trajectory, then renormalize. Throws if nothing survives.
  void eliminate_inconsistent(const std::vector<Transition>& trajectory,
                              double gamma, int horizon);

 private:
  std::vector<QHypothesis> hypotheses_;
  std::vector<double> mass_;
};

struct HypothesisEpisodeResult {
  int drawn = -1;
  double episode_return = 0.0;
  std::vector<double> mass;
};

/// One episode of hypothesis-set posterior sampling on a deterministic
/// environment: draw a candidate proportional to mass, follow its greedy
/// policy, eliminate every candidate the observed trajectory contradicts.
HypothesisEpisodeResult hypothesis_psrl_episode(HypothesisSetPsrl& agent,
                                                const EnvModel& env,
                                                RngStream& rng);

/// Candidate set for a maze: the true Q function plus count-1 impostors whose
/// reward sits at other cells reachable from the start within the horizon.
/// Every impostor claims a full return, so each one is refuted the first time
/// it is followed. Order is shuffled by the stream; the truth's position is
/// returned via true_index.
std::vector<QHypothesis> maze_goal_hypotheses(const GridSpec& grid, int count,
                                              RngStream& rng, int* true_index);

}  // namespace linrl
