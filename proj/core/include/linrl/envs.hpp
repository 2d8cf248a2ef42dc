#pragma once

#include <string>
#include <vector>

#include "linrl/mdp.hpp"

namespace linrl {

/// Rectangular maze layout. Rows are strings over {'S','G','#','.'} with
/// exactly one start and one goal; '#' cells are walls.
struct GridSpec {
  std::vector<std::string> rows;
};

/// Deterministic episodic maze. Actions are up/down/left/right (0..3); moves
/// into walls or off the grid stay in place. Entering the goal pays reward 1,
/// every other step pays 0, and the goal absorbs. The horizon is the
/// shortest-path length from start to goal, so the optimal return is exactly 1.
/// Features are one-hot over (cell, action).
EnvModel make_maze_mdp(const GridSpec& grid);

/// Left/right chain of n states starting at the left end. Action 0 moves left,
/// action 1 right; each move succeeds with probability 1 - slip_prob and stays
/// put otherwise. Taking left at the leftmost state pays a small per-step
/// reward; arriving at the rightmost state pays 1 and the state absorbs.
/// Rewards are rescaled at construction so the best expected return from any
/// start state is at most 1.
EnvModel make_chain_mdp(int n, int horizon, double slip_prob,
                        double noise_bound = 0.0);

/// Seeded random tabular MDP with one-hot features and rewards rescaled so the
/// optimal return is at most 1. With deterministic_transitions the next state
/// is a fixed function of (x, a, h), which keeps the regression noise equal to
/// the reward noise alone.
EnvModel make_random_tabular_mdp(int n_states, int n_actions, int horizon,
                                 double noise_bound, std::uint64_t seed,
                                 bool deterministic_transitions = false,
                                 double gamma = 1.0);

/// One-hot realization of the optimal Q tables for `mdp`; requires the paired
/// one-hot layout of tabular_one_hot.
LinearQRealization exact_one_hot_realization(const EpisodicMdp& mdp);

/// Environment specs as a JSON document. Keys: kind ("chain"|"maze"|"random"),
/// n, nActions, H, slipProb, grid (array of row strings), noiseBound, seed,
/// deterministic, gamma. Missing optional keys take the documented defaults.
EnvModel parse_env_config(const std::string& json_text);

/// Maze dynamics with the reward moved to `goal_cell` and a caller-chosen
/// horizon; used to build candidate Q functions over the same grid.
EpisodicMdp maze_mdp_with_goal(const GridSpec& grid, int goal_cell, int horizon);

/// Breadth-first shortest-path distances over the maze grid from `from_cell`
/// (free-cell index); unreachable cells get -1. Exposed for hypothesis-set
/// construction and tests.
std::vector<int> maze_distances(const GridSpec& grid, int from_cell);
struct MazeLayout {
  int n_cells = 0;
  int start_cell = -1;
  int goal_cell = -1;
  std::vector<std::pair<int, int>> cell_coords;  // (row, col) per free cell
  std::vector<std::vector<int>> next_cell;       // [cell][action] -> cell
};
MazeLayout parse_grid(const GridSpec& grid);

}  // namespace linrl
