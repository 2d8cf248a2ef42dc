#include "linrl/envs.hpp"

#include <json.hpp>

#include <deque>
#include <stdexcept>

namespace linrl {

namespace {

constexpr int kMazeActions = 4;  // up, down, left, right
constexpr int kDr[kMazeActions] = {-1, 1, 0, 0};
constexpr int kDc[kMazeActions] = {0, 0, -1, 1};

// Scale all rewards so the best expected return from any start state is <= 1.
void normalize_returns(EpisodicMdp& mdp) {
  OptimalSolution sol = optimal_q(mdp);
  double max_start = sol.v[0].maxCoeff();
  if (max_start <= 1.0) return;
  const double scale = 1.0 / max_start;
  for (auto& r : mdp.reward_mean) r *= scale;
  if (mdp.arrival_reward) {
    auto inner = mdp.arrival_reward;
    mdp.arrival_reward = [inner, scale](int x, int a, int h, int xn) {
      return scale * inner(x, a, h, xn);
    };
  }
}

EnvModel finish_one_hot_env(EpisodicMdp mdp) {
  mdp.validate();
  EnvModel env;
  env.features = tabular_one_hot(mdp.n_states, mdp.n_actions, mdp.horizon);
  env.realization = exact_one_hot_realization(mdp);
  env.mdp = std::move(mdp);
  return env;
}

}  // namespace

LinearQRealization exact_one_hot_realization(const EpisodicMdp& mdp) {
  OptimalSolution sol = optimal_q(mdp);
  LinearQRealization real;
  real.weights.resize(mdp.horizon);
  for (int h = 1; h <= mdp.horizon; ++h) {
    Eigen::VectorXd w(mdp.n_states * mdp.n_actions);
    for (int x = 0; x < mdp.n_states; ++x)
      for (int a = 0; a < mdp.n_actions; ++a) w(x * mdp.n_actions + a) = sol.q[h - 1](x, a);
    real.weights[h - 1] = w;
    real.weight_bound = std::max(real.weight_bound, w.norm());
  }
  return real;
}

MazeLayout parse_grid(const GridSpec& grid) {
  if (grid.rows.empty()) throw std::invalid_argument("maze: empty grid");
  const int n_rows = static_cast<int>(grid.rows.size());
  const int n_cols = static_cast<int>(grid.rows[0].size());
  for (const auto& row : grid.rows)
    if (static_cast<int>(row.size()) != n_cols)
      throw std::invalid_argument("maze: ragged grid rows");

  MazeLayout layout;
  std::vector<std::vector<int>> cell_index(n_rows, std::vector<int>(n_cols, -1));
  int n_start = 0, n_goal = 0;
  for (int r = 0; r < n_rows; ++r)
    for (int c = 0; c < n_cols; ++c) {
      char ch = grid.rows[r][c];
      if (ch == '#') continue;
      if (ch != '.' && ch != 'S' && ch != 'G')
        throw std::invalid_argument("maze: unknown cell character");
      cell_index[r][c] = layout.n_cells;
      layout.cell_coords.emplace_back(r, c);
      if (ch == 'S') {
        layout.start_cell = layout.n_cells;
        ++n_start;
      }
      if (ch == 'G') {
        layout.goal_cell = layout.n_cells;
        ++n_goal;
      }
      ++layout.n_cells;
    }
  if (n_start != 1 || n_goal != 1)
    throw std::invalid_argument("maze: need exactly one start and one goal");
  if (layout.start_cell == layout.goal_cell)
    throw std::invalid_argument("maze: start and goal coincide");

  layout.next_cell.assign(layout.n_cells, std::vector<int>(kMazeActions, 0));
  for (int cell = 0; cell < layout.n_cells; ++cell) {
    auto [r, c] = layout.cell_coords[cell];
    for (int a = 0; a < kMazeActions; ++a) {
      int nr = r + kDr[a], nc = c + kDc[a];
      bool blocked = nr < 0 || nr >= n_rows || nc < 0 || nc >= n_cols ||
                     cell_index[nr][nc] < 0;
      layout.next_cell[cell][a] = blocked ? cell : cell_index[nr][nc];
    }
  }
  return layout;
}

std::vector<int> maze_distances(const GridSpec& grid, int from_cell) {
  MazeLayout layout = parse_grid(grid);
  std::vector<int> dist(layout.n_cells, -1);
  std::deque<int> queue{from_cell};
  dist[from_cell] = 0;
  while (!queue.empty()) {
    int cell = queue.front();
    queue.pop_front();
    for (int a = 0; a < kMazeActions; ++a) {
      int next = layout.next_cell[cell][a];
      if (dist[next] < 0) {
        dist[next] = dist[cell] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

EpisodicMdp maze_mdp_with_goal(const GridSpec& grid, int goal_cell, int horizon) {
  MazeLayout layout = parse_grid(grid);
  if (goal_cell < 0 || goal_cell >= layout.n_cells)
    throw std::invalid_argument("maze: goal cell out of range");

  EpisodicMdp mdp;
  mdp.n_states = layout.n_cells;
  mdp.n_actions = kMazeActions;
  mdp.horizon = horizon;
  mdp.gamma = 1.0;
  mdp.noise_bound = 0.0;
  mdp.initial_dist = Eigen::VectorXd::Zero(mdp.n_states);
  mdp.initial_dist(layout.start_cell) = 1.0;
  mdp.absorbing.assign(mdp.n_states, false);
  mdp.absorbing[goal_cell] = true;

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(mdp.n_states * kMazeActions, mdp.n_states);
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(mdp.n_states, kMazeActions);
  for (int x = 0; x < mdp.n_states; ++x)
    for (int a = 0; a < kMazeActions; ++a) {
      int next = x == goal_cell ? goal_cell : layout.next_cell[x][a];
      P(x * kMazeActions + a, next) = 1.0;
      if (x != goal_cell && next == goal_cell) R(x, a) = 1.0;
    }
  mdp.transition.assign(horizon, P);
  mdp.reward_mean.assign(horizon, R);
  return mdp;
}

EnvModel make_maze_mdp(const GridSpec& grid) {
  MazeLayout layout = parse_grid(grid);
  std::vector<int> dist = maze_distances(grid, layout.start_cell);
  if (dist[layout.goal_cell] < 0) throw std::invalid_argument("maze: goal unreachable");
  EpisodicMdp mdp = maze_mdp_with_goal(grid, layout.goal_cell, dist[layout.goal_cell]);
  EnvModel env = finish_one_hot_env(std::move(mdp));
  env.config_json = nlohmann::json{{"kind", "maze"}, {"grid", grid.rows}}.dump();
  return env;
}

EnvModel make_chain_mdp(int n, int horizon, double slip_prob, double noise_bound) {
  if (n < 2) throw std::invalid_argument("chain: need at least 2 states");
  if (horizon < 1) throw std::invalid_argument("chain: horizon must be >= 1");
  if (slip_prob < 0.0 || slip_prob >= 0.5)
    throw std::invalid_argument("chain: slip probability must be in [0, 0.5)");
  if (noise_bound < 0.0) throw std::invalid_argument("chain: negative noise bound");

  constexpr double kLeftReward = 0.01;
  const int goal = n - 1;

  EpisodicMdp mdp;
  mdp.n_states = n;
  mdp.n_actions = 2;  // 0 = left, 1 = right
  mdp.horizon = horizon;
  mdp.gamma = 1.0;
  mdp.noise_bound = noise_bound;
  mdp.initial_dist = Eigen::VectorXd::Zero(n);
  mdp.initial_dist(0) = 1.0;
  mdp.absorbing.assign(n, false);
  mdp.absorbing[goal] = true;

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n * 2, n);
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, 2);
  for (int x = 0; x < n; ++x) {
    if (x == goal) {
      P(x * 2 + 0, goal) = 1.0;
      P(x * 2 + 1, goal) = 1.0;
      continue;
    }
    int left = std::max(0, x - 1);
    P(x * 2 + 0, left) += 1.0 - slip_prob;
    P(x * 2 + 0, x) += slip_prob;
    P(x * 2 + 1, x + 1) += 1.0 - slip_prob;
    P(x * 2 + 1, x) += slip_prob;
    if (x == 0) R(x, 0) = kLeftReward;
    if (x == goal - 1) R(x, 1) = 1.0 - slip_prob;  // pays only on arrival
  }
  mdp.transition.assign(horizon, P);
  mdp.reward_mean.assign(horizon, R);
  mdp.arrival_reward = [goal](int x, int a, int /*h*/, int x_next) -> double {
    if (x == 0 && a == 0) return kLeftReward;
    if (x != goal && x_next == goal) return 1.0;
    return 0.0;
  };
  normalize_returns(mdp);
  EnvModel env = finish_one_hot_env(std::move(mdp));
  env.config_json = nlohmann::json{{"kind", "chain"},
                                   {"n", n},
                                   {"H", horizon},
                                   {"slipProb", slip_prob},
                                   {"noiseBound", noise_bound}}
                        .dump();
  return env;
}

EnvModel make_random_tabular_mdp(int n_states, int n_actions, int horizon,
                                 double noise_bound, std::uint64_t seed,
                                 bool deterministic_transitions, double gamma) {
  if (n_states < 1 || n_actions < 1 || horizon < 1)
    throw std::invalid_argument("random tabular: bad dimensions");
  RngStream rng(seed, "env/random-tabular");

  EpisodicMdp mdp;
  mdp.n_states = n_states;
  mdp.n_actions = n_actions;
  mdp.horizon = horizon;
  mdp.gamma = gamma;
  mdp.noise_bound = noise_bound;
  mdp.initial_dist = Eigen::VectorXd::Zero(n_states);
  mdp.initial_dist(0) = 1.0;
  mdp.absorbing.assign(n_states, false);

  for (int h = 1; h <= horizon; ++h) {
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n_states * n_actions, n_states);
    Eigen::MatrixXd R(n_states, n_actions);
    for (int x = 0; x < n_states; ++x)
      for (int a = 0; a < n_actions; ++a) {
        if (deterministic_transitions) {
          P(x * n_actions + a, rng.next_int(n_states)) = 1.0;
        } else {
          Eigen::VectorXd row(n_states);
          for (int j = 0; j < n_states; ++j) row(j) = -std::log(1.0 - rng.next_double());
          P.row(x * n_actions + a) = row.transpose() / row.sum();
        }
        R(x, a) = rng.next_double();
      }
    mdp.transition.push_back(P);
    mdp.reward_mean.push_back(R);
  }
  normalize_returns(mdp);
  EnvModel env = finish_one_hot_env(std::move(mdp));
  env.config_json = nlohmann::json{{"kind", "random"},
                                   {"n", n_states},
                                   {"nActions", n_actions},
                                   {"H", horizon},
                                   {"noiseBound", noise_bound},
                                   {"seed", seed},
                                   {"deterministic", deterministic_transitions},
                                   {"gamma", gamma}}
                        .dump();
  return env;
}

EnvModel parse_env_config(const std::string& json_text) {
  nlohmann::json cfg = nlohmann::json::parse(json_text);
  const std::string kind = cfg.at("kind").get<std::string>();
  if (kind == "chain") {
    return make_chain_mdp(cfg.at("n").get<int>(), cfg.at("H").get<int>(),
                          cfg.value("slipProb", 0.0), cfg.value("noiseBound", 0.0));
  }
  if (kind == "maze") {
    GridSpec grid;
    grid.rows = cfg.at("grid").get<std::vector<std::string>>();
    return make_maze_mdp(grid);
  }
  if (kind == "random") {
    return make_random_tabular_mdp(
        cfg.at("n").get<int>(), cfg.value("nActions", 2), cfg.at("H").get<int>(),
        cfg.value("noiseBound", 0.0), cfg.value("seed", std::uint64_t{0}),
        cfg.value("deterministic", false), cfg.value("gamma", 1.0));
  }
  throw std::invalid_argument("environment kind must be chain, maze, or random");
}

}  // namespace linrl
