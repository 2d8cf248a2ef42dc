#pragma once

#include <memory>
#include <string>
#include <vector>

#include "linrl/agents.hpp"
#include "linrl/envs.hpp"

namespace linrl {

/// One experiment: an environment spec, an agent spec, an episode budget and
/// the seeds to repeat it under. The env and agent specs are JSON documents
/// (see README for the schema); top-level delta/lambda/sigma keys override the
/// matching agent parameters.
struct RunConfig {
  std::string env_json;
  std::string agent_json;
  int episodes = 1;
  std::vector<std::uint64_t> seeds;
  std::string output_path;  // file prefix; empty disables artifacts
  int threads = 1;
};

RunConfig parse_run_config(const std::string& json_text);

/// Instantiate the agent named in an agent spec against a concrete
/// environment. Kinds: linucb, linpsrl, epsgreedy, boltzmann, bdqn, bdqn-eps,
/// oracle, uniform.
std::unique_ptr<Agent> make_agent(const std::string& agent_json, const EnvModel& env);

/// Per-episode pseudo-regret V*(start) - V^{pi_t}(start) and its running sum,
/// with wall-clock per episode. Cumulative entries are exact prefix sums.
struct RegretLedger {
  std::vector<double> per_episode;
  std::vector<double> cumulative;
  std::vector<double> wall_ms;

  void append(double regret, double wall);
  int episodes() const { return static_cast<int>(per_episode.size()); }
  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

struct RunResult {
  std::uint64_t seed = 0;
  RegretLedger ledger;
  std::string table_file;
  std::string meta_file;
};

/// Run the configured experiment once per seed (concurrently when
/// threads > 1); each episode evaluates the agent's deployed policy exactly
/// against the oracle before the rollout updates the agent. Writes one table
/// and one metadata document per seed when an output path is set.
std::vector<RunResult> run_experiment(const RunConfig& config);

/// Single-seed convenience used by tests.
RunResult run_single(const RunConfig& config, std::uint64_t seed);

/// Tab-separated episode table plus a JSON metadata sidecar (config hash,
/// seed, library version). Fixed column order, '.' decimals, newline rows;
/// every byte except wall_ms is determined by (config, seed). Returns the
/// table path.
std::string emit_outputs(const RegretLedger& ledger, const std::string& path,
                         const std::string& meta_json);
RegretLedger parse_ledger_file(const std::string& path);

std::uint64_t config_hash(const RunConfig& config, std::uint64_t seed);

/// Least-squares fit of log cumulative regret against log episode index over
/// the second half of the run: cumulative ~ c * t^alpha.
struct SublinearityFit {
  double alpha = 0.0;
  double r_squared = 0.0;
  bool zero_regret = false;
  int points = 0;
};
SublinearityFit sublinearity_diagnostic(const RegretLedger& ledger);

/// Mean and standard error of the final cumulative regret across environments
/// drawn from a prior spec. Prior kinds: "randomTabular" (fresh seeded draw
/// per index) and "fixed" (degenerate, always the wrapped environment spec).
/// Draw m runs under config seed m modulo the seed list.
struct BayesRegretEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> draws;
};
BayesRegretEstimate estimate_bayes_regret(const std::string& prior_json, int n_draws,
                                          const RunConfig& config);

}  // namespace linrl
