#include "linrl/harness.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "linrl/bdqn.hpp"
#include "linrl/version.hpp"

namespace linrl {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json cfg = json::parse(json_text);
  RunConfig out;
  out.env_json = cfg.at("environment").dump();
  json agent = cfg.at("agent");
  // Top-level overrides reach the agent regardless of its own spec.
  for (const char* key : {"delta", "lambda", "sigma"})
    if (cfg.contains(key)) agent[key] = cfg.at(key);
  out.agent_json = agent.dump();
  out.episodes = cfg.at("episodes").get<int>();
  if (out.episodes < 1) throw std::invalid_argument("run config: episodes must be >= 1");
  out.seeds = cfg.at("seeds").get<std::vector<std::uint64_t>>();
  if (out.seeds.empty()) throw std::invalid_argument("run config: need at least one seed");
  out.output_path = cfg.value("output", "");
  out.threads = cfg.value("threads", 1);
  return out;
}

std::unique_ptr<Agent> make_agent(const std::string& agent_json, const EnvModel& env) {
  json spec = json::parse(agent_json);
  const std::string kind = spec.at("kind").get<std::string>();
  const double env_sigma = std::max(env.mdp.noise_bound, 1e-3);

  if (kind == "linucb") {
    LinUcbConfig cfg;
    cfg.delta = spec.value("delta", 0.1);
    cfg.lambda = spec.value("lambda", 1.0);
    cfg.sigma = spec.value("sigma", env_sigma);
    if (spec.contains("rho") && spec["rho"].is_number())
      cfg.fixed_rho = spec["rho"].get<double>();
    return std::make_unique<LinUcbAgent>(env, cfg);
  }
  if (kind == "linpsrl") {
    LinPsrlConfig cfg;
    cfg.prior_variance = spec.value("lambda", 1.0);
    cfg.sigma = spec.value("sigma", env_sigma);
    cfg.delta = spec.value("delta", 0.1);
    if (spec.contains("rho") && spec["rho"].is_number())
      cfg.fixed_rho = spec["rho"].get<double>();
    return std::make_unique<LinPsrlAgent>(env, cfg);
  }
  if (kind == "epsgreedy") {
    EpsGreedyTabularConfig cfg;
    cfg.epsilon = spec.value("epsilon", 0.1);
    return std::make_unique<EpsGreedyTabularAgent>(env, cfg);
  }
  if (kind == "boltzmann") {
    return std::make_unique<BoltzmannTabularAgent>(env,
                                                   spec.value("temperature", 1.0));
  }
  if (kind == "bdqn" || kind == "bdqn-eps") {
    BdqnConfig cfg;
    cfg.sample_period = spec.value("samplePeriod", 10);
    cfg.posterior_period = spec.value("posteriorPeriod", 1000);
    cfg.target_period = spec.value("targetPeriod", 100);
    cfg.batch_size = spec.value("batchSize", 1000);
    cfg.replay_capacity = spec.value("replayCapacity", 100000);
    cfg.sigma_prior = spec.value("sigma", 0.001);
    cfg.sigma_noise = spec.value("sigmaEps", 1.0);
    cfg.gamma = env.mdp.gamma;
    cfg.epsilon = spec.value("epsilon", 0.1);
    cfg.mode = kind == "bdqn" ? ExplorationMode::kThompson
                              : ExplorationMode::kEpsilonGreedy;
    return std::make_unique<BdqnLiteAgent>(BdqnLiteAgent::tabular(
        env.mdp.n_states, env.mdp.n_actions, cfg));
  }
  if (kind == "oracle") return std::make_unique<OracleAgent>(env);
  if (kind == "uniform") return std::make_unique<UniformRandomAgent>(env);
  throw std::invalid_argument("unknown agent kind: " + kind);
}

void RegretLedger::append(double regret, double wall) {
  per_episode.push_back(regret);
  cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + regret);
  wall_ms.push_back(wall);
}

std::uint64_t config_hash(const RunConfig& config, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, config.env_json);
  h = fnv1a(h, config.agent_json);
  h = fnv1a(h, std::to_string(config.episodes));
  h = fnv1a(h, std::to_string(seed));
  return h;
}

RunResult run_single(const RunConfig& config, std::uint64_t seed) {
  EnvModel env = parse_env_config(config.env_json);
  std::unique_ptr<Agent> agent = make_agent(config.agent_json, env);
  const double v_star = optimal_q(env.mdp).initial_value(env.mdp);

  RngStream master(seed, "run");
  RngStream env_rng = master.substream("env");
  RngStream agent_rng = master.substream("agent");

  RunResult result;
  result.seed = seed;
  for (int t = 1; t <= config.episodes; ++t) {
    auto started = std::chrono::steady_clock::now();
    agent->begin_episode(agent_rng);
    const double value = policy_value(env.mdp, agent->episode_policy());

    int x = env.mdp.sample_initial(env_rng);
    for (int h = 1; h <= env.mdp.horizon; ++h) {
      int a = agent->act(x, h, agent_rng);
      int x_next = env.mdp.sample_next(x, a, h, env_rng);
      double r = env.mdp.sample_reward_given_next(x, a, h, x_next, env_rng);
      agent->observe({x, a, r, x_next, h,
                      h == env.mdp.horizon || env.mdp.absorbing[x_next]});
      x = x_next;
    }
    agent->end_episode();

    double wall = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    result.ledger.append(v_star - value, wall);
  }

  if (!config.output_path.empty()) {
    json meta;
    meta["configHash"] = config_hash(config, seed);
    meta["seed"] = seed;
    meta["libraryVersion"] = kVersion;
    meta["episodes"] = config.episodes;
    std::string path = config.output_path + ".seed" + std::to_string(seed);
    result.table_file = emit_outputs(result.ledger, path, meta.dump(2));
    result.meta_file = path + ".meta.json";
  }
  return result;
}

std::vector<RunResult> run_experiment(const RunConfig& config) {
  std::vector<RunResult> results(config.seeds.size());
  int threads = config.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(config.seeds.size())));

  if (threads == 1) {
    for (std::size_t i = 0; i < config.seeds.size(); ++i)
      results[i] = run_single(config, config.seeds[i]);
    return results;
  }
  std::vector<std::thread> pool;
  std::size_t next = 0;
  std::mutex mu;
  std::exception_ptr failure;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= config.seeds.size() || failure) return;
          i = next++;
        }
        try {
          results[i] = run_single(config, config.seeds[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::string emit_outputs(const RegretLedger& ledger, const std::string& path,
                         const std::string& meta_json) {
  const std::string table_path = path + ".tsv";
  auto parent = std::filesystem::path(table_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream table(table_path);
  if (!table) throw std::runtime_error("emit_outputs: cannot write " + table_path);
  table << "episode\tregret\tcumulative\twall_ms\n";
  for (int i = 0; i < ledger.episodes(); ++i)
    table << (i + 1) << '\t' << format_double(ledger.per_episode[i]) << '\t'
          << format_double(ledger.cumulative[i]) << '\t'
          << format_double(ledger.wall_ms[i]) << '\n';
  table.close();

  std::ofstream meta(path + ".meta.json");
  if (!meta) throw std::runtime_error("emit_outputs: cannot write metadata");
  meta << meta_json << '\n';
  return table_path;
}

RegretLedger parse_ledger_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_ledger_file: cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != "episode\tregret\tcumulative\twall_ms")
    throw std::runtime_error("parse_ledger_file: bad header");
  RegretLedger ledger;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab = line.find('\t'); tab != std::string::npos;
         start = tab + 1, tab = line.find('\t', start))
      fields.push_back(line.substr(start, tab - start));
    fields.push_back(line.substr(start));
    if (fields.size() != 4)
      throw std::runtime_error("parse_ledger_file: malformed row");
    ledger.per_episode.push_back(std::stod(fields[1]));
    ledger.cumulative.push_back(std::stod(fields[2]));
    ledger.wall_ms.push_back(std::stod(fields[3]));
  }
  return ledger;
}

SublinearityFit sublinearity_diagnostic(const RegretLedger& ledger) {
  const int n = ledger.episodes();
  if (n < 100)
    throw std::invalid_argument("sublinearity_diagnostic: need at least 100 episodes");
  SublinearityFit fit;
  if (ledger.total() <= 0.0) {
    fit.zero_regret = true;
    return fit;
  }
  std::vector<double> xs, ys;
  for (int t = n / 2; t <= n; ++t) {
    double cum = ledger.cumulative[t - 1];
    if (cum <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(t)));
    ys.push_back(std::log(cum));
  }
  fit.points = static_cast<int>(xs.size());
  if (fit.points < 2) {
    fit.zero_regret = true;
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.alpha = sxy / sxx;
  fit.r_squared = syy <= 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

BayesRegretEstimate estimate_bayes_regret(const std::string& prior_json, int n_draws,
                                          const RunConfig& config) {
  if (n_draws < 2)
    throw std::invalid_argument("estimate_bayes_regret: need at least 2 draws");
  json prior = json::parse(prior_json);
  const std::string kind = prior.at("kind").get<std::string>();

  BayesRegretEstimate est;
  for (int m = 0; m < n_draws; ++m) {
    RunConfig draw_cfg = config;
    draw_cfg.output_path.clear();
    if (kind == "randomTabular") {
      json env;
      env["kind"] = "random";
      env["n"] = prior.value("n", 3);
      env["nActions"] = prior.value("nActions", 2);
      env["H"] = prior.value("H", 3);
      env["noiseBound"] = prior.value("noiseBound", 0.0);
      env["deterministic"] = prior.value("deterministic", false);
      env["seed"] = prior.value("baseSeed", std::uint64_t{0}) + m;
      draw_cfg.env_json = env.dump();
    } else if (kind == "fixed") {
      draw_cfg.env_json = prior.at("environment").dump();
    } else {
      throw std::invalid_argument("unknown prior kind: " + kind);
    }
    std::uint64_t seed = config.seeds[m % config.seeds.size()];
    est.draws.push_back(run_single(draw_cfg, seed).ledger.total());
  }

  double mean = 0.0;
  for (double v : est.draws) mean += v;
  mean /= est.draws.size();
  double var = 0.0;
  for (double v : est.draws) var += (v - mean) * (v - mean);
  var /= (est.draws.size() - 1);
  est.mean = mean;
  est.std_error = std::sqrt(var / est.draws.size());
  return est;
}

}  // namespace linrl
