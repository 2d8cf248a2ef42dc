// Command-line harness: run single experiments, sweeps over agents and seeds,
// Bayesian-regret estimates over environment priors, and the lemma
// verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "linrl/harness.hpp"
#include "linrl/verify.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_run_summary(const linrl::RunConfig& config,
                       const std::vector<linrl::RunResult>& results) {
  for (const auto& res : results) {
    std::cout << "seed=" << res.seed << " episodes=" << res.ledger.episodes()
              << " cumulative_regret=" << res.ledger.total();
    if (res.ledger.episodes() >= 100) {
      auto fit = linrl::sublinearity_diagnostic(res.ledger);
      if (fit.zero_regret)
        std::cout << " growth=zero-regret";
      else
        std::cout << " growth_exponent=" << fit.alpha << " r2=" << fit.r_squared;
    }
    if (!res.table_file.empty()) std::cout << " table=" << res.table_file;
    std::cout << "\n";
  }
  (void)config;
}

int cmd_run(const std::string& config_path) {
  linrl::RunConfig config = linrl::parse_run_config(read_file(config_path));
  auto results = linrl::run_experiment(config);
  print_run_summary(config, results);
  return 0;
}

int cmd_sweep(const std::string& config_path) {
  json cfg = json::parse(read_file(config_path));
  json agents = cfg.at("agents");
  for (const auto& agent : agents) {
    json single = cfg;
    single.erase("agents");
    single["agent"] = agent;
    if (single.contains("output"))
      single["output"] = single["output"].get<std::string>() + "." +
                         agent.at("kind").get<std::string>();
    linrl::RunConfig config = linrl::parse_run_config(single.dump());
    std::cout << "agent=" << agent.at("kind").get<std::string>() << "\n";
    print_run_summary(config, linrl::run_experiment(config));
  }
  return 0;
}

int cmd_bayes(const std::string& config_path) {
  json cfg = json::parse(read_file(config_path));
  int draws = cfg.at("draws").get<int>();
  std::string prior = cfg.at("prior").dump();
  json single = cfg;
  single.erase("prior");
  single.erase("draws");
  if (!single.contains("environment")) single["environment"] = {{"kind", "chain"},
                                                                {"n", 2},
                                                                {"H", 1}};
  linrl::RunConfig config = linrl::parse_run_config(single.dump());
  auto est = linrl::estimate_bayes_regret(prior, draws, config);
  std::cout << "draws=" << draws << " mean_regret=" << est.mean
            << " std_error=" << est.std_error << "\n";
  return 0;
}

int cmd_verify(std::uint64_t seed, const std::string& out_path, bool quick) {
  using namespace linrl;
  RngStream rng(seed, "verify");
  std::vector<LemmaReport> reports;

  {
    RngStream stream = rng.substream("self-normalized");
    reports.push_back(verify_self_normalized(3, quick ? 100 : 500, 0.5, 1.0, 0.05,
                                             quick ? 200 : 2000, stream));
  }
  {
    EnvModel env = make_random_tabular_mdp(4, 2, 3, 0.1, 1, true);
    RngStream stream = rng.substream("confidence");
    reports.push_back(verify_confidence_lemma(env, 0.1, quick ? 10 : 40,
                                              quick ? 100 : 1000, stream));
  }
  {
    RngStream stream = rng.substream("determinant");
    auto source = random_trajectory_source(4, quick ? 100 : 1000, 1.0, 1.0);
    reports.push_back(verify_determinant_lemma(source, quick ? 100 : 1000, stream));
  }
  {
    RngStream stream = rng.substream("subgaussian");
    BoundedNoiseSpec noise{BoundedNoiseSpec::Kind::kUniform, 1.0};
    reports.push_back(verify_subgaussian_assumption(
        noise, {-3.0, -1.0, -0.1, 0.1, 1.0, 3.0}, quick ? 100000 : 1000000, stream));
  }

  bool all_pass = true;
  for (const auto& report : reports) {
    std::cout << report_line(report) << "\n";
    all_pass = all_pass && report.pass;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << report_json(reports) << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exploration agents for episodic MDPs with linear optimal Q"};
  app.require_subcommand(1);

  std::string run_config, sweep_config, bayes_config;
  auto* run = app.add_subcommand("run", "Run a single experiment config");
  run->add_option("config", run_config, "JSON config file")->required();

  auto* sweep = app.add_subcommand("sweep", "Grid over agents and seeds");
  sweep->add_option("config", sweep_config, "JSON config file")->required();

  auto* bayes = app.add_subcommand("bayes", "Prior-draw regret estimate");
  bayes->add_option("config", bayes_config, "JSON config file")->required();

  std::uint64_t verify_seed = 0;
  std::string verify_out;
  bool verify_quick = false;
  auto* verify = app.add_subcommand("verify", "Run the lemma verification suites");
  verify->add_option("--seed", verify_seed, "Stream seed");
  verify->add_option("--out", verify_out, "Write a JSON report file");
  verify->add_flag("--quick", verify_quick, "Reduced trial counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_config);
    if (sweep->parsed()) return cmd_sweep(sweep_config);
    if (bayes->parsed()) return cmd_bayes(bayes_config);
    if (verify->parsed()) return cmd_verify(verify_seed, verify_out, verify_quick);
  } catch (const std::exception& ex) {
    std::cerr << json{{"error", ex.what()}}.dump() << "\n";
    return 2;
  }
  return 0;
}
