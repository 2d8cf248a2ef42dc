#include <benchmark/benchmark.h>

#include "linrl/agents.hpp"
#include "linrl/bdqn.hpp"
#include "linrl/blr.hpp"
#include "linrl/envs.hpp"
#include "linrl/harness.hpp"
#include "linrl/ridge.hpp"

namespace {

using namespace linrl;

Eigen::VectorXd random_vector(int dim, RngStream& rng) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.next_normal();
  return v;
}

void BM_RidgeUpdateSolve(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  RngStream rng(1, "bench-ridge");
  RidgeState ridge(dim, 1.0);
  Eigen::VectorXd phi = random_vector(dim, rng);
  for (auto _ : state) {
    ridge.update(phi, 0.5);
    Eigen::VectorXd w = ridge.weights();
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_RidgeUpdateSolve)->Arg(8)->Arg(32)->Arg(128);

void BM_BlrPosterior(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  RngStream rng(2, "bench-blr");
  std::vector<Eigen::VectorXd> feats;
  std::vector<double> ys;
  for (int i = 0; i < 256; ++i) {
    feats.push_back(random_vector(dim, rng));
    ys.push_back(rng.next_normal());
  }
  for (auto _ : state) {
    GaussianPosterior post = blr_posterior(feats, ys, 1.0, 0.5, dim);
    benchmark::DoNotOptimize(post);
  }
}
BENCHMARK(BM_BlrPosterior)->Arg(8)->Arg(32)->Arg(128);

void BM_BackwardInduction(benchmark::State& state) {
  EnvModel env = make_random_tabular_mdp(static_cast<int>(state.range(0)), 4, 10,
                                         0.0, 7);
  for (auto _ : state) {
    OptimalSolution sol = optimal_q(env.mdp);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_BackwardInduction)->Arg(16)->Arg(64);

void BM_LinUcbEpisode(benchmark::State& state) {
  EnvModel env = make_chain_mdp(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0)) - 1, 0.1);
  LinUcbConfig cfg;
  cfg.fixed_rho = 1.0;
  LinUcbAgent agent(env, cfg);
  RngStream env_rng(3, "env"), agent_rng(3, "agent");
  for (auto _ : state) {
    agent.begin_episode(agent_rng);
    int x = env.mdp.sample_initial(env_rng);
    for (int h = 1; h <= env.mdp.horizon; ++h) {
      int a = agent.act(x, h, agent_rng);
      int xn = env.mdp.sample_next(x, a, h, env_rng);
      double r = env.mdp.sample_reward_given_next(x, a, h, xn, env_rng);
      agent.observe({x, a, r, xn, h, h == env.mdp.horizon});
      x = xn;
    }
    agent.end_episode();
  }
}
BENCHMARK(BM_LinUcbEpisode)->Arg(5)->Arg(10);

void BM_BdqnStep(benchmark::State& state) {
  BdqnConfig cfg;
  cfg.sample_period = 10;
  cfg.posterior_period = 1000;
  cfg.batch_size = 1000;
  cfg.sigma_prior = 1.0;
  BdqnLiteAgent agent = BdqnLiteAgent::tabular(static_cast<int>(state.range(0)), 4, cfg);
  RngStream rng(4, "bench-bdqn");
  int x = 0;
  for (auto _ : state) {
    int a = agent.act(x, 1, rng);
    agent.observe({x, a, 0.0, (x + 1) % static_cast<int>(state.range(0)), 1, false});
    x = (x + 1) % static_cast<int>(state.range(0));
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_BdqnStep)->Arg(8)->Arg(64);

void BM_PolicyEvaluation(benchmark::State& state) {
  EnvModel env = make_random_tabular_mdp(static_cast<int>(state.range(0)), 4, 10,
                                         0.0, 9);
  StochasticPolicy uniform = make_uniform_policy(4);
  for (auto _ : state) {
    double v = policy_value(env.mdp, uniform);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_PolicyEvaluation)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
