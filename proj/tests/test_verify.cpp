#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "linrl/verify.hpp"

using namespace linrl;

TEST_CASE("binomial pass rule") {
  CHECK(binomial_failure_threshold(2000, 0.05) ==
        doctest::Approx(100.0 + 3.0 * std::sqrt(0.05 * 0.95 * 2000)));
  // delta = 0 admits no failures at all.
  CHECK(binomial_failure_threshold(1000, 0.0) == 0.0);
  LemmaReport pass = finish_report("x", 1000, 0, 0.0, "");
  CHECK(pass.pass);
  LemmaReport fail = finish_report("x", 1000, 1, 0.0, "");
  CHECK_FALSE(fail.pass);
}

TEST_CASE("report lines carry the verdict") {
  LemmaReport report = finish_report("sample", 100, 3, 0.1, "detail");
  std::string line = report_line(report);
  CHECK(line.find("sample") != std::string::npos);
  CHECK(line.find("PASS") != std::string::npos);
  std::string json = report_json({report});
  CHECK(json.find("\"lemma\"") != std::string::npos);
}

TEST_CASE("self-normalized bound: noiseless data never fails") {
  RngStream rng(1, "sn");
  LemmaReport report = verify_self_normalized(2, 50, 0.0, 1.0, 0.1, 50, rng);
  CHECK(report.failures == 0);
  CHECK(report.pass);
}

TEST_CASE("self-normalized bound: scalar single-step closed form") {
  // d = 1, T = 1, phi = 1, coin noise: the statistic is sigma^2/(lambda+1)
  // and the bound is sigma^2 (log(1+1/lambda) + 2 log(1/delta)).
  const double sigma = 0.7, lambda = 1.0, delta = 0.1;
  double stat = sigma * sigma / (lambda + 1.0);
  double bound =
      sigma * sigma * (std::log((lambda + 1.0) / lambda) + 2.0 * std::log(1.0 / delta));
  CHECK(stat <= bound);
  // The Monte-Carlo check agrees: no failures possible at these sizes.
  RngStream rng(2, "sn1");
  LemmaReport report = verify_self_normalized(1, 1, sigma, lambda, delta, 200, rng);
  CHECK(report.failures == 0);
}

TEST_CASE("self-normalized bound holds at moderate scale") {
  RngStream rng(3, "sn-mid");
  LemmaReport report = verify_self_normalized(3, 200, 0.5, 1.0, 0.05, 400, rng);
  CHECK(report.pass);
  CHECK(report.trials == 400);
}

TEST_CASE("confidence coverage: zero noise, deterministic environment") {
  EnvModel env = make_random_tabular_mdp(3, 2, 3, 0.0, 7, true);
  RngStream rng(4, "conf0");
  LemmaReport report = verify_confidence_lemma(env, 0.1, 25, 100, rng);
  CHECK(report.failures == 0);
  CHECK(report.pass);
}

TEST_CASE("confidence coverage: horizon one reduces to the regression check") {
  EnvModel env = make_random_tabular_mdp(4, 2, 1, 0.1, 8, true);
  RngStream rng(5, "conf1");
  LemmaReport report = verify_confidence_lemma(env, 0.1, 30, 300, rng);
  CHECK(report.pass);
}

TEST_CASE("confidence coverage on a noisy three-step environment") {
  EnvModel env = make_random_tabular_mdp(4, 2, 3, 0.1, 1, true);
  RngStream rng(6, "conf3");
  LemmaReport report = verify_confidence_lemma(env, 0.1, 30, 250, rng);
  CHECK(report.pass);
}

TEST_CASE("determinant inequality: degenerate, adversarial, random") {
  RngStream rng(7, "det");

  TrajectorySource empty = random_trajectory_source(3, 0, 1.5, 1.0);
  LemmaReport none = verify_determinant_lemma(empty, 10, rng);
  CHECK(none.failures == 0);  // 0 <= d log lambda for lambda >= 1

  TrajectorySource repeated = repeated_feature_source(4, 300, 1.0, 1.0);
  CHECK(verify_determinant_lemma(repeated, 50, rng).failures == 0);

  TrajectorySource random = random_trajectory_source(4, 500, 1.0, 1.0);
  LemmaReport report = verify_determinant_lemma(random, 200, rng);
  CHECK(report.failures == 0);
  CHECK(report.pass);
}

TEST_CASE("sub-gaussian moment bound") {
  RngStream rng(8, "subg");

  // Zero noise: the statistic is exp(-c^2/2) <= 1 exactly.
  BoundedNoiseSpec zero{BoundedNoiseSpec::Kind::kZero, 1.0};
  LemmaReport silent =
      verify_subgaussian_assumption(zero, {-2.0, -0.5, 0.5, 2.0}, 2000, rng);
  CHECK(silent.failures == 0);

  // Fair coin at its own scale: cosh(c) exp(-c^2/2) <= 1 classically.
  BoundedNoiseSpec coin{BoundedNoiseSpec::Kind::kCoin, 0.4};
  for (double c : {0.3, 1.0, 2.5})
    CHECK(std::cosh(c) * std::exp(-0.5 * c * c) <= 1.0 + 1e-12);
  LemmaReport coin_report =
      verify_subgaussian_assumption(coin, {-3.0, -1.0, -0.1, 0.1, 1.0, 3.0}, 200000, rng);
  CHECK(coin_report.failures == 0);

  // Uniform noise declared at its bound.
  BoundedNoiseSpec uniform{BoundedNoiseSpec::Kind::kUniform, 1.0};
  LemmaReport uniform_report =
      verify_subgaussian_assumption(uniform, {-3.0, -1.0, -0.1, 0.1, 1.0, 3.0}, 200000, rng);
  CHECK(uniform_report.failures == 0);
  CHECK(uniform_report.pass);
}

TEST_CASE("reports are reproducible from (parameters, seed)") {
  RngStream a(9, "rep"), b(9, "rep");
  LemmaReport first = verify_self_normalized(2, 100, 0.3, 1.0, 0.1, 100, a);
  LemmaReport second = verify_self_normalized(2, 100, 0.3, 1.0, 0.1, 100, b);
  CHECK(first.failures == second.failures);
  CHECK(first.details == second.details);
}
