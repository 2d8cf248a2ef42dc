#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "linrl/envs.hpp"
#include "linrl/rng.hpp"

namespace linrl {

/// Outcome of one Monte-Carlo or exact check. The verdict follows the
/// binomial three-sigma rule: pass iff
///   failures <= delta * trials + 3 * sqrt(delta * (1 - delta) * trials),
/// which for delta = 0 degenerates to "no failures allowed".
struct LemmaReport {
  std::string lemma_id;
  long long trials = 0;
  long long failures = 0;
  double delta = 0.0;
  bool pass = false;
  std::string details;
};

double binomial_failure_threshold(long long trials, double delta);
LemmaReport finish_report(std::string lemma_id, long long trials,
                          long long failures, double delta, std::string details);
std::string report_line(const LemmaReport& report);
std::string report_json(const std::vector<LemmaReport>& reports);

/// Concentration of the noise-weighted feature sum: over independent trials of
/// an adapted feature sequence with fair-coin noise of scale sigma, check at
/// t = T that
///   ||S_T||^2 in the inverse regularized-gram norm
///     <= 2 sigma^2 log( det(gram)^{1/2} det(lambda I)^{-1/2} / delta ).
LemmaReport verify_self_normalized(int dim, int t_max, double sigma, double lambda,
                                   double delta, int trials, RngStream& rng);

/// Simultaneous-in-step ellipsoid coverage on an environment with known exact
/// weights: each trial collects `episodes` episodes under uniform random
/// actions through the stepwise estimator, then requires
/// ||w_hat^h - w*^h||_gram <= theta^h for every step at once. The noise scale
/// is the environment's declared bound.
LemmaReport verify_confidence_lemma(const EnvModel& env, double delta, int episodes,
                                    int trials, RngStream& rng, double lambda = 1.0);

/// Feature sequences for the log-determinant check.
struct TrajectorySource {
  int dim = 1;
  int length = 1;
  double lambda = 1.0;
  double norm_bound = 1.0;  // L; feature norms stay within sqrt(L)
  std::function<std::vector<Eigen::VectorXd>(int trial, RngStream&)> generate;
};
TrajectorySource random_trajectory_source(int dim, int length, double lambda,
                                          double norm_bound);
TrajectorySource repeated_feature_source(int dim, int length, double lambda,
                                         double norm_bound);

/// Exact inequality sum log(1 + ||phi_t||^2) <= d log(lambda + T L^2 / d) on
/// every generated trajectory; any violation fails the report.
LemmaReport verify_determinant_lemma(const TrajectorySource& source, int trials,
                                     RngStream& rng);

/// Bounded zero-mean noise with a declared sub-Gaussian scale.
struct BoundedNoiseSpec {
  enum class Kind { kZero, kCoin, kUniform } kind = Kind::kCoin;
  double sigma = 1.0;

  double sample(RngStream& rng) const;
};

/// Empirical moment bound E[exp(c nu / sigma - c^2 / 2)] <= 1 over a grid of
/// scalar projections c; a grid point fails when the estimate exceeds
/// 1 + 5 standard errors.
LemmaReport verify_subgaussian_assumption(const BoundedNoiseSpec& noise,
                                          const std::vector<double>& grid,
                                          long long n_samples, RngStream& rng);

}  // namespace linrl
