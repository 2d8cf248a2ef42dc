#include "linrl/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

#include "linrl/agents.hpp"
#include "linrl/blr.hpp"
#include "linrl/ridge.hpp"

namespace linrl {

double binomial_failure_threshold(long long trials, double delta) {
  return delta * trials + 3.0 * std::sqrt(delta * (1.0 - delta) * trials);
}

LemmaReport finish_report(std::string lemma_id, long long trials,
                          long long failures, double delta, std::string details) {
  LemmaReport report;
  report.lemma_id = std::move(lemma_id);
  report.trials = trials;
  report.failures = failures;
  report.delta = delta;
  report.pass = failures <= binomial_failure_threshold(trials, delta);
  report.details = std::move(details);
  return report;
}

std::string report_line(const LemmaReport& report) {
  std::ostringstream out;
  out << report.lemma_id << ": trials=" << report.trials
      << " failures=" << report.failures << " delta=" << report.delta
      << " threshold=" << binomial_failure_threshold(report.trials, report.delta)
      << (report.pass ? " PASS" : " FAIL");
  if (!report.details.empty()) out << " (" << report.details << ")";
  return out.str();
}

std::string report_json(const std::vector<LemmaReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json item;
    item["lemma"] = r.lemma_id;
    item["trials"] = r.trials;
    item["failures"] = r.failures;
    item["delta"] = r.delta;
    item["threshold"] = binomial_failure_threshold(r.trials, r.delta);
    item["pass"] = r.pass;
    item["details"] = r.details;
    j.push_back(item);
  }
  return j.dump(2);
}

LemmaReport verify_self_normalized(int dim, int t_max, double sigma, double lambda,
                                   double delta, int trials, RngStream& rng) {
  long long failures = 0;
  for (int trial = 0; trial < trials; ++trial) {
    RngStream local = rng.substream("trial-" + std::to_string(trial));
    RidgeState state(dim, lambda);
    Eigen::VectorXd weighted_noise_sum = Eigen::VectorXd::Zero(dim);
    for (int t = 1; t <= t_max; ++t) {
      // Adapted direction: tilt toward the running sum so the sequence
      // genuinely depends on past noise rather than being i.i.d.
      Eigen::VectorXd z(dim);
      for (int i = 0; i < dim; ++i) z(i) = local.next_normal();
      Eigen::VectorXd phi =
          z + 0.5 * weighted_noise_sum / (1.0 + weighted_noise_sum.norm());
      double n = phi.norm();
      if (n > 0.0) phi /= n;
      double noise = local.next_double() < 0.5 ? -sigma : sigma;
      state.update(phi, noise);  // moment accumulates noise * phi
      weighted_noise_sum += noise * phi;
    }
    double stat = weighted_noise_sum.dot(state.solve(weighted_noise_sum));
    double bound = 2.0 * sigma * sigma *
                   (0.5 * state.log_det() - 0.5 * dim * std::log(lambda) +
                    std::log(1.0 / delta));
    if (stat > bound) ++failures;
  }
  std::ostringstream details;
  details << "dim=" << dim << " T=" << t_max << " sigma=" << sigma;
  return finish_report("self-normalized-bound", trials, failures, delta,
                       details.str());
}

LemmaReport verify_confidence_lemma(const EnvModel& env, double delta, int episodes,
                                    int trials, RngStream& rng, double lambda) {
  const double sigma = std::max(env.mdp.noise_bound, 0.0);
  long long failures = 0;
  for (int trial = 0; trial < trials; ++trial) {
    RngStream local = rng.substream("trial-" + std::to_string(trial));
    StepwiseEstimator estimator(env, lambda, sigma, delta);
    for (int t = 0; t < episodes; ++t) {
      int x = env.mdp.sample_initial(local);
      for (int h = 1; h <= env.mdp.horizon; ++h) {
        int a = local.next_int(env.mdp.n_actions);
        int x_next = env.mdp.sample_next(x, a, h, local);
        double r = env.mdp.sample_reward_given_next(x, a, h, x_next, local);
        estimator.record({x, a, r, x_next, h, h == env.mdp.horizon});
        x = x_next;
      }
      estimator.commit_episode();
    }
    bool violated = false;
    for (int h = 1; h <= env.mdp.horizon && !violated; ++h) {
      double dist =
          estimator.state(h).quad_norm(estimator.estimate(h) -
                                       env.realization.weights[h - 1]);
      if (dist > estimator.theta(h) + 1e-12) violated = true;
    }
    if (violated) ++failures;
  }
  std::ostringstream details;
  details << "H=" << env.mdp.horizon << " T=" << episodes << " sigma=" << sigma;
  return finish_report("confidence-intervals", trials, failures, delta,
                       details.str());
}

TrajectorySource random_trajectory_source(int dim, int length, double lambda,
                                          double norm_bound) {
  TrajectorySource source;
  source.dim = dim;
  source.length = length;
  source.lambda = lambda;
  source.norm_bound = norm_bound;
  source.generate = [dim, length, norm_bound](int, RngStream& rng) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(length);
    const double max_norm = std::sqrt(norm_bound);
    for (int t = 0; t < length; ++t) {
      Eigen::VectorXd z(dim);
      for (int i = 0; i < dim; ++i) z(i) = rng.next_normal();
      double n = z.norm();
      if (n > 0.0) z *= (max_norm * rng.next_double()) / n;
      out.push_back(z);
    }
    return out;
  };
  return source;
}

TrajectorySource repeated_feature_source(int dim, int length, double lambda,
                                         double norm_bound) {
  TrajectorySource source;
  source.dim = dim;
  source.length = length;
  source.lambda = lambda;
  source.norm_bound = norm_bound;
  source.generate = [dim, length, norm_bound](int, RngStream& rng) {
    Eigen::VectorXd z(dim);
    for (int i = 0; i < dim; ++i) z(i) = rng.next_normal();
    if (z.norm() > 0.0) z *= std::sqrt(norm_bound) / z.norm();
    return std::vector<Eigen::VectorXd>(length, z);
  };
  return source;
}

LemmaReport verify_determinant_lemma(const TrajectorySource& source, int trials,
                                     RngStream& rng) {
  long long failures = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    RngStream local = rng.substream("trial-" + std::to_string(trial));
    auto features = source.generate(trial, local);
    auto [lhs, rhs] = determinant_lemma_gap(features, source.lambda, source.dim,
                                            source.norm_bound, source.length);
    worst_gap = std::min(worst_gap, rhs - lhs);
    if (lhs > rhs) ++failures;
  }
  std::ostringstream details;
  details << "dim=" << source.dim << " T=" << source.length
          << " minGap=" << worst_gap;
  return finish_report("determinant-lemma", trials, failures, 0.0, details.str());
}

double BoundedNoiseSpec::sample(RngStream& rng) const {
  switch (kind) {
    case Kind::kZero:
      return 0.0;
    case Kind::kCoin:
      return rng.next_double() < 0.5 ? -sigma : sigma;
    case Kind::kUniform:
      return sigma * (2.0 * rng.next_double() - 1.0);
  }
  return 0.0;
}

LemmaReport verify_subgaussian_assumption(const BoundedNoiseSpec& noise,
                                          const std::vector<double>& grid,
                                          long long n_samples, RngStream& rng) {
  long long failing_points = 0;
  std::ostringstream details;
  for (double c : grid) {
    RngStream local = rng.substream("grid-" + std::to_string(c));
    double mean = 0.0, m2 = 0.0;
    for (long long i = 1; i <= n_samples; ++i) {
      double nu = noise.sample(local);
      double value = std::exp(c * nu / noise.sigma - 0.5 * c * c);
      double delta_v = value - mean;
      mean += delta_v / i;
      m2 += delta_v * (value - mean);
    }
    double std_error = std::sqrt(m2 / (n_samples - 1) / n_samples);
    bool ok = mean <= 1.0 + 5.0 * std_error;
    if (!ok) ++failing_points;
    details << "c=" << c << " mgf=" << mean << " se=" << std_error
            << (ok ? " ok; " : " VIOLATION; ");
  }
  return finish_report("sub-gaussian-noise", static_cast<long long>(grid.size()),
                       failing_points, 0.0, details.str());
}

}  // namespace linrl
