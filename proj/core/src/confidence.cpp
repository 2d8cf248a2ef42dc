#include "linrl/confidence.hpp"

#include <cmath>
#include <stdexcept>

namespace linrl {

namespace {

double int_pow(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

double ConfidenceSet::distance(const Eigen::VectorXd& w) const {
  Eigen::VectorXd diff = w - center;
  return std::sqrt(std::max(0.0, diff.dot(shape * diff)));
}

bool ConfidenceSet::contains(const Eigen::VectorXd& w, double slack) const {
  return distance(w) <= radius + slack;
}

double confidence_radius(int t, double delta, int dim, double sigma,
                         double lambda, double norm_bound, double weight_bound,
                         int horizon, double theta_next, double rho_next) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("confidence_radius: delta must be in (0,1)");
  if (t < 0 || dim < 1 || horizon < 1 || sigma < 0.0 || lambda <= 0.0 ||
      theta_next < 0.0 || rho_next < 0.0)
    throw std::invalid_argument("confidence_radius: invalid parameters");
  double log_term = 2.0 * std::log(horizon / delta) +
                    dim * std::log1p(t * norm_bound * norm_bound / lambda);
  return sigma * std::sqrt(log_term) + std::sqrt(lambda) * weight_bound +
         theta_next * rho_next;
}

std::vector<double> radius_schedule(int t, double delta, int dim, double sigma,
                                    double lambda, double norm_bound,
                                    double weight_bound, int horizon,
                                    const std::vector<double>& rho_next) {
  if (static_cast<int>(rho_next.size()) != horizon)
    throw std::invalid_argument("radius_schedule: rho size must equal horizon");
  std::vector<double> theta(horizon, 0.0);
  double theta_below = 0.0;
  for (int h = horizon; h >= 1; --h) {
    double rho_below = h == horizon ? 0.0 : rho_next[h - 1];
    theta[h - 1] = confidence_radius(t, delta, dim, sigma, lambda, norm_bound,
                                     weight_bound, horizon, theta_below, rho_below);
    theta_below = theta[h - 1];
  }
  return theta;
}

double rho_empirical(const RidgeState& state,
                     const std::vector<Eigen::VectorXd>& optimal_features) {
  double sum = 0.0;
  for (const auto& phi : optimal_features) {
    double n = state.inv_quad_norm(phi);
    sum += n * n;
  }
  return std::sqrt(sum);
}

double rho_empirical(const RidgeState& state, const Eigen::MatrixXd& outer_sum) {
  return std::sqrt(std::max(0.0, state.inv_trace_product(outer_sum)));
}

double bar_rho(const std::vector<double>& rhos, double gamma, int horizon) {
  if (horizon < 1) throw std::invalid_argument("bar_rho: horizon must be >= 1");
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("bar_rho: gamma must be in [0,1]");
  if (static_cast<int>(rhos.size()) != horizon)
    throw std::invalid_argument("bar_rho: need one rho per step 2..H+1");
  for (double r : rhos)
    if (r < 0.0) throw std::invalid_argument("bar_rho: rho values must be >= 0");

  auto rho_at = [&](int step) { return rhos[step - 2]; };  // step in [2..H+1]
  double total = 0.0;
  for (int i = 1; i <= horizon; ++i) {
    double inner = 1.0;
    for (int j = 2; j <= i; ++j) {
      double prod = 1.0;
      for (int k = 1; k <= j - 1; ++k) prod *= rho_at(horizon - (i - k) + 1);
      inner += int_pow(gamma, j - 1) * prod;
    }
    total += int_pow(gamma, 2 * (horizon - i)) * inner * inner;
  }
  return total;
}

}  // namespace linrl
