#include "linrl/blr.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace linrl {

NoiseModel::NoiseModel(double s) : sigma(s) {
  if (!std::isfinite(s) || !(s > 0.0))
    throw std::invalid_argument("NoiseModel: sigma must be finite and positive");
}

GaussianPosterior blr_posterior(const std::vector<Eigen::VectorXd>& features,
                                const std::vector<double>& targets,
                                double sigma_prior, double sigma_noise, int dim) {
  if (!(sigma_prior > 0.0) || !(sigma_noise > 0.0))
    throw std::invalid_argument("blr_posterior: variances must be positive");
  if (features.size() != targets.size())
    throw std::invalid_argument("blr_posterior: features/targets length mismatch");

  const double noise_prec = 1.0 / (sigma_noise * sigma_noise);
  Eigen::MatrixXd precision =
      Eigen::MatrixXd::Identity(dim, dim) / (sigma_prior * sigma_prior);
  Eigen::VectorXd scaled_moment = Eigen::VectorXd::Zero(dim);
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != dim)
      throw std::invalid_argument("blr_posterior: feature dim mismatch");
    precision.selfadjointView<Eigen::Lower>().rankUpdate(features[i], noise_prec);
    scaled_moment += noise_prec * targets[i] * features[i];
  }
  precision.triangularView<Eigen::StrictlyUpper>() =
      precision.triangularView<Eigen::StrictlyLower>().transpose();

  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("blr_posterior: precision factorization failed");
  GaussianPosterior post;
  post.cov = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
  post.cov = 0.5 * (post.cov + post.cov.transpose()).eval();
  post.mean = llt.solve(scaled_moment);
  return post;
}

Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& m) {
  const int dim = static_cast<int>(m.rows());
  double jitter = 1e-10 * m.trace() / dim;
  Eigen::MatrixXd work = m;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(work);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    work = m + jitter * Eigen::MatrixXd::Identity(dim, dim);
    jitter *= 10.0;
  }
  throw std::runtime_error("jittered_cholesky: factorization failed after jitter");
}

Eigen::VectorXd sample_gaussian(const GaussianPosterior& posterior, RngStream& rng) {
  Eigen::MatrixXd chol = jittered_cholesky(posterior.cov);
  Eigen::VectorXd z(posterior.mean.size());
  for (int i = 0; i < z.size(); ++i) z(i) = rng.next_normal();
  return posterior.mean + chol * z;
}

}  // namespace linrl
