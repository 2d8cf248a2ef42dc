#pragma once

#include <Eigen/Core>
#include <vector>

#include "linrl/rng.hpp"

namespace linrl {

/// Gaussian belief over a weight vector.
struct GaussianPosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

/// Declared sub-Gaussian scale of an observation noise source.
struct NoiseModel {
  double sigma = 0.0;

  NoiseModel() = default;
  explicit NoiseModel(double s);  // requires a finite, positive scale
};

/// Conjugate Gaussian regression posterior with zero-mean prior:
///   cov  = ( (1/sigma_noise^2) Phi Phi^T + (1/sigma_prior^2) I )^{-1}
///   mean = (1/sigma_noise^2) cov Phi y
/// where Phi stacks the features column-wise. With no data the posterior is
/// the prior N(0, sigma_prior^2 I).
GaussianPosterior blr_posterior(const std::vector<Eigen::VectorXd>& features,
                                const std::vector<double>& targets,
                                double sigma_prior, double sigma_noise, int dim);

/// mean + chol(cov) z with z standard normal; deterministic given the stream.
/// A failed factorization is retried with an escalating diagonal jitter of
/// 1e-10 * trace/dim, tripling at most three times before throwing.
Eigen::VectorXd sample_gaussian(const GaussianPosterior& posterior, RngStream& rng);

/// Lower Cholesky factor with the jitter policy above.
Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& m);

}  // namespace linrl
