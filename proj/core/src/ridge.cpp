#include "linrl/ridge.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace linrl {

RidgeState::RidgeState(int dim, double lambda) : dim_(dim), lambda_(lambda) {
  if (dim < 1) throw std::invalid_argument("RidgeState: dim must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("RidgeState: lambda must be > 0");
  gram_ = lambda * Eigen::MatrixXd::Identity(dim, dim);
  moment_ = Eigen::VectorXd::Zero(dim);
}

void RidgeState::update(const Eigen::VectorXd& phi, double target) {
  if (phi.size() != dim_) throw std::invalid_argument("RidgeState: feature dim mismatch");
  if (!phi.allFinite() || !std::isfinite(target))
    throw std::invalid_argument("RidgeState: non-finite update");
  gram_.selfadjointView<Eigen::Lower>().rankUpdate(phi);
  gram_.triangularView<Eigen::StrictlyUpper>() =
      gram_.triangularView<Eigen::StrictlyLower>().transpose();
  moment_ += target * phi;
  ++count_;
  factor_stale_ = true;
}

const Eigen::LLT<Eigen::MatrixXd>& RidgeState::factor() const {
  if (factor_stale_) {
    llt_.compute(gram_);
    if (llt_.info() != Eigen::Success)
      throw std::runtime_error("RidgeState: gram factorization failed");
    factor_stale_ = false;
  }
  return llt_;
}

Eigen::VectorXd RidgeState::weights() const { return factor().solve(moment_); }

Eigen::VectorXd RidgeState::solve(const Eigen::VectorXd& v) const {
  return factor().solve(v);
}

double RidgeState::quad_norm(const Eigen::VectorXd& v) const {
  return std::sqrt(std::max(0.0, v.dot(gram_ * v)));
}

double RidgeState::inv_quad_norm(const Eigen::VectorXd& v) const {
  return factor().matrixL().solve(v).norm();
}

std::pair<double, double> RidgeState::weighted_norms(const Eigen::VectorXd& v) const {
  if (v.size() != dim_) throw std::invalid_argument("RidgeState: vector dim mismatch");
  return {quad_norm(v), inv_quad_norm(v)};
}

double RidgeState::inv_trace_product(const Eigen::MatrixXd& m) const {
  return factor().solve(m).trace();
}

double RidgeState::log_det() const {
  return 2.0 * factor().matrixLLT().diagonal().array().log().sum();
}

std::string RidgeState::to_json() const {
  nlohmann::json j;
  j["format"] = "ridge-snapshot";
  j["version"] = 1;
  j["dim"] = dim_;
  j["lambda"] = lambda_;
  j["count"] = count_;
  std::vector<std::vector<double>> gram(dim_, std::vector<double>(dim_));
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) gram[r][c] = gram_(r, c);
  j["gram"] = gram;
  std::vector<double> moment(moment_.data(), moment_.data() + dim_);
  j["moment"] = moment;
  return j.dump();
}

RidgeState RidgeState::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "ridge-snapshot")
    throw std::invalid_argument("RidgeState: not a ridge snapshot");
  if (j.value("version", 0) != 1)
    throw std::invalid_argument("RidgeState: unsupported snapshot version");
  RidgeState state(j.at("dim").get<int>(), j.at("lambda").get<double>());
  state.count_ = j.at("count").get<int>();
  auto gram = j.at("gram").get<std::vector<std::vector<double>>>();
  auto moment = j.at("moment").get<std::vector<double>>();
  if (static_cast<int>(gram.size()) != state.dim_ ||
      static_cast<int>(moment.size()) != state.dim_)
    throw std::invalid_argument("RidgeState: snapshot shape mismatch");
  for (int r = 0; r < state.dim_; ++r)
    for (int c = 0; c < state.dim_; ++c) state.gram_(r, c) = gram[r][c];
  for (int i = 0; i < state.dim_; ++i) state.moment_(i) = moment[i];
  state.factor_stale_ = true;
  return state;
}

std::pair<double, double> determinant_lemma_gap(
    const std::vector<Eigen::VectorXd>& features, double lambda, int dim,
    double norm_bound, int t_max) {
  RidgeState state(dim, lambda);
  double lhs = 0.0;
  int t = 0;
  for (const auto& phi : features) {
    if (t >= t_max) break;
    double n2 = state.inv_quad_norm(phi);
    lhs += std::log1p(n2 * n2);
    state.update(phi, 0.0);
    ++t;
  }
  double rhs = dim * std::log(lambda + t_max * norm_bound * norm_bound / dim);
  return {lhs, rhs};
}

}  // namespace linrl
