#include "aebench/gp.hpp"

#include <cmath>

#include "aebench/errors.hpp"

namespace aebench {

double Gp1d::kernel(double a, double b) const {
  const double d = a - b;
  return params_.signal_var *
         std::exp(-d * d / (2.0 * params_.length_scale * params_.length_scale));
}

Gp1d::Gp1d(const std::vector<double>& x, const std::vector<double>& y, const Gp1dParams& params)
    : params_(params) {
  if (x.empty() || x.size() != y.size()) throw DomainError("GP needs matching non-empty x and y");
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  x_ = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  y_mean_ = yv.mean();
  yv.array() -= y_mean_;

  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = kernel(x_[i], x_[j]);
  k.diagonal().array() += params_.noise_var;

  llt_.compute(k);
  if (llt_.info() != Eigen::Success) throw DomainError("GP kernel matrix is not positive definite");
  alpha_ = llt_.solve(yv);
}

Gp1d::Posterior Gp1d::predict(double x) const {
  const Eigen::Index n = x_.size();
  Eigen::VectorXd ks(n);
  for (Eigen::Index i = 0; i < n; ++i) ks[i] = kernel(x, x_[i]);
  Posterior post;
  post.mean = y_mean_ + ks.dot(alpha_);
  const double var = params_.signal_var - ks.dot(llt_.solve(ks));
  post.stddev = std::sqrt(std::max(var, 0.0));
  return post;
}

}  // namespace aebench
