#pragma once

#include <Eigen/Dense>
#include <vector>

namespace aebench {

struct Gp1dParams {
  double length_scale = 0.5;
  double signal_var = 1.0;
  double noise_var = 1e-2;
};

// One-dimensional Gaussian-process regression with a squared-exponential
// kernel. Observations are centered on their mean before the fit, so the
// posterior mean far from data reverts to the window average.
class Gp1d {
public:
  Gp1d(const std::vector<double>& x, const std::vector<double>& y, const Gp1dParams& params);

  struct Posterior {
    double mean = 0.0;
    double stddev = 0.0;
  };
  Posterior predict(double x) const;

private:
  Eigen::VectorXd x_;
  Eigen::VectorXd alpha_;  // K^-1 (y - mean)
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double y_mean_ = 0.0;
  Gp1dParams params_;

  double kernel(double a, double b) const;
};

}  // namespace aebench
