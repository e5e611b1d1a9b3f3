#pragma once
//
// Ordinary least squares for the slope fits on norm sequences.
//

#include <Eigen/Dense>

#include <vector>

namespace rk {

struct LeastSquares {
  Eigen::VectorXd coef;
  Eigen::VectorXd std_error;  // +inf where the residual variance is undefined
  double r2;
  double rss;
};

// Fits y ≈ X·coef. X must have more rows than columns and full column rank.
LeastSquares least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

struct LinearFit {
  double intercept;
  double slope;
  double r2;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rk
