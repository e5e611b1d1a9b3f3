#include "rk/regression.hpp"

#include <cmath>
#include <limits>

#include "rk/errors.hpp"

namespace rk {

LeastSquares least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const Eigen::Index m = X.rows();
  const Eigen::Index p = X.cols();
  if (m != y.size()) throw DomainError("design matrix and response differ in length");
  if (m <= p) throw InsufficientData("least squares needs more samples than coefficients");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < p) throw InsufficientData("regressors are collinear");
  LeastSquares out;
  out.coef = qr.solve(y);
  const Eigen::VectorXd resid = y - X * out.coef;
  out.rss = resid.squaredNorm();
  const double tss = (y.array() - y.mean()).matrix().squaredNorm();
  out.r2 = tss > 0.0 ? 1.0 - out.rss / tss : 1.0;

  const double s2 = out.rss / double(m - p);
  const Eigen::MatrixXd cov = (X.transpose() * X).inverse();
  out.std_error.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double v = s2 * cov(i, i);
    out.std_error(i) = v > 0.0 ? std::sqrt(v) : std::numeric_limits<double>::infinity();
    if (s2 == 0.0) out.std_error(i) = 0.0;
  }
  return out;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("fit_line: length mismatch");
  Eigen::MatrixXd X(x.size(), 2);
  Eigen::VectorXd Y(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = x[i];
    Y(i) = y[i];
  }
  const auto ls = least_squares(X, Y);
  return {ls.coef(0), ls.coef(1), ls.r2};
}

}  // namespace rk
