#pragma once

#include <complex>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rk {

// Argument outside the mathematical domain of an operation (|λ| ≤ 1, β ≥ 1
// where β < 1 is required, malformed region parameters, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// λI − T is numerically singular: λ sits (numerically) in the spectrum.
class SingularResolvent : public std::runtime_error {
 public:
  SingularResolvent(std::complex<double> lambda, double sigma_min, double sigma_max)
      : std::runtime_error(describe(lambda, sigma_min)),
        lambda_(lambda),
        sigma_min_(sigma_min),
        sigma_max_(sigma_max) {}

  std::complex<double> lambda() const noexcept { return lambda_; }
  double sigma_min() const noexcept { return sigma_min_; }
  double sigma_max() const noexcept { return sigma_max_; }

 private:
  static std::string describe(std::complex<double> lambda, double sigma_min) {
    std::ostringstream os;
    os << std::setprecision(6) << "lambda = (" << lambda.real() << ", " << lambda.imag()
       << ") is numerically in the spectrum: sigma_min(lambda I - T) = " << sigma_min;
    return os.str();
  }

  std::complex<double> lambda_;
  double sigma_min_;
  double sigma_max_;
};

// A power or Cesàro sequence left the representable range (norm > 1e300).
class OverflowGuard : public std::runtime_error {
 public:
  OverflowGuard(const std::string& what, std::size_t reached)
      : std::runtime_error(what), reached_(reached) {}
  // Last index that was still finite and below the guard.
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rk
