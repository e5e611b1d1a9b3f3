#pragma once
//
// Dense complex linear algebra for small operators: powers, singular-value
// extremes, resolvents and their norms. Everything is templated on the Eigen
// expression type so float, double and long double scalars all work; the
// rest of the library instantiates the double versions.
//

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

#include "rk/errors.hpp"

namespace rk {

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

// Largest operator dimension accepted anywhere in the toolkit.
inline constexpr Eigen::Index kMaxDim = 512;

// σ_min(λI − T) below this fraction of σ_max(λI − T) means λ ∈ σ(T).
inline constexpr double kSingularTolerance = 1e-14;

enum class Norm { L1, L2, LInf };

template <typename Real>
bool is_finite(const std::complex<Real>& z) {
  using std::isfinite;
  return isfinite(z.real()) && isfinite(z.imag());
}

// Throws DomainError unless T is a square, finite matrix with 1 ≤ dim ≤ 512.
template <typename Derived>
void check_operator(const Eigen::MatrixBase<Derived>& T) {
  if (T.rows() != T.cols()) throw DomainError("operator matrix must be square");
  if (T.rows() < 1 || T.rows() > kMaxDim)
    throw DomainError("operator dimension must lie in [1, 512]");
  for (Eigen::Index j = 0; j < T.cols(); ++j)
    for (Eigen::Index i = 0; i < T.rows(); ++i)
      if (!is_finite(std::complex<RealOf<Derived>>(T(i, j))))
        throw DomainError("operator matrix has a non-finite entry");
}

// Tⁿ by binary exponentiation; T⁰ = I.
template <typename Derived>
typename Derived::PlainObject mat_power(const Eigen::MatrixBase<Derived>& T, std::uint64_t n) {
  using Plain = typename Derived::PlainObject;
  Plain result = Plain::Identity(T.rows(), T.cols());
  Plain base = T;
  while (n != 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return result;
}

template <typename Real>
struct SingularExtremes {
  Real sigma_max;
  Real sigma_min;
};

template <typename Derived>
SingularExtremes<RealOf<Derived>> singular_extremes(const Eigen::MatrixBase<Derived>& A) {
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(A);
  const auto& s = svd.singularValues();
  return {s(0), s(s.size() - 1)};
}

template <typename Derived>
RealOf<Derived> operator_norm(const Eigen::MatrixBase<Derived>& A, Norm norm = Norm::L2) {
  switch (norm) {
    case Norm::L1:
      return A.cwiseAbs().colwise().sum().maxCoeff();
    case Norm::LInf:
      return A.cwiseAbs().rowwise().sum().maxCoeff();
    case Norm::L2:
      break;
  }
  return singular_extremes(A).sigma_max;
}

// λI − T
template <typename Derived>
typename Derived::PlainObject shifted(const Eigen::MatrixBase<Derived>& T,
                                      const typename Derived::Scalar& lambda) {
  typename Derived::PlainObject A = -T;
  A.diagonal().array() += lambda;
  return A;
}

// ‖R(λ,T)‖₂ = 1 / σ_min(λI − T).
template <typename Derived>
RealOf<Derived> resolvent_norm(const Eigen::MatrixBase<Derived>& T,
                               const typename Derived::Scalar& lambda) {
  using Real = RealOf<Derived>;
  const auto [smax, smin] = singular_extremes(shifted(T, lambda));
  if (!(smax > Real(0)) || smin < Real(kSingularTolerance) * smax)
    throw SingularResolvent(std::complex<double>(lambda), double(smin), double(smax));
  return Real(1) / smin;
}

// R(λ,T) = (λI − T)⁻¹ by partial-pivot LU. The singularity test uses the
// LU reciprocal condition estimate.
template <typename Derived>
typename Derived::PlainObject resolvent(const Eigen::MatrixBase<Derived>& T,
                                        const typename Derived::Scalar& lambda) {
  using Real = RealOf<Derived>;
  Eigen::PartialPivLU<typename Derived::PlainObject> lu(shifted(T, lambda));
  const Real rcond = lu.rcond();
  if (!(rcond >= Real(kSingularTolerance)))
    throw SingularResolvent(std::complex<double>(lambda), double(rcond), 1.0);
  return lu.inverse();
}

// ‖R(λ,T)‖ in the requested norm. ℓ² goes through the SVD; ℓ¹ and ℓ^∞ are
// exact column/row sums of the explicit inverse.
template <typename Derived>
RealOf<Derived> resolvent_norm(const Eigen::MatrixBase<Derived>& T,
                               const typename Derived::Scalar& lambda, Norm norm) {
  if (norm == Norm::L2) return resolvent_norm(T, lambda);
  return operator_norm(resolvent(T, lambda), norm);
}

}  // namespace rk
