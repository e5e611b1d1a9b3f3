#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rk/errors.hpp"
#include "rk/linalg.hpp"
#include "rk/matrix_io.hpp"

using namespace rk;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, int d, double scale) {
  std::normal_distribution<double> g;
  ComplexMatrix A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = Complex(g(rng), g(rng));
  return A * (scale / operator_norm(A));
}

ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix A = ComplexMatrix::Zero(d.size(), d.size());
  int i = 0;
  for (Complex z : d) {
    A(i, i) = z;
    ++i;
  }
  return A;
}

}  // namespace

TEST_CASE("mat_power small cases") {
  CHECK(mat_power(ComplexMatrix::Identity(3, 3), 5).isApprox(ComplexMatrix::Identity(3, 3)));
  CHECK(std::abs(mat_power(diag({0.5}), 3)(0, 0) - 0.125) < 1e-15);
  ComplexMatrix N = ComplexMatrix::Zero(2, 2);
  N(0, 1) = 1.0;
  CHECK(mat_power(N, 2).isZero(0));
  CHECK(mat_power(N, 0).isApprox(ComplexMatrix::Identity(2, 2)));
}

TEST_CASE("mat_power is a semigroup") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const int d = 1 + t % 6;
    const ComplexMatrix T = random_matrix(rng, d, 2.0 * double(t % 5 + 1) / 5.0);
    const unsigned m = rng() % 33, n = rng() % 32;
    const ComplexMatrix lhs = mat_power(T, m + n);
    const ComplexMatrix rhs = mat_power(T, m) * mat_power(T, n);
    CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, lhs.norm()));
  }
}

TEST_CASE("singular_extremes") {
  auto s = singular_extremes(diag({3.0, 1.0}));
  CHECK(s.sigma_max == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.sigma_min == doctest::Approx(1.0).epsilon(1e-14));

  // 4-point DFT scaled to be unitary
  ComplexMatrix F(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) F(j, k) = std::polar(0.5, -2.0 * std::numbers::pi * j * k / 4.0);
  s = singular_extremes(F);
  CHECK(s.sigma_max == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.sigma_min == doctest::Approx(1.0).epsilon(1e-14));

  // [[1,1],[0,1]]: AᴴA = [[1,1],[1,2]], eigenvalues (3 ± √5)/2.
  ComplexMatrix J(2, 2);
  J << 1.0, 1.0, 0.0, 1.0;
  const double tr = 3.0, det = 1.0;
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  s = singular_extremes(J);
  CHECK(s.sigma_max == doctest::Approx(std::sqrt((tr + disc) / 2.0)).epsilon(1e-14));
  CHECK(s.sigma_min == doctest::Approx(std::sqrt((tr - disc) / 2.0)).epsilon(1e-14));
  CHECK(s.sigma_max == doctest::Approx(1.6180339887498949).epsilon(1e-14));
}

TEST_CASE("singular_extremes ignores diagonal unitary phases") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 5;
    const ComplexMatrix A = random_matrix(rng, d, 3.0);
    ComplexMatrix P = ComplexMatrix::Zero(d, d), Q = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      P(i, i) = std::polar(1.0, u(rng));
      Q(i, i) = std::polar(1.0, u(rng));
    }
    const auto a = singular_extremes(A);
    const auto b = singular_extremes(ComplexMatrix(P * A * Q));
    CHECK(std::abs(a.sigma_max - b.sigma_max) <= 1e-12 * a.sigma_max);
    CHECK(std::abs(a.sigma_min - b.sigma_min) <= 1e-12 * a.sigma_max);
  }
}

TEST_CASE("resolvent_norm") {
  CHECK(resolvent_norm(ComplexMatrix::Zero(3, 3), Complex(2.0)) == doctest::Approx(0.5).epsilon(1e-15));

  ComplexMatrix J(2, 2);
  J << 1.0, 1.0, 0.0, 1.0;
  // 2I − J = [[1,−1],[0,1]], same singular values as J.
  CHECK(resolvent_norm(J, Complex(2.0)) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const Complex d1(u(rng), u(rng)), d2(u(rng), u(rng)), d3(u(rng), u(rng));
    const Complex lambda(3.0 * u(rng), 3.0 * u(rng));
    const double expect = 1.0 / std::min({std::abs(lambda - d1), std::abs(lambda - d2), std::abs(lambda - d3)});
    CHECK(resolvent_norm(diag({d1, d2, d3}), lambda) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("resolvent_norm times sigma_min is one") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const ComplexMatrix T = random_matrix(rng, 1 + t % 7, 0.9);
    const Complex lambda = std::polar(1.0 + 0.1 * (t + 1), 0.3 * t);
    const double r = resolvent_norm(T, lambda);
    CHECK(r * singular_extremes(shifted(T, lambda)).sigma_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(resolvent_norm(T, lambda, Norm::L2) == r);
    const ComplexMatrix R = resolvent(T, lambda);
    CHECK((R * shifted(T, lambda) - ComplexMatrix::Identity(T.rows(), T.cols())).norm() < 1e-12);
  }
}

TEST_CASE("resolvent at an eigenvalue is singular") {
  CHECK_THROWS_AS(resolvent_norm(diag({2.0, 0.5}), Complex(2.0)), SingularResolvent);
  CHECK_THROWS_AS(resolvent(diag({2.0, 0.5}), Complex(2.0)), SingularResolvent);
  try {
    resolvent_norm(diag({2.0}), Complex(2.0));
  } catch (const SingularResolvent& e) {
    CHECK(e.lambda() == Complex(2.0));
    CHECK(e.sigma_min() == 0.0);
  }
}

TEST_CASE("operator norms") {
  ComplexMatrix A(2, 2);
  A << 1.0, 2.0, 3.0, 4.0;
  CHECK(operator_norm(A, Norm::L1) == 6.0);
  CHECK(operator_norm(A, Norm::LInf) == 7.0);
  CHECK(operator_norm(A, Norm::L2) == doctest::Approx(5.464985704219043).epsilon(1e-14));
}

TEST_CASE("check_operator rejects bad input") {
  CHECK_THROWS_AS(check_operator(ComplexMatrix(2, 3)), DomainError);
  CHECK_THROWS_AS(check_operator(ComplexMatrix(0, 0)), DomainError);
  CHECK_THROWS_AS(check_operator(ComplexMatrix::Zero(513, 513)), DomainError);
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(1, 0) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(check_operator(A), DomainError);
}

TEST_CASE("long double instantiation") {
  ComplexMatrixT<long double> T(2, 2);
  T << 0.5L, 1.0L, 0.0L, 0.25L;
  const auto P = mat_power(T, 3);
  CHECK(std::abs(P(0, 0) - std::complex<long double>(0.125L)) < 1e-18L);
  CHECK(std::abs(P(0, 1) - std::complex<long double>(0.4375L)) < 1e-17L);
  const long double r = resolvent_norm(T, std::complex<long double>(2.0L));
  CHECK(r > 0.0L);
}

TEST_CASE("matrix JSON") {
  const ComplexMatrix T = parse_matrix_json(R"({"dim": 2, "entries": [[1,0],[0,2],[3,-1],[0.5,0]]})");
  CHECK(T(0, 1) == Complex(0.0, 2.0));
  CHECK(T(1, 0) == Complex(3.0, -1.0));
  CHECK(parse_matrix_json(matrix_to_json(T)) == T);

  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 2, "entries": [[1,0],[0,2],[3,-1]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 0, "entries": []})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 1, "entries": [[1]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 1.5, "entries": [[1,0]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"([1,2])"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 1, "entries": [[1,0]]}{)"), ParseError);

  const auto pts = parse_points_json("[[0.5, 0.25], [-1, 0]]");
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == Complex(0.5, 0.25));
  CHECK_THROWS_AS(parse_points_json("[[0.5]]"), ParseError);
}
