#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rk/errors.hpp"
#include "rk/rk_condition.hpp"

using namespace rk;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix A = ComplexMatrix::Zero(d.size(), d.size());
  int i = 0;
  for (Complex z : d) {
    A(i, i) = z;
    ++i;
  }
  return A;
}

// Independent evaluation of the bound, straight from the definition.
double bound_oracle(Complex lambda, double alpha, double beta, double c) {
  const double m = std::abs(lambda);
  return c * std::pow(m, alpha + beta - 1.0) / (std::pow(std::abs(lambda - 1.0), alpha) * std::pow(m - 1.0, beta));
}

}  // namespace

TEST_CASE("RKParams validation") {
  CHECK_NOTHROW(RKParams(0.0, 0.0, 1.0));
  CHECK_THROWS_AS(RKParams(0.5, 0.5, 0.99), DomainError);
  CHECK_THROWS_AS(RKParams(-0.1, 0.5, 2.0), DomainError);
  CHECK_THROWS_AS(RKParams(0.1, std::nan(""), 2.0), DomainError);
  CHECK(RKParams(1.0, 0.0, 4.0).q() == 0.25);
}

TEST_CASE("unit_sum_sign tolerance") {
  CHECK(unit_sum_sign(0.5, 0.5) == 0);
  CHECK(unit_sum_sign(0.3, 0.7 + 1e-13) == 0);
  CHECK(unit_sum_sign(0.3, 0.7 + 1e-11) == 1);
  CHECK(unit_sum_sign(0.25, 0.25) == -1);
}

TEST_CASE("rk_bound") {
  CHECK(rk_bound(Complex(2.0), RKParams(0.0, 1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rk_bound(Complex(2.0), RKParams(1.0, 0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  const Complex l(1.0, 1.0);
  const double expect = 2.0 / std::sqrt(std::sqrt(2.0) - 1.0);
  CHECK(rk_bound(l, RKParams(0.5, 0.5, 2.0)) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(3.1076).epsilon(1e-4));
  CHECK_THROWS_AS(rk_bound(Complex(0.0, 1.0), RKParams(0.5, 0.5, 2.0)), DomainError);
  CHECK_THROWS_AS(rk_bound(Complex(0.5), RKParams(0.5, 0.5, 2.0)), DomainError);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Complex lambda = std::polar(1.0 + 9.0 * u(rng) + 1e-9, 2.0 * std::numbers::pi * u(rng));
    const double a = 3.0 * u(rng), b = 3.0 * u(rng), c = 1.0 + 5.0 * u(rng);
    CHECK(rk_bound(lambda, RKParams(a, b, c)) == doctest::Approx(bound_oracle(lambda, a, b, c)).epsilon(1e-12));
  }
}

TEST_CASE("rk_ratio") {
  CHECK(rk_ratio(ComplexMatrix::Zero(3, 3), Complex(1.5, -2.0), 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  const double eps = 1e-3;
  CHECK(rk_ratio(ComplexMatrix::Identity(2, 2), Complex(1.0 + eps), 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double l = 1.0001;
  const double expect = l / std::min(std::abs(l - 0.5), std::abs(l + 0.5));
  CHECK(rk_ratio(diag({0.5, -0.5}), Complex(l), 0.0, 0.0) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(expect == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("lambda grids") {
  const LambdaGrid g = LambdaGrid::standard();
  REQUIRE(g.radii().size() == 48);
  REQUIRE(g.angles().size() == 256);
  CHECK(g.radii().front() == doctest::Approx(1.0 + 1e-6).epsilon(1e-15));
  CHECK(g.radii().back() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(g.angles().front() == 0.0);
  const LambdaGrid c = LambdaGrid::scaled(0.25);
  CHECK(c.radii().size() == 12);
  CHECK(c.angles().size() == 64);
  CHECK(c.radii().front() - 1.0 == doctest::Approx(1.6e-5).epsilon(1e-12));
  CHECK_THROWS_AS(LambdaGrid({1.0}, {0.0}), DomainError);
  CHECK_THROWS_AS(LambdaGrid({}, {0.0}), DomainError);
}

TEST_CASE("estimate_min_c simple operators") {
  const LambdaGrid grid = LambdaGrid::standard();
  CHECK(estimate_min_c(ComplexMatrix::Zero(2, 2), 0.0, 0.0, grid).c_hat == doctest::Approx(1.0).epsilon(1e-3));

  const auto id = estimate_min_c(ComplexMatrix::Identity(2, 2), 1.0, 0.0, grid);
  CHECK(std::abs(id.c_hat - 1.0) < 1e-6);
  CHECK(std::abs(id.argmax_lambda.imag()) < 1e-12);
}

TEST_CASE("estimate_min_c agrees with a refined brute-force sweep") {
  const ComplexMatrix T = diag({std::polar(0.9, std::numbers::pi / 8.0)});
  const auto est = estimate_min_c(T, 1.0, 0.0, LambdaGrid::standard());
  // For a 1×1 operator the ratio is |λ−1| / |λ − z|.
  const Complex z = T(0, 0);
  double best = 0.0;
  const LambdaGrid fine = LambdaGrid::log_spaced(480, 1e-7, 9.0, 2560);
  for (double r : fine.radii())
    for (double t : fine.angles()) {
      const Complex l = std::polar(r, t);
      best = std::max(best, std::abs(l - 1.0) / std::abs(l - z));
    }
  CHECK(est.c_hat <= best * (1.0 + 1e-12));
  CHECK(est.c_hat == doctest::Approx(best).epsilon(0.01));
}

TEST_CASE("every grid ratio is bounded by c_hat; result independent of threads") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  const LambdaGrid grid = LambdaGrid::log_spaced(10, 1e-4, 9.0, 40);
  for (int t = 0; t < 5; ++t) {
    ComplexMatrix T = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) T(i, j) = Complex(g(rng), g(rng)) * (i == j ? 0.3 : 0.2);
    const double a = 0.3 * t, b = 0.2 * (4 - t);
    const auto e1 = estimate_min_c(T, a, b, grid, Norm::L2, 1);
    const auto e3 = estimate_min_c(T, a, b, grid, Norm::L2, 3);
    CHECK(e1.c_hat == e3.c_hat);
    CHECK(e1.radius_index == e3.radius_index);
    CHECK(e1.angle_index == e3.angle_index);
    for (std::size_t ri = 0; ri < grid.radii().size(); ++ri)
      for (std::size_t ai = 0; ai < grid.angles().size(); ++ai)
        CHECK(rk_ratio(T, grid.point(ri, ai), a, b) <= e1.c_hat);
    CHECK(rk_ratio(T, e1.argmax_lambda, a, b) == e1.c_hat);
  }
}

TEST_CASE("c_hat transfer bound between exponent pairs") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  const LambdaGrid grid = LambdaGrid::log_spaced(12, 1e-4, 9.0, 48);
  for (int t = 0; t < 4; ++t) {
    ComplexMatrix T = ComplexMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) T(i, j) = Complex(g(rng), g(rng)) * 0.25;
    const double a0 = 0.2, b0 = 0.1, a1 = 0.5 + 0.1 * t, b1 = 0.4;
    const double c0 = estimate_min_c(T, a0, b0, grid).c_hat;
    const double c1 = estimate_min_c(T, a1, b1, grid).c_hat;
    double factor = 0.0;
    for (std::size_t ri = 0; ri < grid.radii().size(); ++ri)
      for (std::size_t ai = 0; ai < grid.angles().size(); ++ai) {
        const Complex l = grid.point(ri, ai);
        const double m = std::abs(l);
        factor = std::max(factor, std::pow(std::abs(l - 1.0), a1 - a0) * std::pow(m - 1.0, b1 - b0) *
                                      std::pow(m, (a0 + b0) - (a1 + b1)));
      }
    CHECK(c1 <= c0 * factor * (1.0 + 1e-12));
  }
}

TEST_CASE("pointwise inclusion bounds") {
  const auto real_axis = pointwise_inclusion_bounds(Complex(2.0), 0.7, 0.4, 1.0);
  CHECK(real_axis.ritt_like == doctest::Approx(real_axis.mid).epsilon(1e-14));
  CHECK(real_axis.mid == doctest::Approx(real_axis.kreiss_like).epsilon(1e-14));

  const Complex l(1.0, 1.0);
  const auto b = pointwise_inclusion_bounds(l, 0.5, 0.5, 1.0);
  CHECK(b.ritt_like == doctest::Approx(bound_oracle(l, 1.0, 0.0, 1.0)).epsilon(1e-14));
  CHECK(b.ritt_like == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.mid == doctest::Approx(1.5538).epsilon(1e-4));
  CHECK(b.kreiss_like == doctest::Approx(1.0 / (std::sqrt(2.0) - 1.0)).epsilon(1e-14));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const Complex lambda = std::polar(1.0 + 9.0 * u(rng) + 1e-12, 2.0 * std::numbers::pi * u(rng));
    const double a = 2.0 * u(rng), be = 2.0 * u(rng);
    const auto r = pointwise_inclusion_bounds(lambda, a, be, 1.0 + u(rng));
    CHECK(r.ritt_like <= r.mid * (1.0 + 1e-13));
    CHECK(r.mid <= r.kreiss_like * (1.0 + 1e-13));
    if (a > 1e-3 && be > 1e-3 && std::abs(lambda.imag()) > 1e-3) {
      CHECK(r.ritt_like < r.mid);
      CHECK(r.mid < r.kreiss_like);
    }
  }
}

TEST_CASE("torus constants") {
  CHECK(torus_constant(RKParams(0.7, 0.0, 3.0)) == 3.0);
  CHECK(torus_constant(RKParams(0.5, 0.5, 2.0)) == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(torus_constant(RKParams(0.75, 0.5, 2.0)) == doctest::Approx(16.0 * std::pow(2.0, 1.5)).epsilon(1e-14));
  CHECK(torus_constant(RKParams(0.75, 0.5, 2.0)) == doctest::Approx(45.2548).epsilon(1e-5));
  CHECK_THROWS_AS(torus_constant(RKParams(0.5, 1.0, 2.0)), DomainError);

  for (double a : {0.0, 0.3, 0.8, 1.7})
    for (double b : {0.0, 0.2, 0.6, 0.9}) {
      double prev = 0.0;
      for (int i = 0; i <= 99; ++i) {
        const double c = 1.0 + i;
        const double v = torus_constant(RKParams(a, b, c));
        CHECK(v >= prev);
        prev = v;
      }
      const double c0 = torus_constant(RKParams(a, b, 5.0));
      const double c1 = torus_constant(RKParams(a, b, 5.0 + 1e-9));
      CHECK(std::abs(c1 - c0) <= 1e-6 * c0);
    }
}

TEST_CASE("torus bound") {
  CHECK(torus_bound(std::numbers::pi, RKParams(1.0, 0.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(torus_bound(std::numbers::pi, RKParams(0.75, 0.5, 2.0)) == doctest::Approx(16.0).epsilon(1e-13));
  CHECK(torus_bound(std::numbers::pi / 2.0, RKParams(0.5, 0.5, 2.0)) ==
        doctest::Approx(16.0 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(torus_bound(0.0, RKParams(0.5, 0.5, 2.0)), DomainError);
  CHECK_THROWS_AS(torus_bound(2.0 * std::numbers::pi, RKParams(0.5, 0.5, 2.0)), DomainError);
  CHECK_THROWS_AS(torus_bound(1.0, RKParams(0.5, 1.5, 2.0)), DomainError);
}
