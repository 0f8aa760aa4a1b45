#include <cmath>
#include <limits>
#include <numbers>

#include "bandlim/errors.hpp"
#include "bandlim/quadrature.hpp"
#include "doctest.h"

using namespace bandlim;

TEST_CASE("gauss_legendre_rule examples") {
  const auto one = gauss_legendre_rule(1);
  REQUIRE(one.size() == 1);
  CHECK(one.nodes()[0] == 0.0);
  CHECK(one.weights()[0] == 2.0);

  const auto two = gauss_legendre_rule(2);
  const double r = 1.0 / std::sqrt(3.0);
  CHECK(std::fabs(two.nodes()[0] + r) < 1e-15);
  CHECK(std::fabs(two.nodes()[1] - r) < 1e-15);
  CHECK(std::fabs(two.weights()[0] - 1.0) < 1e-15);
  CHECK(std::fabs(two.weights()[1] - 1.0) < 1e-15);

  const auto sixteen = gauss_legendre_rule(16);
  const Complex v = integrate_compact([](double t) { return Complex(std::pow(t, 30)); }, sixteen);
  CHECK(std::fabs(v.real() - 2.0 / 31.0) < 1e-14);
}

TEST_CASE("monomial exactness up to degree 2n-1 for n <= 64") {
  for (int n = 1; n <= 64; ++n) {
    const auto rule = gauss_legendre_rule(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights()[i] * std::pow(rule.nodes()[i], d);
      const double exact = d % 2 == 0 ? 2.0 / (d + 1) : 0.0;
      CAPTURE(n);
      CAPTURE(d);
      REQUIRE(std::fabs(sum - exact) < 1e-13);
    }
  }
}

TEST_CASE("rule invariants for many sizes") {
  for (int n : {1, 2, 3, 7, 31, 64, 65, 100, 257, 1000, 2048, 4095, 4096}) {
    CAPTURE(n);
    const auto rule = gauss_legendre_rule(n);
    REQUIRE(rule.size() == static_cast<std::size_t>(n));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rule.nodes()[i];
      REQUIRE(x > -1.0);
      REQUIRE(x < 1.0);
      if (i > 0) REQUIRE(x > rule.nodes()[i - 1]);
      REQUIRE(std::fabs(x + rule.nodes()[n - 1 - i]) <= 1e-15);
      REQUIRE(rule.weights()[i] > 0.0);
      REQUIRE(std::fabs(rule.weights()[i] - rule.weights()[n - 1 - i]) <= 1e-15);
      sum += rule.weights()[i];
    }
    CHECK(std::fabs(sum - 2.0) <= 1e-14);
  }
}

TEST_CASE("gauss_legendre_rule rejects bad sizes") {
  CHECK_THROWS_AS(gauss_legendre_rule(0), ValidationError);
  CHECK_THROWS_AS(gauss_legendre_rule(-3), ValidationError);
  CHECK_THROWS_AS(gauss_legendre_rule(kMaxGaussPoints + 1), ValidationError);
}

TEST_CASE("QuadratureRule validates user-supplied rules") {
  CHECK_NOTHROW(QuadratureRule({-0.5, 0.5}, {1.0, 1.0}));
  CHECK_THROWS_AS(QuadratureRule({-0.5, 0.5}, {1.0}), ValidationError);
  CHECK_THROWS_AS(QuadratureRule({0.5, -0.5}, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(QuadratureRule({-0.5, 0.4}, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(QuadratureRule({-1.0, 1.0}, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(QuadratureRule({-0.5, 0.5}, {0.9, 0.9}), ValidationError);
  CHECK_THROWS_AS(QuadratureRule({-0.5, 0.0, 0.5}, {1.0, -0.5, 1.5}), ValidationError);
  CHECK_THROWS_AS(QuadratureRule({}, {}), ValidationError);
}

TEST_CASE("integrate_compact examples") {
  for (int n : {1, 5, 32, 64}) {
    const auto rule = gauss_legendre_rule(n);
    CHECK(std::fabs(integrate_compact([](double) { return Complex(1.0); }, rule).real() - 2.0) < 1e-14);
    CHECK(std::abs(integrate_compact([](double t) { return Complex(t); }, rule)) < 1e-15);
  }
  const auto rule = gauss_legendre_rule(32);
  const Complex v = integrate_compact(
      [](double t) { return std::exp(Complex(0.0, std::numbers::pi * t)); }, rule);
  CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("integrate_interval maps the rule") {
  const auto rule = gauss_legendre_rule(20);
  const Complex v = integrate_interval([](double x) { return Complex(std::exp(x)); }, 0.0, 1.0, rule);
  CHECK(std::fabs(v.real() - (std::exp(1.0) - 1.0)) < 1e-14);
}

TEST_CASE("batch and pointwise integrands agree") {
  const auto rule = gauss_legendre_rule(17);
  const Integrand point([](double t) { return Complex(std::cos(3 * t), t * t); });
  const Integrand batch(BatchFunction([](std::span<const double> x, std::span<Complex> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = Complex(std::cos(3 * x[i]), x[i] * x[i]);
  }));
  CHECK(integrate_compact(point, rule) == integrate_compact(batch, rule));
  CHECK(point(0.25) == batch(0.25));
}

TEST_CASE("non-finite integrand values are reported") {
  const auto rule = gauss_legendre_rule(3);
  CHECK_THROWS_AS(integrate_compact([](double t) { return Complex(1.0 / t); }, rule), EvaluationError);
  try {
    integrate_compact([](double t) { return Complex(t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0); },
                      rule);
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.at() == doctest::Approx(std::sqrt(0.6)));
  }
}
