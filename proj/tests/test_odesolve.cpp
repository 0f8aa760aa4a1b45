#include <cmath>
#include <numbers>

#include "bandlim/errors.hpp"
#include "bandlim/odesolve.hpp"
#include "bandlim/specfun.hpp"
#include "doctest.h"

using namespace bandlim;
using std::numbers::pi;

namespace {

const TransformConfig& calibrated() {
  static const TransformConfig config;
  return config;
}

const DifferentialOperator kIdentity({1.0});
const DifferentialOperator kHelmholtz({1.0, 0.0, -1.0});  // 1 - d^2/dz^2

}  // namespace

TEST_CASE("operator validation") {
  CHECK_THROWS_AS(DifferentialOperator({}), ValidationError);
  CHECK_THROWS_AS(DifferentialOperator({1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(DifferentialOperator({Complex(std::nan(""))}), ValidationError);
  CHECK_NOTHROW(DifferentialOperator({0.0}));
  CHECK(kHelmholtz.order() == 2);
}

TEST_CASE("symbol examples") {
  CHECK(symbol_eval(kIdentity, 0.5) == Complex(1.0));
  CHECK(std::abs(symbol_eval(DifferentialOperator({0.0, 1.0}), 0.5) - Complex(0.0, 0.5)) < 1e-16);
  CHECK(std::abs(symbol_eval(kHelmholtz, 0.0) - 1.0) < 1e-16);
  CHECK(std::abs(symbol_eval(kHelmholtz, 0.5) - 1.25) < 1e-16);
  CHECK(std::abs(symbol_eval(kHelmholtz, 1.0) - 2.0) < 1e-16);
}

TEST_CASE("apply_operator examples") {
  const auto& config = calibrated();
  const LegendreSeries f({0.5, Complex(0, 1), -0.25, 0.125});
  for (double z : {-2.0, 0.0, 3.5}) {
    CHECK(apply_operator(kIdentity, f, z, config) == forward_transform(f, z, config));
  }
  const LegendreSeries one({1.0});
  CHECK(std::abs(apply_operator(DifferentialOperator({0.0, 1.0}), one, 0.0, config)) < 1e-14);
  const Integrand lorentz = [](double t) { return Complex(1.0 / (1.0 + t * t)); };
  CHECK(std::abs(apply_operator(kHelmholtz, lorentz, 0.0, config) - 2.0) < 1e-12);
}

TEST_CASE("apply_operator differentiates the forward image") {
  // d/dz of 2 j_0 is -2 j_1
  const LegendreSeries one({1.0});
  const DifferentialOperator d({0.0, 1.0});
  for (double z : {0.7, 4.0, 11.0}) {
    CHECK(std::abs(apply_operator(d, one, z, calibrated()) + 2.0 * spherical_j(1, z)) < 1e-13);
  }
}

TEST_CASE("solve examples") {
  const auto& config = calibrated();

  const auto id = solve(kIdentity, BesselSeries({2.0}), 4, config);
  CHECK(std::abs(id.g_at(1.0) - 1.6829420) < 1e-7);
  CHECK(std::abs(id.g_at(1.0) - 2.0 * std::sin(1.0)) < 1e-10);
  CHECK(id.residual() < 1e-10);

  const auto even = solve(kHelmholtz, BesselSeries({2.0}), 16, config);
  CHECK(std::abs(even.g_at(0.0) - pi / 2) < 1e-9);
  CHECK(even.residual() < 1e-8);

  const auto odd = solve(kHelmholtz, BesselSeries({0.0, Complex(0, 2)}), 16, config);
  CHECK(std::abs(odd.g_at(0.0)) < 1e-10);
  CHECK(odd.residual() < 1e-8);
  // f = t / (1 + t^2) at the nodes
  const auto& rule = odd.rule();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes()[i];
    CHECK(std::abs(odd.f_at_nodes()[i] - t / (1 + t * t)) < 1e-12);
  }
}

TEST_CASE("identity solve reproduces h on the check grid") {
  const BesselSeries h({1.0, Complex(0.5, -0.5), 0.25});
  const auto sol = solve(kIdentity, h, 4, calibrated());
  REQUIRE(sol.check_grid().size() == 41);
  for (double z : sol.check_grid()) CHECK(std::abs(sol.g_at(z) - h(z)) < 1e-10);
}

TEST_CASE("the exported series approximates the transform-side solution") {
  // Legendre coefficients of 1/(1+t^2) decay like (sqrt(2)-1)^n
  const auto s16 = solve(kHelmholtz, BesselSeries({2.0}), 16, calibrated());
  const auto s32 = solve(kHelmholtz, BesselSeries({2.0}), 32, calibrated());
  CHECK(s16.f_series().degree() == 16);
  for (double t : {-0.9, -0.2, 0.0, 0.6}) {
    CHECK(std::abs(s16.f_series()(t) - 1.0 / (1.0 + t * t)) < 1e-6);
    CHECK(std::abs(s32.f_series()(t) - 1.0 / (1.0 + t * t)) < 1e-11);
  }
}

TEST_CASE("symbol division read backwards") {
  const BesselSeries h({1.0, 0.0, Complex(0.0, -0.75), 0.2});
  const DifferentialOperator op({2.0, Complex(0.0, 0.5), 1.0});
  const auto sol = solve(op, h, 12, calibrated());
  for (double z : {-7.0, 0.0, 2.5, 9.0}) {
    const Complex lg = apply_operator_nodes(op, sol.f_at_nodes(), z, sol.rule());
    CHECK(std::abs(lg - h(z)) <= sol.residual() + 1e-15);
  }
}

TEST_CASE("solve is linear in h") {
  const BesselSeries h1({2.0});
  const BesselSeries h2({0.0, Complex(0, 2), 0.5});
  const Complex a(1.5, -0.5), b(-0.25, 2.0);
  const BesselSeries combo({a * 2.0, b * Complex(0, 2), b * 0.5});
  const auto s1 = solve(kHelmholtz, h1, 16, calibrated());
  const auto s2 = solve(kHelmholtz, h2, 16, calibrated());
  const auto s = solve(kHelmholtz, combo, 16, calibrated());
  for (double z : default_check_grid()) {
    CHECK(std::abs(s.g_at(z) - (a * s1.g_at(z) + b * s2.g_at(z))) < 1e-8);
  }
}

TEST_CASE("degree stability") {
  for (const auto& h : {BesselSeries({2.0}), BesselSeries({0.0, Complex(0, 2)})}) {
    const auto s16 = solve(kHelmholtz, h, 16, calibrated());
    const auto s32 = solve(kHelmholtz, h, 32, calibrated());
    for (double z : default_check_grid()) CHECK(std::abs(s16.g_at(z) - s32.g_at(z)) < 1e-8);
  }
}

TEST_CASE("singular symbols are refused") {
  const DifferentialOperator resonant({0.25, 0.0, 1.0});  // d^2/dz^2 + 1/4
  try {
    solve(resonant, BesselSeries({2.0}), 8, calibrated());
    FAIL("expected SingularSymbol");
  } catch (const SingularSymbol& e) {
    CHECK(std::fabs(std::fabs(e.near_t()) - 0.5) < 1e-6);
  }
  // roots between the default samples and off-centre
  CHECK_THROWS_AS(solve(DifferentialOperator({0.1234567 * 0.1234567, 0.0, 1.0}), BesselSeries({1.0}), 4,
                        calibrated()),
                  SingularSymbol);
  CHECK_THROWS_AS(solve(DifferentialOperator({Complex(0.0, -0.777), 1.0}), BesselSeries({1.0}), 4, calibrated()),
                  SingularSymbol);
  CHECK_THROWS_AS(solve(DifferentialOperator({1.0, 0.0, 1.0}), BesselSeries({1.0}), 4, calibrated()),
                  SingularSymbol);
  // a near miss just outside [-1, 1] is fine
  CHECK_NOTHROW(solve(DifferentialOperator({1.1 * 1.1, 0.0, 1.0}), BesselSeries({1.0}), 4, calibrated()));
  CHECK_THROWS_AS(solve(DifferentialOperator({0.0}), BesselSeries({1.0}), 4, calibrated()), SingularSymbol);
  CHECK_THROWS_AS(solve(resonant, BesselSeries({0.0}), 4, calibrated()), ValidationError);
}

TEST_CASE("residual above the threshold is reported, not returned") {
  SolveOptions strict;
  strict.residual_threshold = 1e-30;
  try {
    solve(kHelmholtz, BesselSeries({2.0}), 16, calibrated(), strict);
    FAIL("expected ResidualTooLarge");
  } catch (const ResidualTooLarge& e) {
    CHECK(e.residual() > 1e-30);
    CHECK(std::isfinite(e.residual()));
  }
}
