#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "dphase/errors.hpp"
#include "dphase/kernels.hpp"
#include "support.hpp"

using namespace dphase;
using namespace dphase::testing;

namespace {
const Domain unit = Domain::interval(0.0, 1.0);
const Point mid{0.5, 0.0};

ExponentField cst(double p) { return ExponentField::constant(unit, p); }
ExponentField var(const char* e) { return ExponentField::from_expression(unit, Expression::parse(e)); }

// int_0^t s phi(s) ds by adaptive tanh-sinh.
double density_oracle(const KernelSpec& k, const Point& x, double t) {
  boost::math::quadrature::tanh_sinh<double> ts;
  // default tolerance is sqrt(eps), too loose for 1e-9
  return ts.integrate([&](double s) { return s > 0.0 ? s * k.value(x, s) : 0.0; }, 0.0, t, 1e-14);
}

std::vector<KernelSpec> builtins(const ExponentField& p) {
  return {make_power_kernel(p), make_mean_curvature_kernel(p), make_capillarity_kernel(p)};
}
}  // namespace

TEST_CASE("power kernel") {
  const auto k2 = make_power_kernel(cst(2));
  for (double xi : {1e-3, 0.7, 5.0}) CHECK(k2.value(mid, xi) == doctest::Approx(1.0));
  const auto k3 = make_power_kernel(cst(3));
  CHECK(k3.value(mid, 2.0) == doctest::Approx(2.0));
  CHECK(k3.density(mid, 2.0) == doctest::Approx(8.0 / 3.0));
  const auto kv = make_power_kernel(var("2 + x"));
  CHECK(kv.value(mid, 4.0) == doctest::Approx(2.0));
  CHECK_FALSE(kv.derivative_is_approximate());
  CHECK_FALSE(kv.density_is_quadrature());
}

TEST_CASE("mean curvature kernel") {
  const auto k2 = make_mean_curvature_kernel(cst(2));
  CHECK(k2.value(mid, 3.0) == doctest::Approx(1.0));
  CHECK(k2.density(mid, 1.7) == doctest::Approx(1.7 * 1.7 / 2));
  CHECK(make_mean_curvature_kernel(cst(4)).value(mid, 1.0) == doctest::Approx(2.0));
  const auto k3 = make_mean_curvature_kernel(cst(3));
  CHECK(k3.density(mid, 1.0) == doctest::Approx((2 * std::sqrt(2.0) - 1) / 3).epsilon(1e-14));
  CHECK(k3.density(mid, 1.0) == doctest::Approx(0.609476).epsilon(1e-6));
}

TEST_CASE("capillarity kernel") {
  const auto k2 = make_capillarity_kernel(cst(2));
  CHECK(k2.value(mid, 1.0) == doctest::Approx(1 + 1 / std::sqrt(2.0)).epsilon(1e-14));
  const auto k3 = make_capillarity_kernel(cst(3));
  CHECK(k3.value(mid, 1e-8) < 1e-7);

  // two independent quadratures of s (1 + s^2 / sqrt(1 + s^4)) on [0, 1]
  auto f = [](double s) { return s * (1 + s * s / std::sqrt(1 + s * s * s * s)); };
  const double gk = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double th = ts.integrate(f, 0.0, 1.0);
  CHECK(std::abs(gk - th) <= 1e-10);
  CHECK(std::abs(k2.density(mid, 1.0) - gk) <= 1e-10);
}

TEST_CASE("density matches quadrature of s phi(s) for every built-in") {
  for (const auto& p : {cst(1.3), cst(2), cst(3.5), cst(5), var("1.5 + 2 * x")}) {
    for (const auto& k : builtins(p)) {
      for (const Point x : {Point{0.1, 0}, Point{0.77, 0}}) {
        CHECK(k.density(x, 0.0) == 0.0);
        double prev = 0.0;
        for (double t : {1e-3, 0.1, 0.9, 1.0, 3.0, 17.0, 120.0}) {
          const double d = k.density(x, t);
          INFO(k.name(), " p=", k.exponent()(x), " t=", t);
          CHECK(rel_diff(d, density_oracle(k, x, t)) <= 1e-9);
          CHECK(d >= prev);
          prev = d;
          // truncation is ~h^2/t^2, so the fixed step is only meaningful away from 0
          if (t < 0.1) continue;
          const double h = 1e-5 * std::max(1.0, t);
          const double dd = (k.density(x, t + h) - k.density(x, t - h)) / (2 * h);
          CHECK(rel_diff(dd, k.value(x, t) * t) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("closed-form derivatives match central differences") {
  for (const auto& p : {cst(1.4), cst(2), cst(4.5), var("2 + x")}) {
    for (const auto& k : builtins(p)) {
      for (double xi : {1e-2, 0.3, 1.0, 2.5, 40.0}) {
        const double h = 1e-6 * std::max(1.0, xi);
        const double fd = (k.value(mid, xi + h) - k.value(mid, xi - h)) / (2 * h);
        const double d = k.xi_derivative(mid, xi);
        INFO(k.name(), " xi=", xi);
        CHECK(std::abs(d - fd) <= 1e-6 * (1 + std::abs(d)) + 1e-7 * std::abs(k.value(mid, xi)) / xi);
      }
    }
  }
}

TEST_CASE("expression kernels use numerical derivative and density") {
  const auto k = make_expression_kernel(var("2 + x"), Expression::parse("xi ^ (p - 2)"));
  const auto ref = make_power_kernel(var("2 + x"));
  CHECK(k.derivative_is_approximate());
  CHECK(k.density_is_quadrature());
  for (double t : {0.2, 1.0, 4.5}) {
    // s^1.5 is not smooth at 0, Gauss panels converge algebraically there
    CHECK(rel_diff(k.density(mid, t), ref.density(mid, t)) <= 1e-8);
    CHECK(rel_diff(k.xi_derivative(mid, t), ref.xi_derivative(mid, t)) <= 1e-6);
  }
  CHECK_THROWS_AS(make_builtin_kernel("laplace", cst(2)), ParseError);
  CHECK(make_builtin_kernel("capillarity", cst(2)).name() == "capillarity");
}

TEST_CASE("flux is zero at the origin and monotone") {
  std::mt19937_64 rng(5);
  for (const auto& p : {cst(1.3), cst(2), cst(4)}) {
    for (const auto& k : builtins(p)) {
      const auto f0 = k.flux(mid, p(mid), {0.0, 0.0});
      CHECK(f0[0] == 0.0);
      CHECK(f0[1] == 0.0);
      for (int i = 0; i < 200; ++i) {
        const std::array<double, 2> u{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        const std::array<double, 2> v{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        const auto fu = k.flux(mid, p(mid), u);
        const auto fv = k.flux(mid, p(mid), v);
        CHECK((fu[0] - fv[0]) * (u[0] - v[0]) + (fu[1] - fv[1]) * (u[1] - v[1]) >= 0.0);
      }
    }
  }
}

TEST_CASE("growth") {
  const auto grid = SampleGrid::make(unit);
  const auto pw = validate_growth(make_power_kernel(cst(3)), grid);
  CHECK(pw.pass);
  CHECK(pw.b_estimate <= 1.0 + 1e-12);
  CHECK(pw.violations.empty());

  const auto cap = validate_growth(make_capillarity_kernel(cst(2)), grid);
  CHECK(cap.pass);
  CHECK(cap.b_estimate <= 2.0);

  const auto ex = validate_growth(make_expression_kernel(cst(2), Expression::parse("exp(xi)")), grid);
  CHECK_FALSE(ex.pass);
  CHECK_FALSE(ex.violations.empty());
}

TEST_CASE("ellipticity") {
  const auto grid = SampleGrid::make(unit);
  const auto pw = validate_ellipticity(make_power_kernel(cst(3)), grid);
  CHECK(pw.pass);
  CHECK(pw.c_estimate >= 1.0 - 1e-12);

  const auto mc = validate_ellipticity(make_mean_curvature_kernel(cst(4)), grid);
  CHECK(mc.pass);
  CHECK(mc.c_estimate >= 1.0 - 1e-12);

  const auto bad = validate_ellipticity(
      make_expression_kernel(cst(3), Expression::parse("xi ^ (p - 2) * sin(xi) ^ 2")), grid);
  CHECK_FALSE(bad.pass);
  CHECK(bad.approximate);
  CHECK(bad.pass == bad.violations.empty());
}

TEST_CASE("built-ins satisfy growth and ellipticity for p- >= 1.1") {
  const auto grid = SampleGrid::make(unit);
  for (const auto& p : {cst(1.1), cst(1.6), cst(2), cst(3.5), var("1.1 + 3 * x")})
    for (const auto& k : builtins(p)) {
      INFO(k.name(), " p- = ", p.p_minus());
      CHECK(validate_growth(k, grid).pass);
      CHECK(validate_ellipticity(k, grid).pass);
    }
  const auto g2 = SampleGrid::make(Domain::rectangle(0, 1, 0, 1));
  CHECK(g2.x.size() == 64);
  CHECK(g2.xi.size() == 121);
}

TEST_CASE("energy bound margins") {
  const auto grid = SampleGrid::make(unit);
  const auto eq = validate_h4(make_power_kernel(cst(2)), make_power_kernel(cst(2)), 2.0, grid);
  CHECK(eq.pass);
  CHECK(std::abs(eq.h4_margin) <= 1e-12);

  const auto lit = validate_h4(make_power_kernel(cst(2)), make_power_kernel(cst(5)), 2.0, grid);
  CHECK_FALSE(lit.pass);
  CHECK(lit.h4_margin < 0.0);

  const auto alt = validate_h4(make_power_kernel(cst(2)), make_power_kernel(cst(5)), 5.0, grid);
  CHECK(alt.pass);
}

TEST_CASE("Simon-type estimate") {
  const auto k2 = make_power_kernel(cst(2));
  const std::vector<SimonPair> same{{mid, {1.0, 2.0}, {1.0, 2.0}}};
  const auto r0 = simon_estimate_check(k2, same, 1.0, 2);
  CHECK(r0.pass());
  CHECK(r0.worst_slack == 0.0);

  std::mt19937_64 rng(17);
  std::vector<SimonPair> pairs;
  for (int i = 0; i < 1000; ++i)
    pairs.push_back({{uniform(rng, 0, 1), 0.0},
                     {uniform(rng, -5, 5), uniform(rng, -5, 5)},
                     {uniform(rng, -5, 5), uniform(rng, -5, 5)}});
  // linear case: lhs = |u-v|^2 against |u-v|^2 / 4
  const auto lin = simon_estimate_check(k2, pairs, 1.0, 2);
  CHECK(lin.pass());
  CHECK(lin.worst_slack == doctest::Approx(0.75));

  const auto cap = make_capillarity_kernel(cst(2.5));
  const double c = validate_ellipticity(cap, SampleGrid::make(unit)).c_estimate;
  const auto rc = simon_estimate_check(cap, pairs, c, 2);
  CHECK(rc.checked == 1000);
  CHECK(rc.violations == 0);

  // too large a constant is caught
  CHECK_FALSE(simon_estimate_check(k2, pairs, 10.0, 2).pass());
}
