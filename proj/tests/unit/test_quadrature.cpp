#include <cmath>

#include "doctest.h"
#include "dphase/quadrature.hpp"

using namespace dphase;

TEST_CASE("Gauss-Legendre nodes and weights") {
  const auto g5 = gauss_legendre(5);
  // tabulated 5-point rule
  CHECK(g5.nodes[0] == doctest::Approx(-0.9061798459386640).epsilon(1e-14));
  CHECK(g5.nodes[1] == doctest::Approx(-0.5384693101056831).epsilon(1e-14));
  CHECK(std::abs(g5.nodes[2]) < 1e-15);
  CHECK(g5.weights[0] == doctest::Approx(0.2369268850561891).epsilon(1e-14));
  CHECK(g5.weights[2] == doctest::Approx(0.5688888888888889).epsilon(1e-14));

  for (int n : {1, 2, 4, 16, 32, 64}) {
    const auto g = gauss_legendre(n);
    double sum = 0.0;
    for (double w : g.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    // exact for x^k, k <= 2n - 1
    for (int k = 0; k <= 2 * n - 1; k += 1) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += g.weights[static_cast<std::size_t>(i)] *
                                       std::pow(g.nodes[static_cast<std::size_t>(i)], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(q - exact) <= 1e-13);
    }
  }
}

TEST_CASE("composite integration") {
  CHECK(integrate_composite([](double x) { return std::sin(x); }, 0.0, M_PI, 1) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate_composite([](double x) { return std::exp(x); }, 0.0, 3.0, 4, 8) ==
        doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-13));
  CHECK(integrate_composite([](double x) { return std::sqrt(x); }, 0.0, 1.0, 64) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("reference rules") {
  const auto s = QuadratureRule::segment_gauss(4);
  double sum = 0.0;
  for (double w : s.weights) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0));

  // triangle rule: exact for degree 2 on the reference triangle (area 1/2)
  const auto t = QuadratureRule::triangle_degree2();
  auto integral = [&](auto f) {
    double q = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) q += t.weights[i] * f(t.points[i][0], t.points[i][1]);
    return q * 0.5;
  };
  CHECK(integral([](double, double) { return 1.0; }) == doctest::Approx(0.5));
  CHECK(integral([](double a, double) { return a; }) == doctest::Approx(1.0 / 6.0));
  CHECK(integral([](double a, double) { return a * a; }) == doctest::Approx(1.0 / 12.0));
  CHECK(integral([](double a, double b) { return a * b; }) == doctest::Approx(1.0 / 24.0));
}
