#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dphase/errors.hpp"
#include "dphase/mesh.hpp"
#include "support.hpp"

using namespace dphase;

namespace {
const Domain unit = Domain::interval(0.0, 1.0);
const Domain square = Domain::rectangle(0.0, 1.0, 0.0, 1.0);
}  // namespace

TEST_CASE("mesh structure") {
  auto m = Mesh::interval(unit, 4);
  CHECK(m->node_count() == 5);
  CHECK(m->interior_count() == 3);
  CHECK(m->interior_index(0) == -1);
  CHECK(m->interior_index(4) == -1);
  CHECK(m->interior_index(2) == 1);

  auto r = Mesh::rectangle(square, 3, 4);
  CHECK(r->node_count() == 20);
  CHECK(r->interior_count() == 6);
  CHECK(r->element_count() == 24);
  double area = 0.0;
  for (std::size_t e = 0; e < r->element_count(); ++e) area += r->element(e).measure;
  CHECK(area == doctest::Approx(1.0));
  for (std::size_t i = 0; i < r->node_count(); ++i) {
    const auto& x = r->node(i);
    const bool boundary = x[0] == 0.0 || x[0] == 1.0 || x[1] == 0.0 || x[1] == 1.0;
    CHECK((r->interior_index(i) < 0) == boundary);
  }

  CHECK_THROWS_AS(Mesh::interval(unit, 1), DomainError);
  CHECK_THROWS_AS(Mesh::rectangle(square, 2, 1), DomainError);
}

TEST_CASE("quadrature weights sum to the element measure") {
  for (auto m : {Mesh::interval(unit, 7), Mesh::rectangle(square, 5, 3)}) {
    const std::size_t nq = m->quad_per_element();
    for (std::size_t e = 0; e < m->element_count(); ++e) {
      double s = 0.0;
      for (std::size_t q = 0; q < nq; ++q) {
        CHECK(m->quad_weights()[e * nq + q] > 0.0);
        s += m->quad_weights()[e * nq + q];
      }
      CHECK(s == doctest::Approx(m->element(e).measure));
    }
  }
}

TEST_CASE("interpolate") {
  auto m = Mesh::interval(unit, 4);
  CHECK(interpolate([](const Point&) { return 0.0; }, m).is_zero());

  const auto u = interpolate([](const Point& x) { return x[0] * (1 - x[0]); }, m);
  CHECK(u.values()[0] == doctest::Approx(0.1875));
  CHECK(u.values()[1] == doctest::Approx(0.25));
  CHECK(u.values()[2] == doctest::Approx(0.1875));

  const auto one = interpolate([](const Point&) { return 1.0; }, m);
  CHECK(one.nodal(0) == 0.0);
  CHECK(one.nodal(2) == 1.0);
  CHECK(one.nodal(4) == 0.0);

  CHECK_THROWS_AS(interpolate([](const Point& x) { return 1.0 / (x[0] - 0.5); }, m),
                  NonFiniteValue);
  Eigen::VectorXd bad(3);
  bad << 1.0, NAN, 0.0;
  CHECK_THROWS_AS(GridFunction(m, bad), NonFiniteValue);
  CHECK_THROWS(GridFunction(m, Eigen::VectorXd::Zero(4)));
}

TEST_CASE("gradients") {
  auto m = Mesh::interval(unit, 8);
  const auto u = interpolate([](const Point& x) { return x[0]; }, m);
  for (std::size_t e = 1; e + 1 < m->element_count(); ++e)
    for (const auto& g : gradient_at_quad(u, e)) CHECK(g[0] == doctest::Approx(1.0));
  // boundary zeroing changes the end elements
  CHECK(u.gradient(m->element_count() - 1)[0] == doctest::Approx(-7.0));

  const auto zero = GridFunction(m);
  for (std::size_t e = 0; e < m->element_count(); ++e) {
    CHECK(zero.gradient(e)[0] == 0.0);
    CHECK(zero.gradient(e)[1] == 0.0);
  }

  // affine in 2D: exact on interior elements
  auto r = Mesh::rectangle(square, 6, 6);
  const auto a = interpolate([](const Point& x) { return 2.0 * x[0] - 3.0 * x[1] + 0.5; }, r);
  for (std::size_t e = 0; e < r->element_count(); ++e) {
    const auto& el = r->element(e);
    bool interior = true;
    for (int k = 0; k < 3; ++k)
      interior = interior && r->interior_index(static_cast<std::size_t>(el.nodes[static_cast<std::size_t>(k)])) >= 0;
    if (!interior) continue;
    CHECK(a.gradient(e)[0] == doctest::Approx(2.0));
    CHECK(a.gradient(e)[1] == doctest::Approx(-3.0));
  }
}

TEST_CASE("2D gradient against finite differences of the analytic function") {
  auto r = Mesh::rectangle(square, 8, 8);
  auto f = [](double x, double y) { return x * (1 - x) * y * (1 - y); };
  const auto u = interpolate([&](const Point& p) { return f(p[0], p[1]); }, r);
  const double h = 1.0 / 8.0;
  for (std::size_t e = 0; e < r->element_count(); ++e) {
    Point c{0.0, 0.0};
    const auto& el = r->element(e);
    for (int k = 0; k < 3; ++k) {
      const auto& n = r->node(static_cast<std::size_t>(el.nodes[static_cast<std::size_t>(k)]));
      c[0] += n[0] / 3;
      c[1] += n[1] / 3;
    }
    if (std::abs(c[0] - 0.5) > 0.1 || std::abs(c[1] - 0.5) > 0.1) continue;
    const double d = 1e-6;
    const double gx = (f(c[0] + d, c[1]) - f(c[0] - d, c[1])) / (2 * d);
    const double gy = (f(c[0], c[1] + d) - f(c[0], c[1] - d)) / (2 * d);
    CHECK(std::abs(u.gradient(e)[0] - gx) <= h);
    CHECK(std::abs(u.gradient(e)[1] - gy) <= h);
  }
}

TEST_CASE("integrate") {
  auto m = Mesh::interval(unit, 10);
  CHECK(integrate([](const QuadContext&) { return 1.0; }, *m) == doctest::Approx(1.0));

  auto g2 = Mesh::interval(unit, 3, QuadratureRule::segment_gauss(2));
  CHECK(integrate([](const QuadContext& c) { return c.x[0] * c.x[0]; }, *g2) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  auto m64 = Mesh::interval(unit, 64);
  CHECK(std::abs(integrate([](const QuadContext& c) { return std::sin(M_PI * c.x[0]); }, *m64) -
                 2.0 / M_PI) <= 1e-10);

  // degree 2 on triangles
  auto r = Mesh::rectangle(Domain::rectangle(0, 2, 0, 1), 3, 5);
  CHECK(integrate([](const QuadContext& c) { return c.x[0] * c.x[1]; }, *r) ==
        doctest::Approx(1.0));
  CHECK(integrate([](const QuadContext& c) { return c.x[0] * c.x[0]; }, *r) ==
        doctest::Approx(8.0 / 3.0));

  CHECK_THROWS_AS(integrate([](const QuadContext& c) { return c.element == 3 ? NAN : 1.0; }, *m),
                  NonFiniteValue);
  try {
    integrate([](const QuadContext& c) { return c.element == 3 ? INFINITY : 1.0; }, *m);
  } catch (const NonFiniteValue& e) {
    CHECK(e.element() == 3);
  }
}

TEST_CASE("refinement: energy of an interpolant converges at order >= 1") {
  auto err = [](int n) {
    auto m = Mesh::interval(unit, n);
    const auto u = interpolate([](const Point& x) { return std::sin(M_PI * x[0]); }, m);
    const auto g = u.gradient_magnitude_at_quad();
    std::size_t i = 0;
    const double e = integrate(
        [&](const QuadContext&) {
          const double v = g[i++];
          return v * v / 2;
        },
        *m);
    return std::abs(e - M_PI * M_PI / 4);
  };
  const double e1 = err(16), e2 = err(32), e3 = err(64);
  CHECK(std::log2(e1 / e2) >= 1.0);
  CHECK(std::log2(e2 / e3) >= 1.0);
}

TEST_CASE("csv") {
  auto m = Mesh::interval(unit, 4);
  const auto u = interpolate([](const Point& x) { return x[0] * (1 - x[0]); }, m);
  std::ostringstream s;
  write_csv(s, u);
  CHECK(s.str() == "x,value\n0,0\n0.25,0.1875\n0.5,0.25\n0.75,0.1875\n1,0\n");

  auto r = Mesh::rectangle(square, 2, 2);
  std::ostringstream t;
  write_csv(t, GridFunction(r));
  const std::string out = t.str();
  CHECK(out.rfind("x,y,value\n", 0) == 0);
  CHECK(std::count(out.begin(), out.end(), '\n') == 10);
}
