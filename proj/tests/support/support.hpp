#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "dphase/energy.hpp"

namespace dphase::testing {

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline KernelSpec power(const Domain& d, double p) {
  return make_power_kernel(ExponentField::constant(d, p));
}

/// Power kernels p1 = 2, p2 = 5, p3 = 3.5, r = 3, s = 4, w = 0 on [0, 1].
inline ProblemSpec default_spec(int elements = 256, double weight = 0.0) {
  const auto d = Domain::interval(0.0, 1.0);
  auto mesh = Mesh::interval(d, elements);
  auto w = interpolate([weight](const Point&) { return weight; }, mesh);
  return ProblemSpec::create(mesh, power(d, 2.0), power(d, 5.0), power(d, 3.5), w, {3.0, 4.0});
}

inline GridFunction random_function(const MeshPtr& mesh, std::mt19937_64& rng,
                                    double amplitude = 1.0) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(mesh->interior_count()));
  for (auto& x : v) x = uniform(rng, -amplitude, amplitude);
  return GridFunction(mesh, v);
}

/// Random nodal direction scaled to unit norm in W^{1,p2}. Raw nodal draws on a
/// fine mesh have |Du| ~ 1/h and sit deep in the large-amplitude regime.
inline GridFunction unit_random_function(const ProblemSpec& spec, std::mt19937_64& rng) {
  const auto v = random_function(spec.mesh_ptr(), rng);
  return v * (1.0 / spec.norm_p2(v));
}

/// Piecewise-linear evaluation on a uniform 1D mesh from the nodal values,
/// found by locating the cell directly.
inline double eval_p1_1d(const GridFunction& u, double x) {
  const auto& ax = u.mesh().domain().axis(0);
  const int n = u.mesh().divisions()[0];
  const double h = ax.length() / n;
  int i = static_cast<int>(std::floor((x - ax.a) / h));
  i = std::clamp(i, 0, n - 1);
  const double t = (x - ax.a - i * h) / h;
  return (1.0 - t) * u.nodal(static_cast<std::size_t>(i)) +
         t * u.nodal(static_cast<std::size_t>(i + 1));
}

/// Slope of a 1D P1 function on the cell containing x.
inline double slope_p1_1d(const GridFunction& u, double x) {
  const auto& ax = u.mesh().domain().axis(0);
  const int n = u.mesh().divisions()[0];
  const double h = ax.length() / n;
  int i = std::clamp(static_cast<int>(std::floor((x - ax.a) / h)), 0, n - 1);
  return (u.nodal(static_cast<std::size_t>(i + 1)) - u.nodal(static_cast<std::size_t>(i))) / h;
}

/// Composite midpoint rule with `cells` subintervals.
inline double midpoint(const std::function<double(double)>& f, double a, double b,
                       long cells) {
  const double h = (b - a) / static_cast<double>(cells);
  double sum = 0.0;
  for (long i = 0; i < cells; ++i) sum += f(a + (static_cast<double>(i) + 0.5) * h);
  return sum * h;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace dphase::testing
