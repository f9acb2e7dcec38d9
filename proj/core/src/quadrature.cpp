#include "dphase/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "dphase/errors.hpp"

namespace dphase {

namespace {

// P_n(z) and P_n'(z) by the three-term recurrence.
std::pair<double, double> legendre(int n, double z) {
  double p0 = 1.0;
  double p1 = z;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  if (n == 1) p0 = 1.0;
  return {p1, n * (z * p1 - p0) / (z * z - 1.0)};
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre(n, z).second;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

namespace {

const GaussLegendre& cached_rule(int order) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order)).first;
  return it->second;
}

}  // namespace

double integrate_composite(const std::function<double(double)>& f, double a, double b, int panels,
                           int order) {
  if (panels < 1) throw DomainError("composite quadrature needs at least one panel");
  const auto& gl = cached_rule(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * f(mid + 0.5 * h * gl.nodes[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

QuadratureRule QuadratureRule::segment_gauss(int n) {
  const auto gl = gauss_legendre(n);
  QuadratureRule rule;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    rule.points.push_back({0.5 * (gl.nodes[i] + 1.0), 0.0});
    rule.weights.push_back(0.5 * gl.weights[i]);
  }
  return rule;
}

QuadratureRule QuadratureRule::triangle_degree2() {
  QuadratureRule rule;
  rule.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
  rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return rule;
}

}  // namespace dphase
