#pragma once

#include <array>
#include <functional>
#include <vector>

namespace dphase {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule via Newton iteration on P_n.
GaussLegendre gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int order = 32);

/// Reference-element quadrature. Points are reference coordinates: for
/// segments the coordinate in [0, 1]; for triangles the barycentric pair
/// (l1, l2) with l0 = 1 - l1 - l2. Weights are normalized to sum to 1 and
/// are scaled by the element measure at assembly.
struct QuadratureRule {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }

  static QuadratureRule segment_gauss(int n);
  /// Degree-2 rule, interior points (1/6, 1/6), (2/3, 1/6), (1/6, 2/3).
  static QuadratureRule triangle_degree2();
};

}  // namespace dphase
