#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dphase/exponent_field.hpp"
#include "dphase/expression.hpp"

namespace dphase {

/// An operator kernel phi(x, xi) together with its xi-derivative and the
/// density Phi_0(x, t) = int_0^t phi(x, s) s ds.
///
/// Every callable receives the exponent value p = p(x) alongside x, so hot
/// loops can sample the exponent once per quadrature point.
class KernelSpec {
 public:
  using Fn = std::function<double(const Point& x, double p, double xi)>;

  /// `derivative` and `density` may be empty: the derivative then falls back
  /// to central differences (h = 1e-6 max(1, xi)) and the density to
  /// composite 32-point Gauss-Legendre with floor(t) + 1 panels.
  KernelSpec(std::string name, ExponentField exponent, Fn value, Fn derivative = {},
             Fn density = {});

  const std::string& name() const { return name_; }
  const ExponentField& exponent() const { return exponent_; }
  bool derivative_is_approximate() const { return !derivative_; }
  bool density_is_quadrature() const { return !density_; }

  double value(const Point& x, double xi) const { return value(x, exponent_(x), xi); }
  double xi_derivative(const Point& x, double xi) const {
    return xi_derivative(x, exponent_(x), xi);
  }
  double density(const Point& x, double t) const { return density(x, exponent_(x), t); }

  double value(const Point& x, double p, double xi) const { return value_(x, p, xi); }
  double xi_derivative(const Point& x, double p, double xi) const;
  double density(const Point& x, double p, double t) const;

  /// phi(x, |v|) v, with the zero vector at v = 0.
  std::array<double, 2> flux(const Point& x, double p, const std::array<double, 2>& v) const;

 private:
  std::string name_;
  ExponentField exponent_;
  Fn value_;
  Fn derivative_;
  Fn density_;
};

/// xi^{p(x)-2}; density t^p / p.
KernelSpec make_power_kernel(const ExponentField& p);
/// (1 + xi^2)^{(p(x)-2)/2}.
KernelSpec make_mean_curvature_kernel(const ExponentField& p);
/// (1 + xi^p / sqrt(1 + xi^{2p})) xi^{p-2}.
KernelSpec make_capillarity_kernel(const ExponentField& p);
/// Kernel value given by an expression over x, y, xi (and p). Derivative and
/// density are numerical.
KernelSpec make_expression_kernel(const ExponentField& p, const Expression& value);
/// One of `power`, `mean_curvature`, `capillarity`.
KernelSpec make_builtin_kernel(const std::string& name, const ExponentField& p);

/// x samples across the domain and log-spaced xi samples.
struct SampleGrid {
  std::vector<Point> x;
  std::vector<double> xi;

  /// 64 x-points (per axis in 1D; 8 x 8 in 2D) and 121 xi-points in [1e-6, 1e6].
  static SampleGrid make(const Domain& domain, int x_points = 64, int xi_points = 121,
                         double xi_min = 1e-6, double xi_max = 1e6);
};

struct GrowthReport {
  double b_estimate = 0.0;
  double a_estimate = 0.0;
  double c_estimate = 0.0;
  double h4_margin = 0.0;
  bool pass = true;
  bool approximate = false;  // derivative came from finite differences
  std::vector<std::pair<Point, double>> violations;  // (x, xi)
};

/// b = sup |phi(x, xi) xi| / (1 + xi^{p(x)-1}); passes when b is finite.
/// a = sup max(|phi xi| - b xi^{p-1}, 0) is reported, not checked.
GrowthReport validate_growth(const KernelSpec& k, const SampleGrid& grid);

enum class EllipticityMode {
  value_and_derivative,  // min(phi, phi + xi phi') >= c xi^{p-2}
  value_only,            // theta >= c xi^{p-2}
};

/// c = inf of the ellipticity ratio over the grid, refined by golden-section
/// search around every local minimum along xi. Passes when c > 1e-10.
GrowthReport validate_ellipticity(const KernelSpec& k, const SampleGrid& grid,
                                  EllipticityMode mode = EllipticityMode::value_and_derivative);

/// Relative margin of bound (Phi_0 + Psi_0) - (phi + psi) xi^2 where the
/// bound constant is `p_bound`, scaled by max(1, (phi + psi) xi^2). Passes
/// when the margin is >= -1e-10 and (phi + psi) xi^2 >= 0.
GrowthReport validate_h4(const KernelSpec& phi, const KernelSpec& psi, double p_bound,
                         const SampleGrid& grid);

struct SimonPair {
  Point x;
  std::array<double, 2> u;
  std::array<double, 2> v;
};

struct SimonReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;  // min over pairs of (lhs - rhs) / max(|lhs|, |rhs|)
  bool pass() const { return violations == 0; }
};

/// <phi(|u|)u - phi(|v|)v, u - v> against c (|u|+|v|)^{p-2} |u-v|^2 where
/// p(x) < 2 and 4^{1-p+} c |u-v|^{p} where p(x) >= 2.
SimonReport simon_estimate_check(const KernelSpec& k, const std::vector<SimonPair>& pairs,
                                 double c, int dimension);

}  // namespace dphase
