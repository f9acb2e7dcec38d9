#include "dphase/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dphase/errors.hpp"
#include "dphase/quadrature.hpp"

namespace dphase {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEllipticityFloor = 1e-10;
constexpr double kH4Tolerance = 1e-10;

// xi^{e} with the conventions 0^0 = 1, 0^{e>0} = 0, 0^{e<0} = +inf.
double power_at(double xi, double e) {
  if (xi > 0.0) return std::pow(xi, e);
  if (e == 0.0) return 1.0;
  return e > 0.0 ? 0.0 : kInf;
}

// g(xi) = xi^p / sqrt(1 + xi^{2p}) and 1 / (1 + xi^{2p}), overflow-safe.
std::pair<double, double> capillarity_parts(double xi, double p) {
  if (xi <= 1.0) {
    const double a = std::pow(xi, p);
    return {a / std::sqrt(1.0 + a * a), 1.0 / (1.0 + a * a)};
  }
  const double b = std::pow(xi, -p);
  return {1.0 / std::sqrt(1.0 + b * b), b * b / (1.0 + b * b)};
}

}  // namespace

KernelSpec::KernelSpec(std::string name, ExponentField exponent, Fn value, Fn derivative,
                       Fn density)
    : name_(std::move(name)),
      exponent_(std::move(exponent)),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      density_(std::move(density)) {
  if (!value_) throw DomainError("kernel " + name_ + " has no value function");
}

double KernelSpec::xi_derivative(const Point& x, double p, double xi) const {
  if (derivative_) return derivative_(x, p, xi);
  const double h = 1e-6 * std::max(1.0, xi);
  if (xi - h <= 0.0) return (value_(x, p, xi + h) - value_(x, p, xi)) / h;
  return (value_(x, p, xi + h) - value_(x, p, xi - h)) / (2.0 * h);
}

double KernelSpec::density(const Point& x, double p, double t) const {
  if (density_) return density_(x, p, t);
  if (t <= 0.0) return 0.0;
  const int panels = static_cast<int>(std::floor(t)) + 1;
  return integrate_composite([&](double s) { return s * value_(x, p, s); }, 0.0, t, panels, 32);
}

std::array<double, 2> KernelSpec::flux(const Point& x, double p,
                                       const std::array<double, 2>& v) const {
  const double xi = std::hypot(v[0], v[1]);
  if (xi == 0.0) return {0.0, 0.0};
  const double k = value_(x, p, xi);
  return {k * v[0], k * v[1]};
}

KernelSpec make_power_kernel(const ExponentField& p) {
  return KernelSpec(
      "power", p, [](const Point&, double pe, double xi) { return power_at(xi, pe - 2.0); },
      [](const Point&, double pe, double xi) {
        return pe == 2.0 ? 0.0 : (pe - 2.0) * power_at(xi, pe - 3.0);
      },
      [](const Point&, double pe, double t) { return power_at(t, pe) / pe; });
}

KernelSpec make_mean_curvature_kernel(const ExponentField& p) {
  return KernelSpec(
      "mean_curvature", p,
      [](const Point&, double pe, double xi) { return std::pow(1.0 + xi * xi, 0.5 * (pe - 2.0)); },
      [](const Point&, double pe, double xi) {
        return (pe - 2.0) * xi * std::pow(1.0 + xi * xi, 0.5 * (pe - 4.0));
      },
      // int_0^t s (1 + s^2)^{(p-2)/2} ds = ((1 + t^2)^{p/2} - 1) / p
      [](const Point&, double pe, double t) {
        return std::expm1(0.5 * pe * std::log1p(t * t)) / pe;
      });
}

KernelSpec make_capillarity_kernel(const ExponentField& p) {
  return KernelSpec(
      "capillarity", p,
      [](const Point&, double pe, double xi) {
        return (1.0 + capillarity_parts(xi, pe).first) * power_at(xi, pe - 2.0);
      },
      [](const Point&, double pe, double xi) {
        if (xi == 0.0) return pe == 2.0 ? 0.0 : (pe - 2.0) * power_at(xi, pe - 3.0);
        const auto [g, inv] = capillarity_parts(xi, pe);
        const double dg = pe / xi * g * inv;
        return dg * power_at(xi, pe - 2.0) + (1.0 + g) * (pe - 2.0) * power_at(xi, pe - 3.0);
      },
      // t^p / p + (sqrt(1 + t^{2p}) - 1) / p
      [](const Point&, double pe, double t) {
        if (t <= 0.0) return 0.0;
        const double a2 = std::pow(t, 2.0 * pe);
        return (std::pow(t, pe) + a2 / (std::sqrt(1.0 + a2) + 1.0)) / pe;
      });
}

KernelSpec make_expression_kernel(const ExponentField& p, const Expression& value) {
  return KernelSpec("expr " + value.source(), p, [value](const Point& x, double pe, double xi) {
    return value({x[0], x[1], xi, pe});
  });
}

KernelSpec make_builtin_kernel(const std::string& name, const ExponentField& p) {
  if (name == "power") return make_power_kernel(p);
  if (name == "mean_curvature") return make_mean_curvature_kernel(p);
  if (name == "capillarity") return make_capillarity_kernel(p);
  throw ParseError("unknown kernel '" + name + "' (expected power, mean_curvature or capillarity)");
}

SampleGrid SampleGrid::make(const Domain& domain, int x_points, int xi_points, double xi_min,
                            double xi_max) {
  SampleGrid g;
  if (domain.dimension() == 1) {
    g.x = sample_grid(domain, x_points);
  } else {
    const int side = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(x_points)))));
    g.x = sample_grid(domain, side);
  }
  const double l0 = std::log10(xi_min);
  const double l1 = std::log10(xi_max);
  for (int i = 0; i < xi_points; ++i)
    g.xi.push_back(std::pow(10.0, l0 + (l1 - l0) * i / std::max(1, xi_points - 1)));
  return g;
}

GrowthReport validate_growth(const KernelSpec& k, const SampleGrid& grid) {
  GrowthReport rep;
  double b = 0.0;
  for (const auto& x : grid.x) {
    const double p = k.exponent()(x);
    for (const double xi : grid.xi) {
      const double ratio = std::abs(k.value(x, p, xi) * xi) / (1.0 + std::pow(xi, p - 1.0));
      if (!std::isfinite(ratio)) {
        rep.violations.emplace_back(x, xi);
        continue;
      }
      b = std::max(b, ratio);
    }
  }
  rep.pass = rep.violations.empty();
  rep.b_estimate = rep.pass ? b : kInf;
  if (rep.pass) {
    double a = 0.0;
    for (const auto& x : grid.x) {
      const double p = k.exponent()(x);
      for (const double xi : grid.xi)
        a = std::max(a, std::abs(k.value(x, p, xi) * xi) - b * std::pow(xi, p - 1.0));
    }
    rep.a_estimate = a;
  }
  return rep;
}

GrowthReport validate_ellipticity(const KernelSpec& k, const SampleGrid& grid,
                                  EllipticityMode mode) {
  GrowthReport rep;
  rep.approximate = mode == EllipticityMode::value_and_derivative && k.derivative_is_approximate();
  double c = kInf;

  for (const auto& x : grid.x) {
    const double p = k.exponent()(x);
    auto ratio = [&](double xi) {
      const double v = k.value(x, p, xi);
      double m = v;
      if (mode == EllipticityMode::value_and_derivative)
        m = std::min(v, v + xi * k.xi_derivative(x, p, xi));
      return m / std::pow(xi, p - 2.0);
    };
    std::vector<double> r;
    r.reserve(grid.xi.size());
    for (const double xi : grid.xi) r.push_back(ratio(xi));

    auto record = [&](double xi, double value) {
      if (!std::isfinite(value) || value <= kEllipticityFloor) rep.violations.emplace_back(x, xi);
      c = std::min(c, std::isfinite(value) ? value : -kInf);
    };
    for (std::size_t i = 0; i < r.size(); ++i) record(grid.xi[i], r[i]);

    // Golden-section refinement inside every bracketing triple of a local minimum.
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
      if (!(r[i] < r[i - 1] && r[i] <= r[i + 1])) continue;
      double a = std::log(grid.xi[i - 1]);
      double b = std::log(grid.xi[i + 1]);
      const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double x1 = b - inv_phi * (b - a);
      double x2 = a + inv_phi * (b - a);
      double f1 = ratio(std::exp(x1));
      double f2 = ratio(std::exp(x2));
      for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - inv_phi * (b - a);
          f1 = ratio(std::exp(x1));
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + inv_phi * (b - a);
          f2 = ratio(std::exp(x2));
        }
      }
      const double xm = f1 < f2 ? x1 : x2;
      record(std::exp(xm), std::min(f1, f2));
    }
  }
  rep.c_estimate = c;
  rep.pass = rep.violations.empty() && c > kEllipticityFloor;
  return rep;
}

GrowthReport validate_h4(const KernelSpec& phi, const KernelSpec& psi, double p_bound,
                         const SampleGrid& grid) {
  GrowthReport rep;
  double margin = kInf;
  bool nonnegative = true;
  for (const auto& x : grid.x) {
    const double p1 = phi.exponent()(x);
    const double p2 = psi.exponent()(x);
    for (const double xi : grid.xi) {
      const double lhs = (phi.value(x, p1, xi) + psi.value(x, p2, xi)) * xi * xi;
      const double bound = p_bound * (phi.density(x, p1, xi) + psi.density(x, p2, xi));
      const double m = (bound - lhs) / std::max(1.0, std::abs(lhs));
      if (lhs < 0.0) nonnegative = false;
      if (!(m >= -kH4Tolerance) || lhs < 0.0) rep.violations.emplace_back(x, xi);
      margin = std::min(margin, std::isfinite(m) ? m : -kInf);
    }
  }
  rep.h4_margin = margin;
  rep.pass = nonnegative && margin >= -kH4Tolerance;
  return rep;
}

SimonReport simon_estimate_check(const KernelSpec& k, const std::vector<SimonPair>& pairs,
                                 double c, int dimension) {
  SimonReport rep;
  rep.worst_slack = kInf;
  const double p_plus = k.exponent().p_plus();
  for (const auto& pr : pairs) {
    const double p = k.exponent()(pr.x);
    std::array<double, 2> u = pr.u;
    std::array<double, 2> v = pr.v;
    if (dimension == 1) u[1] = v[1] = 0.0;
    const double nu = std::hypot(u[0], u[1]);
    const double nv = std::hypot(v[0], v[1]);
    if (p < 2.0 && nu == 0.0 && nv == 0.0) continue;
    const auto fu = k.flux(pr.x, p, u);
    const auto fv = k.flux(pr.x, p, v);
    const double d0 = u[0] - v[0];
    const double d1 = u[1] - v[1];
    const double lhs = (fu[0] - fv[0]) * d0 + (fu[1] - fv[1]) * d1;
    const double dist = std::hypot(d0, d1);
    const double rhs = p < 2.0 ? c * std::pow(nu + nv, p - 2.0) * dist * dist
                               : std::pow(4.0, 1.0 - p_plus) * c * std::pow(dist, p);
    ++rep.checked;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    if (lhs < rhs - 1e-12 * scale) ++rep.violations;
    rep.worst_slack = std::min(rep.worst_slack, (lhs - rhs) / scale);
  }
  if (rep.checked == 0) rep.worst_slack = 0.0;
  return rep;
}

}  // namespace dphase
