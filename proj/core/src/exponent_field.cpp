#include "dphase/exponent_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dphase/csv.hpp"
#include "dphase/errors.hpp"

namespace dphase {

ExponentField::ExponentField(Domain domain, Evaluator f, std::string label, bool constant)
    : domain_(domain), eval_(std::move(f)), label_(std::move(label)), constant_(constant) {}

ExponentField ExponentField::constant(const Domain& domain, double value) {
  ExponentField p(domain, [value](const Point&) { return value; }, "const " + format_double(value),
                  true);
  bounds(p, 2);
  return p;
}

ExponentField ExponentField::from_expression(const Domain& domain, const Expression& expr,
                                             int samples) {
  if (expr.uses_xi() || expr.uses_p())
    throw ParseError("exponent expressions may only use x and y: " + expr.source());
  if (expr.is_constant()) return constant(domain, expr(0.0, 0.0));
  return from_function(
      domain, [expr](const Point& x) { return expr(x[0], x[1]); }, "expr " + expr.source(),
      samples);
}

ExponentField ExponentField::from_function(const Domain& domain, Evaluator f, std::string label,
                                           int samples) {
  ExponentField p(domain, std::move(f), std::move(label), false);
  bounds(p, samples);
  return p;
}

std::vector<double> ExponentField::sample(const std::vector<Point>& points) const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(eval_(x));
  return out;
}

std::vector<Point> sample_grid(const Domain& domain, int samples) {
  if (samples < 2) throw DomainError("at least 2 samples per axis are required");
  std::vector<Point> pts;
  const auto& ax = domain.axis(0);
  auto coord = [samples](const Interval& iv, int i) {
    return i == samples - 1 ? iv.b : iv.a + iv.length() * i / (samples - 1);
  };
  if (domain.dimension() == 1) {
    pts.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) pts.push_back({coord(ax, i), 0.0});
  } else {
    const auto& ay = domain.axis(1);
    pts.reserve(static_cast<std::size_t>(samples) * static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j)
      for (int i = 0; i < samples; ++i) pts.push_back({coord(ax, i), coord(ay, j)});
  }
  return pts;
}

ExponentBounds bounds(ExponentField& p, int samples) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& x : sample_grid(p.domain(), samples)) {
    const double v = p(x);
    if (!std::isfinite(v))
      throw NonFiniteExponent("exponent " + p.label() + " is not finite at (" +
                              format_double(x[0]) + ", " + format_double(x[1]) + ")");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo <= 1.0 + kExponentMargin)
    throw DomainError("exponent " + p.label() + " must exceed 1, found p- = " + format_double(lo));
  p.bounds_ = {lo, hi};
  return p.bounds_;
}

double conjugate(double p_value) {
  if (!(p_value > 1.0)) throw DomainError("conjugate exponent requires p > 1");
  return p_value / (p_value - 1.0);
}

CriticalExponent critical_exponent(double p_value, int dimension) {
  const double n = dimension;
  if (p_value >= n) return {true, 0.0};
  return {false, n * p_value / (n - p_value)};
}

void ValidationReport::merge(const ValidationReport& other) {
  pass = pass && other.pass;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

ValidationReport validate_ordering(const ExponentField& p1, const ExponentField& p2,
                                   const ExponentField& p3, const PowerPair& rs) {
  ValidationReport rep;
  const auto f = [](double v) { return format_double(v); };
  if (!(p1.p_plus() < rs.r))
    rep.fail("ordering: p1+ < r violated (p1+ = " + f(p1.p_plus()) + ", r = " + f(rs.r) + ")");
  if (!(rs.r <= p3.p_minus()))
    rep.fail("ordering: r <= p3- violated (r = " + f(rs.r) + ", p3- = " + f(p3.p_minus()) + ")");
  if (!(p3.p_minus() <= p3.p_plus()))
    rep.fail("ordering: p3- <= p3+ violated");
  if (!(p3.p_plus() <= rs.s))
    rep.fail("ordering: p3+ <= s violated (p3+ = " + f(p3.p_plus()) + ", s = " + f(rs.s) + ")");
  if (!(rs.s < p2.p_minus()))
    rep.fail("ordering: s < p2- violated (s = " + f(rs.s) + ", p2- = " + f(p2.p_minus()) + ")");
  return rep;
}

ValidationReport validate_subcritical(const ExponentField& p1, const ExponentField& p2,
                                      int samples) {
  ValidationReport rep;
  const int n = p1.domain().dimension();
  bool any_finite = false;
  double gap = std::numeric_limits<double>::infinity();
  Point where{0.0, 0.0};
  const int per_axis = (p1.is_constant() && p2.is_constant()) ? 2 : samples;
  for (const auto& x : sample_grid(p1.domain(), per_axis)) {
    const auto g = critical_exponent(p1(x), n).minus(p2(x));
    if (g.infinite) continue;
    any_finite = true;
    if (g.value < gap) {
      gap = g.value;
      where = x;
    }
  }
  if (!any_finite) {
    rep.notes.push_back("subcritical: p1* is infinite on the whole domain");
  } else if (!(gap > 0.0)) {
    rep.fail("subcritical: min(p1* - p2) = " + format_double(gap) + " is not positive at (" +
             format_double(where[0]) + ", " + format_double(where[1]) + ")");
  } else {
    rep.notes.push_back("subcritical: min(p1* - p2) = " + format_double(gap));
  }
  return rep;
}

}  // namespace dphase
