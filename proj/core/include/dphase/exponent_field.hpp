#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dphase/domain.hpp"
#include "dphase/expression.hpp"

namespace dphase {

/// Exponents must satisfy p(x) >= 1 + kExponentMargin.
inline constexpr double kExponentMargin = 1e-9;
inline constexpr int kDefaultExponentSamples = 1001;

struct ExponentBounds {
  double p_minus;
  double p_plus;
};

/// Continuous variable exponent p(x) on a domain with cached extrema.
///
/// The extrema are taken over a uniform grid that includes the domain
/// corners. Continuity on the closure is assumed, not checked.
class ExponentField {
 public:
  using Evaluator = std::function<double(const Point&)>;

  static ExponentField constant(const Domain& domain, double value);
  static ExponentField from_expression(const Domain& domain, const Expression& expr,
                                       int samples = kDefaultExponentSamples);
  static ExponentField from_function(const Domain& domain, Evaluator f, std::string label,
                                     int samples = kDefaultExponentSamples);

  double operator()(const Point& x) const { return eval_(x); }

  const Domain& domain() const { return domain_; }
  double p_minus() const { return bounds_.p_minus; }
  double p_plus() const { return bounds_.p_plus; }
  ExponentBounds cached_bounds() const { return bounds_; }
  bool is_constant() const { return constant_; }
  const std::string& label() const { return label_; }

  /// Values at a list of points, in order.
  std::vector<double> sample(const std::vector<Point>& points) const;

 private:
  ExponentField(Domain domain, Evaluator f, std::string label, bool constant);

  Domain domain_;
  Evaluator eval_;
  std::string label_;
  bool constant_ = false;
  ExponentBounds bounds_{0.0, 0.0};

  friend ExponentBounds bounds(ExponentField& p, int samples);
};

/// Min and max of p over a uniform grid of `samples` points per axis.
/// Updates the cached bounds of `p`.
/// Throws NonFiniteExponent on NaN/inf and DomainError when p_minus <= 1.
ExponentBounds bounds(ExponentField& p, int samples);

/// Uniform sample grid used by bounds() and the validators, corners included.
std::vector<Point> sample_grid(const Domain& domain, int samples);

/// Hölder conjugate p / (p - 1).
double conjugate(double p_value);

/// N p / (N - p) when p < N, +infinity otherwise. The infinite case is a tag,
/// never a floating point infinity.
struct CriticalExponent {
  bool infinite = false;
  double value = 0.0;

  /// this - q, saturating to the infinite tag.
  CriticalExponent minus(double q) const {
    return infinite ? CriticalExponent{true, 0.0} : CriticalExponent{false, value - q};
  }
  bool positive() const { return infinite || value > 0.0; }
};

CriticalExponent critical_exponent(double p_value, int dimension);

/// r <= s with both real.
struct PowerPair {
  double r;
  double s;
};

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void fail(std::string message) {
    pass = false;
    failures.push_back(std::move(message));
  }
  void merge(const ValidationReport& other);
};

/// p1+ < r <= p3- <= p3+ <= s < p2-, each inequality reported separately.
ValidationReport validate_ordering(const ExponentField& p1, const ExponentField& p2,
                                   const ExponentField& p3, const PowerPair& rs);

/// min over the sample grid of p1*(x) - p2(x) > 0.
ValidationReport validate_subcritical(const ExponentField& p1, const ExponentField& p2,
                                      int samples = kDefaultExponentSamples);

}  // namespace dphase
