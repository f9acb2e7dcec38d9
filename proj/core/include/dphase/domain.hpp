#pragma once

#include <array>
#include <string>

namespace dphase {

using Point = std::array<double, 2>;

struct Interval {
  double a = 0.0;
  double b = 1.0;
  double length() const { return b - a; }
};

/// Axis-aligned interval (N = 1) or rectangle (N = 2).
class Domain {
 public:
  enum class Kind { interval, rectangle };

  static Domain interval(double a, double b);
  static Domain rectangle(double ax, double bx, double ay, double by);

  Kind kind() const { return kind_; }
  int dimension() const { return kind_ == Kind::interval ? 1 : 2; }
  const Interval& axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }
  double measure() const;
  bool contains(const Point& x, double slack = 0.0) const;
  std::string describe() const;

 private:
  Domain(Kind kind, Interval x, Interval y);

  Kind kind_;
  std::array<Interval, 2> axes_;
};

}  // namespace dphase
