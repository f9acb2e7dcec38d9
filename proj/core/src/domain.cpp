#include "dphase/domain.hpp"

#include <sstream>

#include "dphase/csv.hpp"
#include "dphase/errors.hpp"

namespace dphase {

Domain::Domain(Kind kind, Interval x, Interval y) : kind_(kind), axes_{x, y} {
  const int n = dimension();
  for (int i = 0; i < n; ++i) {
    const auto& ax = axes_[static_cast<std::size_t>(i)];
    if (!(ax.a < ax.b)) throw DomainError("domain axis must satisfy a < b");
  }
}

Domain Domain::interval(double a, double b) { return Domain(Kind::interval, {a, b}, {0.0, 0.0}); }

Domain Domain::rectangle(double ax, double bx, double ay, double by) {
  return Domain(Kind::rectangle, {ax, bx}, {ay, by});
}

double Domain::measure() const {
  return dimension() == 1 ? axes_[0].length() : axes_[0].length() * axes_[1].length();
}

bool Domain::contains(const Point& x, double slack) const {
  for (int i = 0; i < dimension(); ++i) {
    const auto& ax = axes_[static_cast<std::size_t>(i)];
    if (x[static_cast<std::size_t>(i)] < ax.a - slack || x[static_cast<std::size_t>(i)] > ax.b + slack)
      return false;
  }
  return true;
}

std::string Domain::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::interval) {
    os << "interval [" << format_double(axes_[0].a) << ", " << format_double(axes_[0].b) << "]";
  } else {
    os << "rectangle [" << format_double(axes_[0].a) << ", " << format_double(axes_[0].b)
       << "] x [" << format_double(axes_[1].a) << ", " << format_double(axes_[1].b) << "]";
  }
  return os.str();
}

}  // namespace dphase
