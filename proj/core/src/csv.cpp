#include "dphase/csv.hpp"

#include <cstdio>

namespace dphase {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace dphase
