#pragma once

#include <string>

namespace dphase {

/// 17 significant digits, round-trip exact.
std::string format_double(double v);

}  // namespace dphase
