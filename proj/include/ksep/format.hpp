#pragma once

#include <cstdio>
#include <string>

namespace ksep {

/// Fixed 17-significant-digit rendering so repeated runs print identical bytes.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace ksep
