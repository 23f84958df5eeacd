#pragma once

#include <cstdio>
#include <string>

namespace costlab {

/// Shortest text that round-trips a double exactly (17 significant digits),
/// formatted identically on every run.
inline std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace costlab
