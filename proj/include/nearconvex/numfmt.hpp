#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace nearconvex {

// Numbers are printed with 12 significant digits; infinities as inf/-inf.
// snprintf with %g is locale-independent for the "C" locale the process
// starts in, which keeps emitted reports byte-stable.
inline std::string fmt_num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  // normalize negative zero
  if (std::string(buf) == "-0") return "0";
  return buf;
}

inline std::string fmt_flag(bool b) { return b ? "1" : "0"; }

}  // namespace nearconvex
