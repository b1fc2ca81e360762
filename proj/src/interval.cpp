#include "nearconvex/interval.hpp"

#include "nearconvex/numfmt.hpp"

namespace nearconvex {

std::string Interval::str() const {
  if (empty_) return "{}";
  std::string s = lo_closed_ ? "[" : "(";
  s += fmt_num(lo_);
  s += ", ";
  s += fmt_num(hi_);
  s += hi_closed_ ? "]" : ")";
  return s;
}

std::string IntervalSet::str() const {
  if (empty_) return "{}";
  std::string s = unb_lo_ ? "(" : "[";
  s += fmt_num(lo_);
  s += ", ";
  s += fmt_num(hi_);
  s += unb_hi_ ? ")" : "]";
  return s;
}

}  // namespace nearconvex
