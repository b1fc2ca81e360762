#pragma once

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nearconvex {

// A value on the extended real line: finite, +inf or -inf, never NaN.
// Arithmetic follows the convention inf + finite = inf; inf - inf is a
// logic error rather than NaN.
class ExtReal {
 public:
  ExtReal() : v_(0.0) {}
  ExtReal(double v) : v_(v) { assert(!std::isnan(v)); }  // NOLINT(runtime/explicit)

  static ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  bool finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

  // Finite value accessor; throws on infinities.
  double value() const {
    if (!finite()) throw std::logic_error("ExtReal: value() on infinite");
    return v_;
  }
  // Raw double, infinities included.
  double raw() const { return v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      throw std::logic_error("ExtReal: inf - inf");
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a, ExtReal b) {
    if ((a.is_pos_inf() && b.is_pos_inf()) || (a.is_neg_inf() && b.is_neg_inf()))
      throw std::logic_error("ExtReal: inf - inf");
    return ExtReal(a.v_ - b.v_);
  }
  friend ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }
  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

 private:
  double v_;
};

inline double pos_inf() { return std::numeric_limits<double>::infinity(); }
inline double neg_inf() { return -std::numeric_limits<double>::infinity(); }

}  // namespace nearconvex
