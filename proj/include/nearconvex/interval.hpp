#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "nearconvex/config.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/extreal.hpp"

namespace nearconvex {

// An interval of the real line with independently open/closed finite
// endpoints.  Infinite endpoints are always open.  The empty interval is a
// distinguished canonical value.
class Interval {
 public:
  Interval() : empty_(true), lo_(0), hi_(0), lo_closed_(false), hi_closed_(false) {}

  static Interval empty() { return Interval(); }
  static Interval closed(double lo, double hi) { return make(lo, hi, true, true); }
  static Interval open(double lo, double hi) { return make(lo, hi, false, false); }
  static Interval closed_open(double lo, double hi) { return make(lo, hi, true, false); }
  static Interval open_closed(double lo, double hi) { return make(lo, hi, false, true); }
  static Interval singleton(double x) { return closed(x, x); }
  static Interval all() { return make(neg_inf(), pos_inf(), false, false); }
  static Interval make(double lo, double hi, bool lo_closed, bool hi_closed) {
    Interval r;
    if (std::isinf(lo)) lo_closed = false;
    if (std::isinf(hi)) hi_closed = false;
    if (lo > hi || (lo == hi && !(lo_closed && hi_closed))) return Interval();
    r.empty_ = false;
    r.lo_ = lo;
    r.hi_ = hi;
    r.lo_closed_ = lo_closed;
    r.hi_closed_ = hi_closed;
    return r;
  }

  bool is_empty() const { return empty_; }
  bool is_singleton() const { return !empty_ && lo_ == hi_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }
  bool lo_finite() const { return !empty_ && std::isfinite(lo_); }
  bool hi_finite() const { return !empty_ && std::isfinite(hi_); }
  bool bounded() const { return lo_finite() && hi_finite(); }
  double width() const { return empty_ ? 0.0 : hi_ - lo_; }

  bool contains(double x, double tol = 0.0) const {
    if (empty_) return false;
    if (x < lo_ - tol || x > hi_ + tol) return false;
    if (tol == 0.0) {
      if (!lo_closed_ && x == lo_) return false;
      if (!hi_closed_ && x == hi_) return false;
    }
    return true;
  }

  // Closure of the interval (open finite endpoints become closed).
  Interval closure() const {
    if (empty_) return *this;
    return make(lo_, hi_, std::isfinite(lo_), std::isfinite(hi_));
  }

  Interval intersect(const Interval& o) const {
    if (empty_ || o.empty_) return Interval();
    double lo = std::max(lo_, o.lo_);
    double hi = std::min(hi_, o.hi_);
    bool lc = (lo_ == o.lo_) ? (lo_closed_ && o.lo_closed_)
                             : (lo == lo_ ? lo_closed_ : o.lo_closed_);
    bool hc = (hi_ == o.hi_) ? (hi_closed_ && o.hi_closed_)
                             : (hi == hi_ ? hi_closed_ : o.hi_closed_);
    return make(lo, hi, lc, hc);
  }

  std::string str() const;

 private:
  bool empty_;
  double lo_, hi_;
  bool lo_closed_, hi_closed_;
};

// ri of a nonempty interval: a singleton is its own relative interior
// (its affine hull is the point), otherwise the open interval.
inline Interval relative_interior_interval(const Interval& i) {
  if (i.is_empty()) throw EmptySetError("relative interior of empty interval");
  if (i.is_singleton()) return i;
  return Interval::open(i.lo(), i.hi());
}

inline bool ri_intersect_nonempty(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty())
    throw EmptySetError("ri intersection test on empty interval");
  return !relative_interior_interval(a).intersect(relative_interior_interval(b)).is_empty();
}

// A closed convex subset of the real line: empty, [lo,hi], a closed
// half-line, or all of R.  Finite endpoints are always closed.
class IntervalSet {
 public:
  IntervalSet() : empty_(true), lo_(0), hi_(0), unb_lo_(false), unb_hi_(false) {}

  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet all() {
    IntervalSet s;
    s.empty_ = false;
    s.unb_lo_ = s.unb_hi_ = true;
    s.lo_ = neg_inf();
    s.hi_ = pos_inf();
    return s;
  }
  static IntervalSet closed(double lo, double hi) {
    if (lo > hi) return IntervalSet();
    IntervalSet s;
    s.empty_ = false;
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
  }
  static IntervalSet at_most(double hi) {
    IntervalSet s;
    s.empty_ = false;
    s.unb_lo_ = true;
    s.lo_ = neg_inf();
    s.hi_ = hi;
    return s;
  }
  static IntervalSet at_least(double lo) {
    IntervalSet s;
    s.empty_ = false;
    s.unb_hi_ = true;
    s.lo_ = lo;
    s.hi_ = pos_inf();
    return s;
  }

  bool is_empty() const { return empty_; }
  bool unbounded_below() const { return !empty_ && unb_lo_; }
  bool unbounded_above() const { return !empty_ && unb_hi_; }
  // Endpoints as raw doubles, +-inf on unbounded sides.
  double lo() const { return empty_ ? 0 : lo_; }
  double hi() const { return empty_ ? 0 : hi_; }

  Interval interval() const {
    if (empty_) return Interval::empty();
    return Interval::make(lo_, hi_, std::isfinite(lo_), std::isfinite(hi_));
  }

  bool contains(double x, double tol = 0.0) const {
    if (empty_) return false;
    return x >= lo_ - tol && x <= hi_ + tol;
  }

  IntervalSet intersect(const IntervalSet& o) const {
    if (empty_ || o.empty_) return IntervalSet();
    double lo = std::max(lo_, o.lo_);
    double hi = std::min(hi_, o.hi_);
    if (lo > hi) return IntervalSet();
    IntervalSet s;
    s.empty_ = false;
    s.lo_ = lo;
    s.hi_ = hi;
    s.unb_lo_ = std::isinf(lo);
    s.unb_hi_ = std::isinf(hi);
    return s;
  }

  // Image under multiplication by lambda > 0.
  IntervalSet scaled(double lambda) const {
    if (empty_) return IntervalSet();
    IntervalSet s = *this;
    s.lo_ = lo_ * lambda;
    s.hi_ = hi_ * lambda;
    return s;
  }

  // True when both sets are empty or agree endpoint-wise within tol,
  // with matching unbounded flags.
  bool approx_equal(const IntervalSet& o, double tol) const {
    if (empty_ != o.empty_) return false;
    if (empty_) return true;
    if (unb_lo_ != o.unb_lo_ || unb_hi_ != o.unb_hi_) return false;
    if (!unb_lo_ && std::abs(lo_ - o.lo_) > tol) return false;
    if (!unb_hi_ && std::abs(hi_ - o.hi_) > tol) return false;
    return true;
  }

  // Weak containment: this is a subset of o up to tol on finite endpoints.
  bool subset_of(const IntervalSet& o, double tol) const {
    if (empty_) return true;
    if (o.empty_) return false;
    if (unb_lo_ && !o.unb_lo_) return false;
    if (unb_hi_ && !o.unb_hi_) return false;
    if (!o.unb_lo_ && lo_ < o.lo_ - tol) return false;
    if (!o.unb_hi_ && hi_ > o.hi_ + tol) return false;
    return true;
  }

  std::string str() const;

 private:
  bool empty_;
  double lo_, hi_;
  bool unb_lo_, unb_hi_;
};

}  // namespace nearconvex
