#pragma once

#include <map>
#include <string>
#include <vector>

#include "nearconvex/expr.hpp"
#include "nearconvex/extreal.hpp"
#include "nearconvex/interval.hpp"

namespace nearconvex {

// One branch of a piecewise definition.  The expression must evaluate to
// finite values on the closure of the interval.
struct Piece {
  Interval interval;
  Expr expr;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> issues;

  void fail(const std::string& msg) {
    valid = false;
    issues.push_back(msg);
  }
};

// A nearly convex function on R: a convex piecewise base on an interval
// plus value replacements at finitely many boundary points of the domain.
// An override value of +inf removes the point from the effective domain;
// the epigraph then still sits between a convex set and its closure.
class NearlyConvexFn1D {
 public:
  NearlyConvexFn1D(Interval domain, std::vector<Piece> pieces,
                   std::map<double, double> overrides = {});

  const Interval& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::map<double, double>& overrides() const { return overrides_; }

  // Endpoints of the domain closure (+-inf when unbounded).
  double closure_lo() const;
  double closure_hi() const;

  // x lies in the effective domain: inside the domain interval and not
  // removed by an infinite override.
  bool in_domain(double x) const;

  // Function value: +inf outside the domain, the override at override
  // points, the piece formula otherwise.
  ExtReal evaluate(double x) const;

  // Value of the lower semicontinuous convex hull: the piece formula
  // extended to the domain closure, overrides ignored; +inf outside.
  ExtReal closure_value(double x) const;

  // Convex base value on the domain closure, no override, no domain test.
  double base_value(double x) const;

  // Checks the model invariants: pieces ordered and covering the domain,
  // adjacent pieces agreeing at shared endpoints, midpoint convexity of
  // the base on a sampled grid, overrides at boundary points only and not
  // below the closure value, properness.
  ValidationReport validate(int grid = 1025) const;

  // Legendre-Fenchel conjugate sup_x { xi*x - f(x) }, evaluated over the
  // domain closure with closure values.  Overrides only lift values at
  // isolated points so they never change the supremum; the conjugate of f
  // equals that of its closure.
  ExtReal conjugate(double xi) const;

  // lambda * f with lambda > 0 (pieces and overrides scaled).
  NearlyConvexFn1D scaled(double lambda) const;

  // Indicator of a nonempty interval: zero on it, +inf outside.
  static NearlyConvexFn1D indicator(const Interval& set);

  // Piecewise-linear interpolant of sampled values (xs strictly increasing).
  static NearlyConvexFn1D piecewise_linear(const std::vector<double>& xs,
                                           const std::vector<double>& ys);

 private:
  Interval domain_;
  std::vector<Piece> pieces_;
  std::map<double, double> overrides_;
};

// The pointwise sum, materialized: piece intervals intersected, expressions
// added, overrides merged with summed values.  Domains must intersect.
NearlyConvexFn1D sum_functions(const NearlyConvexFn1D& f, const NearlyConvexFn1D& g);

}  // namespace nearconvex
