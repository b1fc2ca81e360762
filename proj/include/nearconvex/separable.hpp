#pragma once

#include <utility>
#include <vector>

#include "nearconvex/fn1d.hpp"
#include "nearconvex/polyhedron.hpp"

namespace nearconvex {

// f(x,y) = f1(x) + f2(y) on the box dom f1 x dom f2, except at finitely
// many points where the value is replaced by something >= the separable
// value (+inf removes the point).  This is how the catalog hosts nearly
// convex objectives whose deviation sits on the box boundary.
class SeparableFn2D {
 public:
  SeparableFn2D(NearlyConvexFn1D f1, NearlyConvexFn1D f2,
                std::vector<std::pair<Vec2, double>> point_overrides = {});

  const NearlyConvexFn1D& f1() const { return f1_; }
  const NearlyConvexFn1D& f2() const { return f2_; }
  const std::vector<std::pair<Vec2, double>>& point_overrides() const {
    return overrides_;
  }

  ExtReal evaluate(Vec2 p) const;

  // Separable conjugate f*(w) = f1*(w.x) + f2*(w.y); point overrides only
  // lift isolated values and never move the supremum.
  ExtReal conjugate(Vec2 w) const;

  ValidationReport validate(int grid = 257) const;

  // The slice y -> f(x, y) as a 1D function: f2 shifted by the constant
  // f1(x), with any point override at matching x applied.  Throws when x
  // is outside dom f1.
  NearlyConvexFn1D slice_at(double x) const;

 private:
  NearlyConvexFn1D f1_, f2_;
  std::vector<std::pair<Vec2, double>> overrides_;
};

}  // namespace nearconvex
