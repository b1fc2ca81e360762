#include "nearconvex/separable.hpp"

#include <cmath>

#include "nearconvex/config.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/numfmt.hpp"

namespace nearconvex {

SeparableFn2D::SeparableFn2D(NearlyConvexFn1D f1, NearlyConvexFn1D f2,
                             std::vector<std::pair<Vec2, double>> point_overrides)
    : f1_(std::move(f1)), f2_(std::move(f2)), overrides_(std::move(point_overrides)) {}

ExtReal SeparableFn2D::evaluate(Vec2 p) const {
  for (const auto& [q, v] : overrides_) {
    if (std::abs(q.x - p.x) <= TOL_EVAL && std::abs(q.y - p.y) <= TOL_EVAL)
      return ExtReal(v);
  }
  ExtReal a = f1_.evaluate(p.x);
  ExtReal b = f2_.evaluate(p.y);
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtReal::pos_inf();
  return ExtReal(a.raw() + b.raw());
}

ExtReal SeparableFn2D::conjugate(Vec2 w) const {
  ExtReal a = f1_.conjugate(w.x);
  ExtReal b = f2_.conjugate(w.y);
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtReal::pos_inf();
  return ExtReal(a.raw() + b.raw());
}

ValidationReport SeparableFn2D::validate(int grid) const {
  ValidationReport rep;
  ValidationReport r1 = f1_.validate(grid);
  ValidationReport r2 = f2_.validate(grid);
  for (const auto& s : r1.issues) rep.fail("f1: " + s);
  for (const auto& s : r2.issues) rep.fail("f2: " + s);
  for (const auto& [q, v] : overrides_) {
    ExtReal a = f1_.closure_value(q.x);
    ExtReal b = f2_.closure_value(q.y);
    if (a.is_pos_inf() || b.is_pos_inf()) {
      rep.fail("point override at (" + fmt_num(q.x) + "," + fmt_num(q.y) +
               ") lies outside the box");
      continue;
    }
    if (std::isfinite(v) && v < a.raw() + b.raw() - TOL_EQ)
      rep.fail("point override at (" + fmt_num(q.x) + "," + fmt_num(q.y) +
               ") lies below the separable value");
  }
  return rep;
}

NearlyConvexFn1D SeparableFn2D::slice_at(double x) const {
  ExtReal c = f1_.evaluate(x);
  if (!c.finite())
    throw OutOfDomainError("slice_at: x=" + fmt_num(x) + " outside dom f1");
  std::vector<Piece> pieces;
  pieces.reserve(f2_.pieces().size());
  for (const Piece& p : f2_.pieces())
    pieces.push_back({p.interval, Expr::add(Expr::constant(c.raw()), p.expr)});
  std::map<double, double> ov;
  for (const auto& [p, v] : f2_.overrides())
    ov[p] = std::isfinite(v) ? c.raw() + v : v;
  for (const auto& [q, v] : overrides_) {
    if (std::abs(q.x - x) <= TOL_EVAL) ov[q.y] = v;
  }
  return NearlyConvexFn1D(f2_.domain(), std::move(pieces), std::move(ov));
}

}  // namespace nearconvex
