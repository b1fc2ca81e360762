#include "nearconvex/builtin.hpp"

namespace nearconvex::builtin {

NearlyConvexFn1D sqrt_boundary_fn() {
  Expr e = Expr::neg(Expr::sqrt(Expr::var()));
  return NearlyConvexFn1D(Interval::closed(0, 1),
                          {Piece{Interval::closed_open(0, 1), e}}, {{1.0, 1.0}});
}

NearlyConvexFn1D sqrt_plain_fn() {
  Expr e = Expr::neg(Expr::sqrt(Expr::var()));
  return NearlyConvexFn1D(Interval::closed(0, 1), {Piece{Interval::closed(0, 1), e}});
}

NearlyConvexFn1D mirrored_sqrt_left() { return sqrt_plain_fn(); }

NearlyConvexFn1D mirrored_sqrt_right() {
  Expr e = Expr::neg(Expr::sqrt(Expr::neg(Expr::var())));
  return NearlyConvexFn1D(Interval::closed(-1, 0), {Piece{Interval::closed(-1, 0), e}});
}

ConstrainedProblem abs_lifted_problem() {
  Expr e = Expr::abs(Expr::var());
  NearlyConvexFn1D phi(Interval::closed(-1, 1),
                       {Piece{Interval::closed_open(-1, 1), e}}, {{1.0, 2.0}});
  return ConstrainedProblem{phi, Interval::make(0, pos_inf(), true, false)};
}

namespace {

NearlyConvexFn1D quad_on_unit_box() {
  return NearlyConvexFn1D(Interval::closed(-1, 1),
                          {Piece{Interval::closed(-1, 1), Expr::sq(Expr::var())}});
}

VPolyhedron2 unit_box() {
  return VPolyhedron2({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, {});
}

}  // namespace

ParametricProblem quadratic_box_problem() {
  SeparableFn2D f(quad_on_unit_box(), quad_on_unit_box(),
                  {{Vec2{0.5, 1.0}, pos_inf()}});
  return ParametricProblem{f, unit_box()};
}

VPolyhedron2 abs_epigraph_cone() {
  return VPolyhedron2({{0, 0}}, {{1, 1}, {-1, 1}});
}

ParametricProblem weighted_abs_cone_problem() {
  Expr half_abs = Expr::scale(0.5, Expr::abs(Expr::var()));
  Expr three_half_abs = Expr::scale(1.5, Expr::abs(Expr::var()));
  NearlyConvexFn1D f1(Interval::closed(-1, 1),
                      {Piece{Interval::closed(-1, 1), half_abs}});
  NearlyConvexFn1D f2(Interval::closed(-1, 1),
                      {Piece{Interval::closed(-1, 1), three_half_abs}});
  SeparableFn2D f(f1, f2, {{Vec2{0.5, 1.0}, pos_inf()}});
  return ParametricProblem{f, abs_epigraph_cone()};
}

}  // namespace nearconvex::builtin
