#pragma once

#include "nearconvex/problems.hpp"

namespace nearconvex::builtin {

// -sqrt(x) on [0,1] with the value at 1 lifted to 1: the classic shape
// whose exact subdifferential at 0 is empty while every eps-subdifferential
// is a half-line.
NearlyConvexFn1D sqrt_boundary_fn();

// Companion without the lift: -sqrt(x) on [0,1].
NearlyConvexFn1D sqrt_plain_fn();

// Mirrored pair with domains [0,1] and [-1,0] meeting only at 0; their
// relative interiors do not intersect, so the sum rule is not available.
NearlyConvexFn1D mirrored_sqrt_left();
NearlyConvexFn1D mirrored_sqrt_right();

// |x| on [-1,1] with the value at 1 lifted to 2, constrained to [0, inf).
ConstrainedProblem abs_lifted_problem();

// x^2 + y^2 on [-1,1]^2 with the point (1/2, 1) removed, free constraint
// (G is the full box); the optimal value function is x^2.
ParametricProblem quadratic_box_problem();

// |x|/2 + 3|y|/2 on [-1,1]^2 with (1/2, 1) removed, constrained by
// G(x) = {y >= |x|}; the optimal value function is 2|x|.
ParametricProblem weighted_abs_cone_problem();

// The graph {(x,y) : y >= |x|} as a V-polyhedron.
VPolyhedron2 abs_epigraph_cone();

}  // namespace nearconvex::builtin
