#pragma once

#include "nearconvex/calculus.hpp"
#include "nearconvex/separable.hpp"

namespace nearconvex {

// inf phi(x) subject to x in S, with S an interval (a nearly convex subset
// of R is convex).
struct ConstrainedProblem {
  NearlyConvexFn1D objective;
  Interval feasible;
};

// min { f(x,y) : y in G(x) } parameterized by x; G is carried by its graph.
struct ParametricProblem {
  SeparableFn2D objective;
  VPolyhedron2 constraint_graph;
};

struct MinimizeResult {
  ExtReal value;
  double argmin = 0;    // minimizing or value-approaching point
  bool attained = false;
};

// eps1 + eps2 = eps; xi is an eps1-subgradient of the objective at x_bar
// and -xi is eps2-normal to the feasible set there.
struct OptimalityCertificate {
  double eps1 = 0;
  double eps2 = 0;
  double xi = 0;
};

// Infimum of f over S (golden section on the convex base, then override
// accounting).  When the infimum is approached only at a lifted or removed
// boundary point, the limit value is returned with attained = false.
MinimizeResult minimize_on(const NearlyConvexFn1D& f, const Interval& s);

bool is_eps_solution(const ConstrainedProblem& p, double x_bar, double eps);

// Split certificate for 0 in the eps-subdifferential of phi + indicator(S),
// re-validated through the raw-inequality oracle and the closed-form
// normal set before being returned.
OptimalityCertificate optimality_certificate(const ConstrainedProblem& p, double x_bar,
                                             double eps);

// Certificate in y for the slice problem (f(x_bar, .), G(x_bar)).
OptimalityCertificate parametric_certificate(const ParametricProblem& p, double x_bar,
                                             double y_bar, double eps);

// m(x) = inf { f(x,y) : y in G(x) }, +inf outside dom G or the box.
ExtReal value_function(const ParametricProblem& p, double x);

// The slice minimization behind m(x), with attainment information.
MinimizeResult value_function_min(const ParametricProblem& p, double x);

// S_eta(x_bar) = { y in G(x_bar) : f(x_bar,y) <= m(x_bar) + eta }, returned
// as the closed hull of the base sublevel set; removed or lifted boundary
// points above the threshold are excluded by samplers re-checking values.
IntervalSet approx_solution_set(const ParametricProblem& p, double x_bar, double eta);

// eps-subdifferential of the optimal value function at x_bar for a problem
// whose constraint slice is the whole box: slopes xi with (xi, 0) an
// (eps+eta)-subgradient of f at (x_bar, y) for some y near the solution
// set, intersected down the eta ladder.
IntervalSet sensitivity_unconstrained(const ParametricProblem& p, double x_bar,
                                      double eps, const EtaLadder& ladder,
                                      const Interval& xi_window, int xi_grid = 257);

// Exact-solution form: requires f(x_bar, y_bar) = m(x_bar); a single scan
// at level eps, no ladder.
IntervalSet sensitivity_exact(const ParametricProblem& p, double x_bar, double eps,
                              double y_bar);

// Constrained form: (xi,0) in the gamma1-subdifferential of f at (x_bar,y)
// plus the gamma2-normal set to gph G, with gamma1+gamma2 = eps+eta.  The
// split existence is decided by minimizing the summed membership slacks
// over the subgradient box, which is exactly the union over splits.
IntervalSet sensitivity_constrained(const ParametricProblem& p, double x_bar,
                                    double eps, const EtaLadder& ladder,
                                    int split_grid, const Interval& xi_window,
                                    int xi_grid = 65);

// Independent check of both sensitivity routes: sample m on a grid, fit a
// piecewise-linear function, and take its eps-subdifferential.
IntervalSet value_function_esub_direct(const ParametricProblem& p, double x_bar,
                                       double eps, int grid = 1025);

}  // namespace nearconvex
