#pragma once

#include <optional>
#include <vector>

#include "nearconvex/fn1d.hpp"
#include "nearconvex/interval.hpp"
#include "nearconvex/polyhedron.hpp"

namespace nearconvex {

// Witness of a two-way split: eps1 + eps2 equals the target budget and
// xi1 + xi2 the decomposed slope, each within 1e-10.
struct SplitCertificate {
  double eps1 = 0;
  double eps2 = 0;
  double xi1 = 0;
  double xi2 = 0;
};

// Decreasing positive levels standing in for the "for every eta > 0"
// quantifier; the default is 2^-k, k = 0..20.
struct EtaLadder {
  std::vector<double> values;

  static EtaLadder standard(int depth = 21);
};

// --- epsilon-subdifferentials of 1D nearly convex functions ---------------

// Conjugate characterization: xi belongs to the eps-subdifferential at
// x_bar iff f*(xi) + f(x_bar) - xi*x_bar <= eps (+ membership tolerance).
bool esub_membership(const NearlyConvexFn1D& f, double x_bar, double eps, double xi);

// The gap f*(xi) + f(x_bar) - xi*x_bar itself (>= 0 by Fenchel-Young);
// +inf when the conjugate is infinite.
ExtReal esub_gap(const NearlyConvexFn1D& f, double x_bar, double xi);

// The full set as a closed interval of R.  Sides are classified as
// unbounded analytically: x_bar must sit at the matching end of the domain
// closure and the asymptotic gap f(x_bar) - cl f(end) must either stay
// strictly below eps or be attained at the probe slope.  May be empty.
IntervalSet esub_interval(const NearlyConvexFn1D& f, double x_bar, double eps);

struct OracleResult {
  IntervalSet set;
  bool clipped_lo = false;  // accepted slopes touch the window edge
  bool clipped_hi = false;
};

// Independent brute-force evaluation of the defining inequality
// xi*(x - x_bar) - eps <= f(x) - f(x_bar) over an x grid (override points
// and finite endpoints always included), scanning xi over the window and
// sharpening the accepted boundary by bisection of the same raw predicate.
OracleResult oracle_esub_interval(const NearlyConvexFn1D& f, double x_bar, double eps,
                                  int x_grid_size, const Interval& xi_window,
                                  int xi_grid_size);

// Raw-inequality membership over an x grid; the independent cross-check of
// the conjugate characterization.
bool oracle_esub_membership(const NearlyConvexFn1D& f, double x_bar, double eps,
                            double xi, int x_grid_size = 4001);

struct LimitResult {
  IntervalSet set;         // at the smallest ladder level
  double endpoint_delta;   // endpoint movement across the last two levels
};

// Decreasing-eps approximation of the exact subdifferential.
LimitResult esub_limit(const NearlyConvexFn1D& f, double x_bar, const EtaLadder& ladder);

// lambda * (eps/lambda)-subdifferential, lambda > 0.
IntervalSet scalar_rule(const NearlyConvexFn1D& f, double lambda, double x_bar,
                        double eps);

struct InfConvResult {
  ExtReal value;
  double xi1 = 0;  // attaining split of xi
};

// (f1* box f2*)(xi): the infimal convolution of the conjugates, minimized
// over xi1 by golden section.  Requires ri(dom f1) and ri(dom f2) to meet,
// which is what makes the infimum attained.
InfConvResult infimal_convolution(const NearlyConvexFn1D& f1,
                                  const NearlyConvexFn1D& f2, double xi);

// Split of xi in the eps-subdifferential of f1+f2 at x_bar into
// xi_i in the (eps_i)-subdifferential of f_i, residual slack shared evenly.
SplitCertificate sum_rule_decompose(const NearlyConvexFn1D& f1,
                                    const NearlyConvexFn1D& f2, double x_bar,
                                    double eps, double xi);

// --- epsilon-normal sets and coderivatives ---------------------------------

// Closed form for an interval of R: bounds eps/(sup-x_bar) and symmetric,
// degenerating to 0 at infinite ends and to no bound when x_bar is the end.
IntervalSet enormal_interval(const Interval& omega, double x_bar, double eps);

bool enormal2_membership(const VPolyhedron2& omega, Vec2 p_bar, double eps, Vec2 w);

// u in D*_eps F(p_bar)(v) iff (u,-v) is eps-normal to the graph.
bool ecoderiv_membership(const VPolyhedron2& graph, Vec2 p_bar, double eps, double v,
                         double u);

// Support of the epigraph of f in direction w (finite only for w.y <= 0).
ExtReal epi_support(const NearlyConvexFn1D& f, Vec2 w);

// (u,-1) eps-normal to the epigraph at (x_bar, f(x_bar)), evaluated through
// the epigraph support; equivalent to esub_membership.
bool epi_membership_check(const NearlyConvexFn1D& f, double x_bar, double eps, double u);

struct CoderivSplit {
  double eps1 = 0, eps2 = 0;
  double u1 = 0, u2 = 0;
};

// Split of u in the eps-coderivative of F1+F2 at (x_bar, y1+y2) against v,
// searched on a discretized (eps1, u1) grid with one refinement pass.
CoderivSplit coderiv_sum_decompose(const VPolyhedron2& graph1,
                                   const VPolyhedron2& graph2, double x_bar,
                                   double y1, double y2, double eps, double v,
                                   double u, int split_grid = 129);

struct IntersectionWitness {
  std::vector<double> eps;
  std::vector<double> v;
  std::vector<double> u;
};

struct IntersectionCheck {
  bool member = false;
  std::optional<IntersectionWitness> witness;
};

// Membership of u in the eps-coderivative of the intersection mapping at
// p_bar against v, plus a discretized witness decomposition when the
// membership holds (2 or 3 graphs).
IntersectionCheck coderiv_intersection_check(const std::vector<VPolyhedron2>& graphs,
                                             Vec2 p_bar, double eps, double v, double u,
                                             int split_grid = 129);

}  // namespace nearconvex
