#include "nearconvex/problems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nearconvex/config.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/numfmt.hpp"

namespace nearconvex {

namespace {

std::pair<double, double> golden_min(const std::function<double(double)>& g,
                                     double a, double b, int max_iters = 240) {
  const double invphi = 0.6180339887498949;
  if (b <= a) return {a, g(a)};
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = g(c), fd = g(d);
  double best_x = fc <= fd ? c : d;
  double best_v = std::min(fc, fd);
  for (int it = 0; it < max_iters; ++it) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (b - a <= 1e-10 * scale) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = g(d);
    }
    if (fc < best_v) {
      best_v = fc;
      best_x = c;
    }
    if (fd < best_v) {
      best_v = fd;
      best_x = d;
    }
  }
  double xm = 0.5 * (a + b);
  double vm = g(xm);
  if (vm < best_v) return {xm, vm};
  return {best_x, best_v};
}

// Line minimization robust to +inf plateaus: coarse scan for a finite seed,
// golden section between the seed's grid neighbors.
std::pair<double, double> line_min(const std::function<double(double)>& g, double lo,
                                   double hi, int nscan = 33, int giter = 40) {
  if (hi <= lo) return {lo, g(lo)};
  int best = -1;
  double best_v = pos_inf();
  std::vector<double> xs(nscan);
  for (int i = 0; i < nscan; ++i) {
    xs[i] = lo + (hi - lo) * i / (nscan - 1);
    double v = g(xs[i]);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best < 0) return {lo, pos_inf()};
  double a = xs[std::max(0, best - 1)];
  double b = xs[std::min(nscan - 1, best + 1)];
  auto wrap = [&](double x) {
    double v = g(x);
    return std::isfinite(v) ? v : 1e300;
  };
  auto [xm, vm] = golden_min(wrap, a, b, giter);
  if (best_v <= vm) return {xs[best], best_v};
  return {xm, vm};
}

// Interval {x : g(x) <= level} of a convex g, found by minimizing and
// bisecting outward inside [wlo, whi].  Sides touching the window are
// reported as unbounded.
IntervalSet sublevel_interval(const std::function<double(double)>& g, double level,
                              double wlo, double whi) {
  auto [xm, vm] = line_min(g, wlo, whi, 129, 80);
  if (!(vm <= level + TOL_EQ)) return IntervalSet::empty();
  auto member = [&](double x) { return g(x) <= level + TOL_EQ; };
  bool clip_lo = member(wlo);
  bool clip_hi = member(whi);
  double lo = wlo, hi = whi;
  if (!clip_lo) {
    double in = xm, out = wlo;
    for (int i = 0; i < 120; ++i) {
      double mid = 0.5 * (in + out);
      (member(mid) ? in : out) = mid;
    }
    lo = in;
  }
  if (!clip_hi) {
    double in = xm, out = whi;
    for (int i = 0; i < 120; ++i) {
      double mid = 0.5 * (in + out);
      (member(mid) ? in : out) = mid;
    }
    hi = in;
  }
  if (clip_lo && clip_hi) return IntervalSet::all();
  if (clip_lo) return IntervalSet::at_most(hi);
  if (clip_hi) return IntervalSet::at_least(lo);
  return IntervalSet::closed(lo, hi);
}

bool is_lifted_point(const NearlyConvexFn1D& f, double x) {
  for (const auto& [p, v] : f.overrides()) {
    if (std::abs(x - p) <= TOL_EVAL) {
      if (!std::isfinite(v)) return true;
      return v > f.base_value(p) + TOL_EVAL;
    }
  }
  return false;
}

}  // namespace

MinimizeResult minimize_on(const NearlyConvexFn1D& f, const Interval& s) {
  Interval r = s.intersect(f.domain());
  if (r.is_empty())
    throw InfeasibleIntersectionError("minimize_on: S does not meet the domain");
  Interval cl = r.closure();
  double lo = std::isfinite(cl.lo()) ? cl.lo() : -GRID_CLAMP;
  double hi = std::isfinite(cl.hi()) ? cl.hi() : GRID_CLAMP;

  MinimizeResult out;
  if (hi - lo <= TOL_EVAL) {
    ExtReal v = f.evaluate(lo);
    out.value = v;
    out.argmin = lo;
    out.attained = v.finite();
    return out;
  }

  auto base = [&](double x) { return f.base_value(x); };
  auto [xg, vg] = golden_min(base, lo, hi);
  double xstar = xg, vstar = vg;
  // exact endpoints and piece breakpoints
  std::vector<double> cands{lo, hi};
  for (const Piece& p : f.pieces()) {
    for (double c : {p.interval.lo(), p.interval.hi()}) {
      if (std::isfinite(c) && c >= lo - TOL_EVAL && c <= hi + TOL_EVAL)
        cands.push_back(std::clamp(c, lo, hi));
    }
  }
  for (double c : cands) {
    double v = base(c);
    if (v < vstar) {
      vstar = v;
      xstar = c;
    }
  }

  if (!is_lifted_point(f, xstar)) {
    out.value = ExtReal(vstar);
    out.argmin = xstar;
    out.attained = true;
    return out;
  }

  // The base minimizer is a replaced boundary point.  Look for another
  // minimizer: the sublevel set {base <= vstar + tol} is an interval.
  auto near_min = [&](double x) { return base(x) <= vstar + 1e-11; };
  double m1 = xstar, m2 = xstar;
  {
    double in = xstar, outp = lo;
    for (int i = 0; i < 80; ++i) {
      double mid = 0.5 * (in + outp);
      (near_min(mid) ? in : outp) = mid;
    }
    m1 = in;
    in = xstar;
    outp = hi;
    for (int i = 0; i < 80; ++i) {
      double mid = 0.5 * (in + outp);
      (near_min(mid) ? in : outp) = mid;
    }
    m2 = in;
  }
  if (m2 - m1 > 1e-6) {
    double q = 0.5 * (m1 + m2);
    if (!is_lifted_point(f, q)) {
      out.value = ExtReal(vstar);
      out.argmin = q;
      out.attained = true;
      return out;
    }
  }
  out.value = ExtReal(vstar);
  out.argmin = xstar;
  out.attained = false;
  return out;
}

bool is_eps_solution(const ConstrainedProblem& p, double x_bar, double eps) {
  if (!p.feasible.contains(x_bar, TOL_EQ))
    throw InfeasiblePointError("is_eps_solution: x_bar is not feasible");
  if (!p.objective.in_domain(x_bar))
    throw InfeasiblePointError("is_eps_solution: x_bar outside the objective domain");
  double fx = p.objective.evaluate(x_bar).value();
  MinimizeResult m = minimize_on(p.objective, p.feasible);
  if (!m.value.finite()) return true;
  return fx <= m.value.raw() + eps + TOL_EQ;
}

OptimalityCertificate optimality_certificate(const ConstrainedProblem& p, double x_bar,
                                             double eps) {
  if (!ri_intersect_nonempty(p.objective.domain(), p.feasible))
    throw QualificationError(
        "optimality certificate: ri(dom phi) does not meet ri(S)");
  if (!is_eps_solution(p, x_bar, eps))
    throw NotEpsSolutionError("optimality certificate: x_bar is not an eps-solution");

  NearlyConvexFn1D ind = NearlyConvexFn1D::indicator(p.feasible);
  SplitCertificate split = sum_rule_decompose(p.objective, ind, x_bar, eps, 0.0);

  OptimalityCertificate cert;
  cert.eps1 = split.eps1;
  cert.eps2 = split.eps2;
  cert.xi = split.xi1;

  // independent re-validation: raw inequality for the objective, closed
  // form for the normal set
  if (!oracle_esub_membership(p.objective, x_bar, cert.eps1 + 1e-8, cert.xi))
    throw Error("optimality certificate failed raw-oracle re-validation (objective)");
  IntervalSet n = enormal_interval(p.feasible, x_bar, cert.eps2);
  if (!n.contains(-cert.xi, 1e-8 * (1.0 + std::abs(cert.xi))))
    throw Error("optimality certificate failed re-validation (normal set)");
  return cert;
}

OptimalityCertificate parametric_certificate(const ParametricProblem& p, double x_bar,
                                             double y_bar, double eps) {
  NearlyConvexFn1D slice = p.objective.slice_at(x_bar);
  IntervalSet gs = p.constraint_graph.slice_at(x_bar);
  if (gs.is_empty())
    throw InfeasiblePointError("parametric certificate: G(x_bar) is empty");
  if (!gs.contains(y_bar, TOL_EQ))
    throw InfeasiblePointError("parametric certificate: y_bar not in G(x_bar)");
  ConstrainedProblem slice_problem{slice, gs.interval()};
  return optimality_certificate(slice_problem, y_bar, eps);
}

MinimizeResult value_function_min(const ParametricProblem& p, double x) {
  MinimizeResult out;
  out.value = ExtReal::pos_inf();
  if (!p.objective.f1().in_domain(x)) return out;
  IntervalSet gs = p.constraint_graph.slice_at(x);
  if (gs.is_empty()) return out;
  NearlyConvexFn1D slice = p.objective.slice_at(x);
  try {
    return minimize_on(slice, gs.interval());
  } catch (const InfeasibleIntersectionError&) {
    return out;
  }
}

ExtReal value_function(const ParametricProblem& p, double x) {
  return value_function_min(p, x).value;
}

IntervalSet approx_solution_set(const ParametricProblem& p, double x_bar, double eta) {
  ExtReal m = value_function(p, x_bar);
  if (!m.finite()) throw ValueInfiniteError("approx_solution_set: m(x_bar) is infinite");
  NearlyConvexFn1D slice = p.objective.slice_at(x_bar);
  IntervalSet gs = p.constraint_graph.slice_at(x_bar);
  Interval r = gs.interval().intersect(slice.domain());
  if (r.is_empty()) throw ValueInfiniteError("approx_solution_set: empty slice");
  Interval cl = r.closure();
  double lo = std::isfinite(cl.lo()) ? cl.lo() : -GRID_CLAMP;
  double hi = std::isfinite(cl.hi()) ? cl.hi() : GRID_CLAMP;
  double thr = m.raw() + eta;
  auto base = [&](double y) { return slice.base_value(y); };
  IntervalSet sub = sublevel_interval(base, thr, lo, hi);
  // the solution set cannot outgrow the slice itself
  return sub.intersect(gs);
}

namespace {

// y samples of the approximate solution set, filtered by actual values
// (value replacements above the threshold drop out here).
std::vector<double> sample_solution_set(const ParametricProblem& p, double x_bar,
                                        double eta, double m_val, int n) {
  IntervalSet hull = approx_solution_set(p, x_bar, eta);
  NearlyConvexFn1D slice = p.objective.slice_at(x_bar);
  std::vector<double> kept;
  if (hull.is_empty()) return kept;
  double lo = hull.unbounded_below() ? -GRID_CLAMP : hull.lo();
  double hi = hull.unbounded_above() ? GRID_CLAMP : hull.hi();
  for (int i = 0; i < n; ++i) {
    double y = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    ExtReal v = slice.evaluate(y);
    if (v.finite() && v.raw() <= m_val + eta + 1e-10) kept.push_back(y);
  }
  return kept;
}

}  // namespace

IntervalSet sensitivity_unconstrained(const ParametricProblem& p, double x_bar,
                                      double eps, const EtaLadder& ladder,
                                      const Interval& xi_window, int xi_grid) {
  (void)xi_grid;
  ExtReal m = value_function(p, x_bar);
  if (!m.finite())
    throw ValueInfiniteError("sensitivity_unconstrained: m(x_bar) is infinite");
  const NearlyConvexFn1D& f1 = p.objective.f1();
  const NearlyConvexFn1D& f2 = p.objective.f2();
  double c2 = f2.conjugate(0.0).raw();

  IntervalSet acc = IntervalSet::all();
  for (double eta : ladder.values) {
    std::vector<double> ys = sample_solution_set(p, x_bar, eta, m.raw(), 257);
    if (ys.empty()) continue;
    NearlyConvexFn1D slice = p.objective.slice_at(x_bar);
    double vmin = pos_inf();
    for (double y : ys) vmin = std::min(vmin, slice.evaluate(y).raw());
    auto g = [&](double xi) {
      ExtReal c1 = f1.conjugate(xi);
      if (c1.is_pos_inf()) return pos_inf();
      return c1.raw() + c2 + vmin - xi * x_bar;
    };
    IntervalSet level =
        sublevel_interval(g, eps + eta, xi_window.lo(), xi_window.hi());
    acc = acc.intersect(level);
    if (acc.is_empty()) break;
  }
  return acc;
}

IntervalSet sensitivity_exact(const ParametricProblem& p, double x_bar, double eps,
                              double y_bar) {
  ExtReal m = value_function(p, x_bar);
  if (!m.finite()) throw ValueInfiniteError("sensitivity_exact: m(x_bar) is infinite");
  ExtReal fy = p.objective.evaluate({x_bar, y_bar});
  if (!fy.finite() || std::abs(fy.raw() - m.raw()) > TOL_EQ * (1.0 + std::abs(m.raw())))
    throw NotExactSolutionError("sensitivity_exact: f(x_bar, y_bar) != m(x_bar)");
  const NearlyConvexFn1D& f1 = p.objective.f1();
  double c2 = p.objective.f2().conjugate(0.0).raw();
  auto g = [&](double xi) {
    ExtReal c1 = f1.conjugate(xi);
    if (c1.is_pos_inf()) return pos_inf();
    return c1.raw() + c2 + fy.raw() - xi * x_bar;
  };
  const double w = 4.0 * (8.0 + 2.0 * std::abs(x_bar));
  return sublevel_interval(g, eps, -w, w);
}

namespace {

// Lazily tabulated conjugate on a uniform grid with linear interpolation;
// the inner loops of the constrained sensitivity search hit it millions of
// times.
class ConjCache {
 public:
  explicit ConjCache(const NearlyConvexFn1D& f, double lo = -40.0, double hi = 40.0,
                     int cells = 1 << 19)
      : f_(f), lo_(lo), hi_(hi), n_(cells), vals_(cells + 1, nan_marker()) {}

  double operator()(double s) const {
    if (s < lo_ || s > hi_) return f_.conjugate(s).raw();
    double t = (s - lo_) / (hi_ - lo_) * n_;
    int i = std::min(n_ - 1, static_cast<int>(t));
    double w = t - i;
    double a = cell(i), b = cell(i + 1);
    if (std::isinf(a) || std::isinf(b)) return pos_inf();
    return a + w * (b - a);
  }

 private:
  static double nan_marker() { return std::numeric_limits<double>::quiet_NaN(); }
  double cell(int i) const {
    if (std::isnan(vals_[i])) {
      double s = lo_ + (hi_ - lo_) * i / n_;
      vals_[i] = f_.conjugate(s).raw();
    }
    return vals_[i];
  }

  const NearlyConvexFn1D& f_;
  double lo_, hi_;
  int n_;
  mutable std::vector<double> vals_;
};

VPolyhedron2 box_polyhedron(const Interval& xr, const Interval& yr) {
  double xl = std::isfinite(xr.lo()) ? xr.lo() : -GRID_CLAMP;
  double xh = std::isfinite(xr.hi()) ? xr.hi() : GRID_CLAMP;
  double yl = std::isfinite(yr.lo()) ? yr.lo() : -GRID_CLAMP;
  double yh = std::isfinite(yr.hi()) ? yr.hi() : GRID_CLAMP;
  return VPolyhedron2({{xl, yl}, {xh, yl}, {xh, yh}, {xl, yh}}, {});
}

}  // namespace

IntervalSet sensitivity_constrained(const ParametricProblem& p, double x_bar,
                                    double eps, const EtaLadder& ladder,
                                    int split_grid, const Interval& xi_window,
                                    int xi_grid) {
  const NearlyConvexFn1D& f1 = p.objective.f1();
  const NearlyConvexFn1D& f2 = p.objective.f2();
  VPolyhedron2 box = box_polyhedron(f1.domain(), f2.domain());
  if (!common_interior_point({box, p.constraint_graph}))
    throw QualificationError(
        "sensitivity_constrained: ri(dom f) does not meet ri(gph G)");
  ExtReal m = value_function(p, x_bar);
  if (!m.finite())
    throw ValueInfiniteError("sensitivity_constrained: m(x_bar) is infinite");

  ConjCache conj1(f1), conj2(f2);
  double f1x = f1.evaluate(x_bar).value();
  const VPolyhedron2& G = p.constraint_graph;
  // split_grid steers the inner search resolution
  const int nscan = std::max(9, split_grid / 8);

  // Membership of xi at level T for one y: does some split gamma1+gamma2=T
  // admit a subgradient a of f at (x_bar,y) with (xi,0)-a gamma2-normal to
  // gph G?  Writing g_i for the per-coordinate conjugate gaps and C for the
  // normal-set slack, that is exactly min_a [g1+g2+lift+max(0,C)] <= T.
  auto predicate = [&](double xi, double y, double T) {
    double f2y = f2.evaluate(y).raw();
    double lift = p.objective.evaluate({x_bar, y}).raw() - (f1x + f2y);
    IntervalSet w1 = esub_interval(f1, x_bar, T + 0.25);
    IntervalSet w2 = esub_interval(f2, y, T + 0.25);
    if (w1.is_empty() || w2.is_empty()) return false;
    double a1lo = w1.unbounded_below() ? -GRID_CLAMP : w1.lo();
    double a1hi = w1.unbounded_above() ? GRID_CLAMP : w1.hi();
    double a2lo = w2.unbounded_below() ? -GRID_CLAMP : w2.lo();
    double a2hi = w2.unbounded_above() ? GRID_CLAMP : w2.hi();
    Vec2 pt{x_bar, y};
    auto phi = [&](double a1, double a2) {
      double g1 = conj1(a1) + f1x - a1 * x_bar;
      double g2 = conj2(a2) + f2y - a2 * y;
      if (!std::isfinite(g1) || !std::isfinite(g2)) return pos_inf();
      Vec2 w{xi - a1, -a2};
      ExtReal s = G.support(w);
      if (s.is_pos_inf()) return pos_inf();
      double c = s.raw() - dot(w, pt);
      return g1 + g2 + lift + std::max(0.0, c);
    };
    auto outer = [&](double a1) {
      return line_min([&](double a2) { return phi(a1, a2); }, a2lo, a2hi, nscan, 24)
          .second;
    };
    double best = line_min(outer, a1lo, a1hi, nscan, 24).second;
    return best <= T + 1e-7;
  };

  IntervalSet acc = IntervalSet::all();
  for (double eta : ladder.values) {
    double T = eps + eta;
    std::vector<double> ys = sample_solution_set(p, x_bar, eta, m.raw(), 33);
    if (ys.empty()) continue;
    IntervalSet eta_set = IntervalSet::all();
    for (double y : ys) {
      // the xi set for one y is an interval: seed scan, then edge bisection
      double wl = xi_window.lo(), wh = xi_window.hi();
      int seed = -1;
      for (int i = 0; i < xi_grid; ++i) {
        double xi = wl + (wh - wl) * i / (xi_grid - 1);
        if (predicate(xi, y, T)) {
          seed = i;
          break;
        }
      }
      if (seed < 0) {
        eta_set = IntervalSet::empty();
        break;
      }
      double xs = wl + (wh - wl) * seed / (xi_grid - 1);
      auto member = [&](double xi) { return predicate(xi, y, T); };
      double lo = xs, hi = xs;
      if (member(wl)) {
        lo = wl;
      } else {
        double in = xs, out = wl;
        for (int i = 0; i < 40; ++i) {
          double mid = 0.5 * (in + out);
          (member(mid) ? in : out) = mid;
        }
        lo = in;
      }
      if (member(wh)) {
        hi = wh;
      } else {
        double in = xs, out = wh;
        for (int i = 0; i < 40; ++i) {
          double mid = 0.5 * (in + out);
          (member(mid) ? in : out) = mid;
        }
        hi = in;
      }
      eta_set = eta_set.intersect(IntervalSet::closed(lo, hi));
      if (eta_set.is_empty()) break;
    }
    acc = acc.intersect(eta_set);
    if (acc.is_empty()) break;
  }
  return acc;
}

IntervalSet value_function_esub_direct(const ParametricProblem& p, double x_bar,
                                       double eps, int grid) {
  IntervalSet xr = p.constraint_graph.x_range();
  Interval d1 = p.objective.f1().domain();
  double lo = std::max(std::isfinite(d1.lo()) ? d1.lo() : -GRID_CLAMP,
                       xr.unbounded_below() ? -GRID_CLAMP : xr.lo());
  double hi = std::min(std::isfinite(d1.hi()) ? d1.hi() : GRID_CLAMP,
                       xr.unbounded_above() ? GRID_CLAMP : xr.hi());
  if (!(lo < hi)) throw ValueInfiniteError("value_function_esub_direct: empty range");

  std::vector<double> xs, ms;
  xs.reserve(grid);
  ms.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    double x = lo + (hi - lo) * i / (grid - 1);
    ExtReal v = value_function(p, x);
    if (v.finite()) {
      xs.push_back(x);
      ms.push_back(v.raw());
    }
  }
  if (xs.size() < 3 || x_bar < xs.front() - TOL_EQ || x_bar > xs.back() + TOL_EQ)
    throw ValueInfiniteError(
        "value_function_esub_direct: m is not finite around x_bar");
  NearlyConvexFn1D fit = NearlyConvexFn1D::piecewise_linear(xs, ms);
  return esub_interval(fit, std::clamp(x_bar, xs.front(), xs.back()), eps);
}

}  // namespace nearconvex
