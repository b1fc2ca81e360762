#include "nearconvex/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nearconvex/config.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/numfmt.hpp"

namespace nearconvex {

EtaLadder EtaLadder::standard(int depth) {
  EtaLadder l;
  double v = 1.0;
  for (int i = 0; i < depth; ++i) {
    l.values.push_back(v);
    v *= 0.5;
  }
  return l;
}

namespace {

void require_in_domain(const NearlyConvexFn1D& f, double x_bar) {
  if (!f.in_domain(x_bar))
    throw OutOfDomainError("x_bar=" + fmt_num(x_bar) + " is not in the domain");
}

// Golden-section minimum of a convex function on [a,b], returning the best
// probed point.
std::pair<double, double> golden_min(const std::function<double(double)>& g,
                                     double a, double b, int max_iters = 240) {
  const double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = g(c), fd = g(d);
  double best_x = fc <= fd ? c : d;
  double best_v = std::min(fc, fd);
  for (int it = 0; it < max_iters; ++it) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (b - a <= TOL_EVAL * scale) break;
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

// Convex minimization over [-XI_SEARCH_BOUND, XI_SEARCH_BOUND] that first
// locates a finite seed (the function may be +inf on half-lines) and then
// brackets the minimum by doubling before the golden-section pass.
std::pair<double, double> minimize_convex_line(const std::function<double(double)>& g,
                                               double seed_hint = 0.0) {
  const double W = XI_SEARCH_BOUND;
  double seed = seed_hint;
  double gs = g(seed);
  if (!std::isfinite(gs)) {
    const int n = 257;
    for (int i = 0; i < n && !std::isfinite(gs); ++i) {
      // expanding alternating scan
      double t = (i + 1.0) / n;
      double mag = std::pow(W, t);
      for (double cand : {seed_hint + mag - 1.0, seed_hint - (mag - 1.0)}) {
        if (cand < -W || cand > W) continue;
        double v = g(cand);
        if (std::isfinite(v)) {
          seed = cand;
          gs = v;
          break;
        }
      }
    }
    if (!std::isfinite(gs)) return {seed_hint, pos_inf()};
  }
  // bracket by doubling
  double step = 1.0;
  double lo = seed, hi = seed;
  double glo = gs, ghi = gs;
  while (lo > -W) {
    double cand = std::max(-W, seed - step);
    double v = g(cand);
    if (std::isfinite(v) && v < glo) {
      lo = cand;
      glo = v;
      step *= 2;
    } else {
      lo = cand;
      glo = std::isfinite(v) ? v : glo;
      break;
    }
  }
  step = 1.0;
  while (hi < W) {
    double cand = std::min(W, seed + step);
    double v = g(cand);
    if (std::isfinite(v) && v < ghi) {
      hi = cand;
      ghi = v;
      step *= 2;
    } else {
      hi = cand;
      ghi = std::isfinite(v) ? v : ghi;
      break;
    }
  }
  auto wrap = [&](double x) {
    double v = g(x);
    return std::isfinite(v) ? v : 1e300;
  };
  auto [xm, vm] = golden_min(wrap, lo, hi);
  if (gs < vm) return {seed, gs};
  return {xm, vm};
}

// Largest point of {x : pred(x)} on [inside, outside] given pred(inside),
// by bisection of the predicate boundary.
double bisect_boundary(const std::function<bool(double)>& pred, double inside,
                       double outside) {
  for (int i = 0; i < 200; ++i) {
    double scale = std::max({1.0, std::abs(inside), std::abs(outside)});
    if (std::abs(outside - inside) <= 1e-10 * scale) break;
    double mid = 0.5 * (inside + outside);
    (pred(mid) ? inside : outside) = mid;
  }
  return inside;
}

}  // namespace

ExtReal esub_gap(const NearlyConvexFn1D& f, double x_bar, double xi) {
  ExtReal conj = f.conjugate(xi);
  if (conj.is_pos_inf()) return ExtReal::pos_inf();
  double fx = f.evaluate(x_bar).value();
  return ExtReal(conj.raw() + fx - xi * x_bar);
}

bool esub_membership(const NearlyConvexFn1D& f, double x_bar, double eps, double xi) {
  require_in_domain(f, x_bar);
  ExtReal gap = esub_gap(f, x_bar, xi);
  return gap.finite() && gap.raw() <= eps + TOL_EQ;
}

IntervalSet esub_interval(const NearlyConvexFn1D& f, double x_bar, double eps) {
  require_in_domain(f, x_bar);
  double fx = f.evaluate(x_bar).value();
  double A = f.closure_lo();
  double B = f.closure_hi();

  // Degenerate single-point domain: the gap is constant in xi.
  if (std::isfinite(A) && std::isfinite(B) && B - A <= TOL_EVAL) {
    double gap = fx - f.closure_value(A).raw();
    return gap <= eps + TOL_EQ ? IntervalSet::all() : IntervalSet::empty();
  }

  auto gap = [&](double xi) {
    ExtReal g = esub_gap(f, x_bar, xi);
    return g.finite() ? g.raw() : pos_inf();
  };

  // A side is unbounded only when x_bar sits at that end of the domain
  // closure; the asymptotic gap is f(x_bar) - cl f(end).  Strictly below
  // eps means the sublevel set crosses; equality needs the asymptote to be
  // attained, which the probe slope detects exactly thanks to the exact
  // endpoint term in the conjugate.
  bool unb_lo = std::isfinite(A) && std::abs(x_bar - A) <= TOL_EVAL &&
                (fx - f.closure_value(A).raw() < eps - TOL_EQ ||
                 gap(-XI_ATTAIN_PROBE) <= eps + TOL_EQ);
  bool unb_hi = std::isfinite(B) && std::abs(x_bar - B) <= TOL_EVAL &&
                (fx - f.closure_value(B).raw() < eps - TOL_EQ ||
                 gap(XI_ATTAIN_PROBE) <= eps + TOL_EQ);
  if (unb_lo && unb_hi) return IntervalSet::all();

  auto [xi_min, gmin] = minimize_convex_line(gap);
  if (!(gmin <= eps + TOL_EQ)) return IntervalSet::empty();

  // A minimizer stuck at the search window edge of a side classified as
  // bounded means the sublevel set lives beyond the window (or is a
  // tolerance artifact of an asymptote): not representable, report empty.
  const double W = XI_SEARCH_BOUND;
  if (!unb_lo && xi_min < -W * 0.999) return IntervalSet::empty();
  if (!unb_hi && xi_min > W * 0.999) return IntervalSet::empty();

  // Endpoints are refined with a much tighter slack than the membership
  // test, otherwise degenerate sets inflate by sqrt(tolerance).  A minimum
  // sitting exactly at the level is either a tangency (singleton set) or a
  // flat plateau; a short probe to each side tells them apart.  Sides
  // classified unbounded keep the standard tolerance, their finite partner
  // endpoint being a transversal crossing anyway.
  double slack = (unb_lo || unb_hi) ? TOL_EQ : 1e-10 * std::max(1.0, eps);
  if (!unb_lo && !unb_hi) {
    if (gap(xi_min) > eps + slack) return IntervalSet::closed(xi_min, xi_min);
    if (gmin >= eps - 1e-7 * std::max(1.0, eps)) {
      double step = 1e-3 * std::max(1.0, std::abs(xi_min));
      bool plat_l = gap(xi_min - step) <= eps + slack;
      bool plat_r = gap(xi_min + step) <= eps + slack;
      if (!plat_l && !plat_r) return IntervalSet::closed(xi_min, xi_min);
    }
  }

  auto member = [&](double xi) { return gap(xi) <= eps + slack; };
  double lo, hi;
  if (unb_lo) {
    lo = neg_inf();
  } else if (member(-W)) {
    lo = -W;  // clipped: set reaches past the slope window
  } else {
    lo = bisect_boundary(member, xi_min, -W);
  }
  if (unb_hi) {
    hi = pos_inf();
  } else if (member(W)) {
    hi = W;
  } else {
    hi = bisect_boundary(member, xi_min, W);
  }
  if (unb_lo && !std::isfinite(hi)) return IntervalSet::all();
  if (unb_lo) return IntervalSet::at_most(hi);
  if (unb_hi) return IntervalSet::at_least(lo);
  return IntervalSet::closed(lo, hi);
}

OracleResult oracle_esub_interval(const NearlyConvexFn1D& f, double x_bar, double eps,
                                  int x_grid_size, const Interval& xi_window,
                                  int xi_grid_size) {
  require_in_domain(f, x_bar);
  double fx = f.evaluate(x_bar).value();

  double lo = std::max(f.closure_lo(), x_bar - GRID_CLAMP);
  double hi = std::min(f.closure_hi(), x_bar + GRID_CLAMP);
  std::vector<double> xs;
  xs.reserve(x_grid_size + 4);
  for (int i = 0; i < x_grid_size; ++i)
    xs.push_back(lo + (hi - lo) * i / (x_grid_size - 1));
  for (const auto& [p, v] : f.overrides()) {
    (void)v;
    xs.push_back(p);
  }
  if (std::isfinite(f.closure_lo())) xs.push_back(f.closure_lo());
  if (std::isfinite(f.closure_hi())) xs.push_back(f.closure_hi());

  std::vector<double> fvals(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) fvals[i] = f.evaluate(xs[i]).raw();

  auto raw_member = [&](double xi) {
    for (size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(fvals[i])) continue;  // +inf constraint always holds
      if (xi * (xs[i] - x_bar) - eps > fvals[i] - fx + TOL_EQ) return false;
    }
    return true;
  };

  double wl = xi_window.lo(), wh = xi_window.hi();
  int first = -1, last = -1;
  for (int i = 0; i < xi_grid_size; ++i) {
    double xi = wl + (wh - wl) * i / (xi_grid_size - 1);
    if (raw_member(xi)) {
      if (first < 0) first = i;
      last = i;
    }
  }
  OracleResult r;
  if (first < 0) {
    r.set = IntervalSet::empty();
    return r;
  }
  double xi_first = wl + (wh - wl) * first / (xi_grid_size - 1);
  double xi_last = wl + (wh - wl) * last / (xi_grid_size - 1);
  r.clipped_lo = (first == 0);
  r.clipped_hi = (last == xi_grid_size - 1);
  double lo_xi = r.clipped_lo
                     ? wl
                     : bisect_boundary(raw_member, xi_first,
                                       wl + (wh - wl) * (first - 1) / (xi_grid_size - 1));
  double hi_xi = r.clipped_hi
                     ? wh
                     : bisect_boundary(raw_member, xi_last,
                                       wl + (wh - wl) * (last + 1) / (xi_grid_size - 1));
  r.set = IntervalSet::closed(lo_xi, hi_xi);
  return r;
}

bool oracle_esub_membership(const NearlyConvexFn1D& f, double x_bar, double eps,
                            double xi, int x_grid_size) {
  require_in_domain(f, x_bar);
  double fx = f.evaluate(x_bar).value();
  double lo = std::max(f.closure_lo(), x_bar - GRID_CLAMP);
  double hi = std::min(f.closure_hi(), x_bar + GRID_CLAMP);
  for (int i = 0; i < x_grid_size; ++i) {
    double x = lo + (hi - lo) * i / (x_grid_size - 1);
    double v = f.evaluate(x).raw();
    if (!std::isfinite(v)) continue;
    if (xi * (x - x_bar) - eps > v - fx + TOL_EQ) return false;
  }
  for (const auto& [p, v] : f.overrides()) {
    if (!std::isfinite(v)) continue;
    if (xi * (p - x_bar) - eps > v - fx + TOL_EQ) return false;
  }
  return true;
}

LimitResult esub_limit(const NearlyConvexFn1D& f, double x_bar, const EtaLadder& ladder) {
  require_in_domain(f, x_bar);
  if (ladder.values.empty()) throw Error("esub_limit: empty ladder");
  LimitResult res;
  IntervalSet prev;
  bool have_prev = false;
  res.endpoint_delta = 0.0;
  for (double eps : ladder.values) {
    IntervalSet cur = esub_interval(f, x_bar, eps);
    if (have_prev) {
      auto delta_side = [](double a, double b) {
        if (std::isinf(a) && std::isinf(b)) return 0.0;
        if (std::isinf(a) || std::isinf(b)) return pos_inf();
        return std::abs(a - b);
      };
      if (prev.is_empty() && cur.is_empty())
        res.endpoint_delta = 0.0;
      else if (prev.is_empty() || cur.is_empty())
        res.endpoint_delta = pos_inf();
      else
        res.endpoint_delta =
            std::max(delta_side(prev.lo(), cur.lo()), delta_side(prev.hi(), cur.hi()));
    }
    prev = cur;
    have_prev = true;
  }
  res.set = prev;
  return res;
}

IntervalSet scalar_rule(const NearlyConvexFn1D& f, double lambda, double x_bar,
                        double eps) {
  if (lambda <= 0) throw NonPositiveScalarError("scalar_rule: lambda must be positive");
  require_in_domain(f, x_bar);
  return esub_interval(f, x_bar, eps / lambda).scaled(lambda);
}

InfConvResult infimal_convolution(const NearlyConvexFn1D& f1,
                                  const NearlyConvexFn1D& f2, double xi) {
  if (!ri_intersect_nonempty(f1.domain(), f2.domain()))
    throw QualificationError(
        "infimal_convolution: relative interiors of the domains do not meet");
  auto q = [&](double xi1) {
    ExtReal a = f1.conjugate(xi1);
    if (a.is_pos_inf()) return pos_inf();
    ExtReal b = f2.conjugate(xi - xi1);
    if (b.is_pos_inf()) return pos_inf();
    return a.raw() + b.raw();
  };
  auto [xi1, val] = minimize_convex_line(q, xi / 2);
  InfConvResult r;
  r.value = std::isfinite(val) ? ExtReal(val) : ExtReal::pos_inf();
  r.xi1 = xi1;
  return r;
}

SplitCertificate sum_rule_decompose(const NearlyConvexFn1D& f1,
                                    const NearlyConvexFn1D& f2, double x_bar,
                                    double eps, double xi) {
  if (!ri_intersect_nonempty(f1.domain(), f2.domain()))
    throw QualificationError("sum rule: relative interiors of the domains do not meet");
  NearlyConvexFn1D sum = sum_functions(f1, f2);
  if (!sum.in_domain(x_bar))
    throw OutOfDomainError("sum rule: x_bar outside dom(f1+f2)");
  if (!esub_membership(sum, x_bar, eps, xi))
    throw NotInSumSubdifferentialError(
        "sum rule: xi=" + fmt_num(xi) + " is not an eps-subgradient of the sum at x_bar");

  InfConvResult ic = infimal_convolution(f1, f2, xi);
  double xi1 = ic.xi1;
  double xi2 = xi - xi1;
  double e1 = std::max(0.0, esub_gap(f1, x_bar, xi1).raw());
  double e2 = std::max(0.0, esub_gap(f2, x_bar, xi2).raw());
  double slack = eps - e1 - e2;
  if (slack < -1e-7)
    throw NotInSumSubdifferentialError(
        "sum rule: conjugate split exceeds eps by " + fmt_num(-slack));
  slack = std::max(0.0, slack);
  SplitCertificate cert;
  cert.xi1 = xi1;
  cert.xi2 = xi2;
  cert.eps1 = e1 + slack / 2;
  cert.eps2 = eps - cert.eps1;  // exact complement keeps the sum tight
  if (cert.eps2 < 0) {
    cert.eps1 += cert.eps2;
    cert.eps2 = 0;
  }
  return cert;
}

IntervalSet enormal_interval(const Interval& omega, double x_bar, double eps) {
  if (omega.is_empty()) throw EmptySetError("enormal_interval: empty set");
  if (!omega.contains(x_bar, TOL_EQ))
    throw PointNotInSetError("enormal_interval: x_bar=" + fmt_num(x_bar) +
                             " is not in the set");
  double sup = omega.hi();
  double inf = omega.lo();

  bool free_hi = std::isfinite(sup) && std::abs(sup - x_bar) <= TOL_EVAL;
  bool free_lo = std::isfinite(inf) && std::abs(inf - x_bar) <= TOL_EVAL;
  double hi_bound = free_hi ? pos_inf()
                            : (std::isinf(sup) ? 0.0 : eps / (sup - x_bar));
  double lo_bound = free_lo ? neg_inf()
                            : (std::isinf(inf) ? 0.0 : -eps / (x_bar - inf));
  if (free_lo && free_hi) return IntervalSet::all();
  if (free_lo) return IntervalSet::at_most(hi_bound);
  if (free_hi) return IntervalSet::at_least(lo_bound);
  return IntervalSet::closed(lo_bound, hi_bound);
}

bool enormal2_membership(const VPolyhedron2& omega, Vec2 p_bar, double eps, Vec2 w) {
  if (!omega.contains(p_bar, TOL_EQ))
    throw PointNotInSetError("enormal2_membership: point not in the set");
  ExtReal s = omega.support(w);
  if (s.is_pos_inf()) return false;
  return s.raw() - dot(w, p_bar) <= eps + TOL_EQ;
}

bool ecoderiv_membership(const VPolyhedron2& graph, Vec2 p_bar, double eps, double v,
                         double u) {
  return enormal2_membership(graph, p_bar, eps, Vec2{u, -v});
}

ExtReal epi_support(const NearlyConvexFn1D& f, Vec2 w) {
  if (w.y > TOL_EVAL) return ExtReal::pos_inf();
  if (std::abs(w.y) <= TOL_EVAL) {
    // sup of w.x * x over the domain closure
    double A = f.closure_lo(), B = f.closure_hi();
    if (w.x > TOL_EVAL) return std::isfinite(B) ? ExtReal(w.x * B) : ExtReal::pos_inf();
    if (w.x < -TOL_EVAL) return std::isfinite(A) ? ExtReal(w.x * A) : ExtReal::pos_inf();
    return ExtReal(0.0);
  }
  double t = -w.y;
  ExtReal c = f.conjugate(w.x / t);
  if (c.is_pos_inf()) return ExtReal::pos_inf();
  return ExtReal(t * c.raw());
}

bool epi_membership_check(const NearlyConvexFn1D& f, double x_bar, double eps, double u) {
  require_in_domain(f, x_bar);
  double fx = f.evaluate(x_bar).value();
  ExtReal s = epi_support(f, Vec2{u, -1.0});
  if (s.is_pos_inf()) return false;
  return s.raw() - (u * x_bar - fx) <= eps + TOL_EQ;
}

namespace {

// Grid values of [0, eps] ordered from the balanced midpoint outward, so a
// scan returns the most symmetric witness first.
std::vector<double> balanced_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (n <= 1 || hi - lo <= 0) {
    g.push_back(0.5 * (lo + hi));
    return g;
  }
  std::vector<double> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = lo + (hi - lo) * i / (n - 1);
  double mid = 0.5 * (lo + hi);
  std::sort(raw.begin(), raw.end(), [&](double a, double b) {
    double da = std::abs(a - mid), db = std::abs(b - mid);
    if (da != db) return da < db;
    return a < b;
  });
  return raw;
}

// How far (u,-v) is from being eps-normal to the graph at p; +inf when the
// direction leaves the recession polar.
double coderiv_violation(const VPolyhedron2& g, Vec2 p, double eps, double v, double u) {
  ExtReal s = g.support(Vec2{u, -v});
  if (s.is_pos_inf()) return pos_inf();
  return s.raw() - dot(Vec2{u, -v}, p) - eps;
}

}  // namespace

CoderivSplit coderiv_sum_decompose(const VPolyhedron2& graph1,
                                   const VPolyhedron2& graph2, double x_bar,
                                   double y1, double y2, double eps, double v,
                                   double u, int split_grid) {
  IntervalSet d1 = graph1.x_range();
  IntervalSet d2 = graph2.x_range();
  Interval i1 = d1.interval();
  Interval i2 = d2.interval();
  if (i1.is_empty() || i2.is_empty() || !ri_intersect_nonempty(i1, i2))
    throw QualificationError(
        "coderivative sum: relative interiors of the domains do not meet");
  if (!graph1.contains({x_bar, y1}, TOL_EQ))
    throw PointNotInSetError("coderivative sum: (x_bar, y1) not in gph F1");
  if (!graph2.contains({x_bar, y2}, TOL_EQ))
    throw PointNotInSetError("coderivative sum: (x_bar, y2) not in gph F2");

  VPolyhedron2 sum_graph = minkowski_y_sum(graph1, graph2);
  if (!ecoderiv_membership(sum_graph, {x_bar, y1 + y2}, eps, v, u))
    throw NoSplitFoundError(
        "coderivative sum: u is not in the eps-coderivative of the sum");

  Vec2 p1{x_bar, y1}, p2{x_bar, y2};
  double uw = 2.0 * (1.0 + std::abs(u) + std::abs(v));
  std::vector<double> eps_grid =
      eps > 0 ? balanced_grid(0.0, eps, split_grid) : std::vector<double>{0.0};
  std::vector<double> u_grid = balanced_grid(u / 2 - uw, u / 2 + uw, split_grid);

  double best_score = pos_inf();
  double best_e1 = 0, best_u1 = u / 2;
  for (double e1 : eps_grid) {
    for (double u1 : u_grid) {
      double s1 = coderiv_violation(graph1, p1, e1, v, u1);
      double s2 = coderiv_violation(graph2, p2, eps - e1, v, u - u1);
      double score = std::max(s1, s2);
      if (score <= TOL_EQ) {
        CoderivSplit out;
        out.eps1 = e1;
        out.eps2 = eps - e1;
        out.u1 = u1;
        out.u2 = u - u1;
        return out;
      }
      if (score < best_score) {
        best_score = score;
        best_e1 = e1;
        best_u1 = u1;
      }
    }
  }
  // one refinement pass around the least-violating node
  double de = eps > 0 ? eps / (split_grid - 1) : 0.0;
  double du = 2 * uw / (split_grid - 1);
  std::vector<double> eps_fine =
      de > 0 ? balanced_grid(std::max(0.0, best_e1 - de), std::min(eps, best_e1 + de),
                             split_grid)
             : std::vector<double>{0.0};
  std::vector<double> u_fine = balanced_grid(best_u1 - du, best_u1 + du, split_grid);
  for (double e1 : eps_fine) {
    for (double u1 : u_fine) {
      double s1 = coderiv_violation(graph1, p1, e1, v, u1);
      double s2 = coderiv_violation(graph2, p2, eps - e1, v, u - u1);
      if (std::max(s1, s2) <= TOL_EQ) {
        CoderivSplit out;
        out.eps1 = e1;
        out.eps2 = eps - e1;
        out.u1 = u1;
        out.u2 = u - u1;
        return out;
      }
    }
  }
  throw NoSplitFoundError("coderivative sum: no split found at resolution " +
                          std::to_string(split_grid) + "+1 refinement (best residual " +
                          fmt_num(best_score) + ")");
}

IntersectionCheck coderiv_intersection_check(const std::vector<VPolyhedron2>& graphs,
                                             Vec2 p_bar, double eps, double v, double u,
                                             int split_grid) {
  if (graphs.size() < 2 || graphs.size() > 3)
    throw Error("coderiv_intersection_check: 2 or 3 graphs supported");
  if (!common_interior_point(graphs))
    throw QualificationError(
        "intersection rule: no common relative-interior point found");
  for (const VPolyhedron2& g : graphs) {
    if (!g.contains(p_bar, TOL_EQ))
      throw PointNotInSetError("intersection rule: point not in every graph");
  }

  IntersectionCheck out;
  ExtReal s = intersection_support(graphs, Vec2{u, -v});
  out.member = !s.is_pos_inf() && s.raw() - dot(Vec2{u, -v}, p_bar) <= eps + TOL_EQ;
  if (!out.member) return out;

  const size_t p = graphs.size();
  double uw = 2.0 * (1.0 + std::abs(u) + std::abs(v));
  int n = (p == 2) ? split_grid : std::max(9, split_grid / 8);
  std::vector<double> eps_grid =
      eps > 0 ? balanced_grid(0.0, eps, n) : std::vector<double>{0.0};
  std::vector<double> v_grid = balanced_grid(v / 2 - uw, v / 2 + uw, n);
  std::vector<double> u_grid = balanced_grid(u / 2 - uw, u / 2 + uw, n);

  auto try_assign = [&](const std::vector<double>& es, const std::vector<double>& vs,
                        const std::vector<double>& us) -> bool {
    for (size_t i = 0; i < p; ++i) {
      if (es[i] < -TOL_EQ) return false;
      if (coderiv_violation(graphs[i], p_bar, es[i], vs[i], us[i]) > TOL_EQ)
        return false;
    }
    return true;
  };

  if (p == 2) {
    for (double e1 : eps_grid) {
      for (double v1 : v_grid) {
        for (double u1 : u_grid) {
          std::vector<double> es{e1, eps - e1};
          std::vector<double> vs{v1, v - v1};
          std::vector<double> us{u1, u - u1};
          if (try_assign(es, vs, us)) {
            out.witness = IntersectionWitness{es, vs, us};
            return out;
          }
        }
      }
    }
  } else {
    std::vector<double> e3 = eps > 0 ? balanced_grid(0.0, eps, n)
                                     : std::vector<double>{0.0};
    std::vector<double> v3 = balanced_grid(v / 3 - uw, v / 3 + uw, n);
    std::vector<double> u3 = balanced_grid(u / 3 - uw, u / 3 + uw, n);
    for (double e1 : e3)
      for (double e2 : e3) {
        if (e1 + e2 > eps + TOL_EQ) continue;
        for (double v1 : v3)
          for (double v2 : v3)
            for (double u1 : u3)
              for (double u2 : u3) {
                std::vector<double> es{e1, e2, eps - e1 - e2};
                std::vector<double> vs{v1, v2, v - v1 - v2};
                std::vector<double> us{u1, u2, u - u1 - u2};
                if (try_assign(es, vs, us)) {
                  out.witness = IntersectionWitness{es, vs, us};
                  return out;
                }
              }
      }
  }
  throw NoSplitFoundError(
      "intersection rule: membership holds but no witness found at resolution " +
      std::to_string(n));
}

}  // namespace nearconvex
