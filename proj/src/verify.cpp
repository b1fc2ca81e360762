#include "nearconvex/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nearconvex/builtin.hpp"
#include "nearconvex/calculus.hpp"
#include "nearconvex/catalog.hpp"
#include "nearconvex/config.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/numfmt.hpp"
#include "nearconvex/problems.hpp"

namespace nearconvex::verify {

namespace {

struct Suite {
  bool pass = true;
  int checks = 0;
  double worst = 0.0;  // largest observed deviation, when meaningful
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      note = what;
    }
  }
  void track(double dev) { worst = std::max(worst, dev); }
};

std::vector<NearlyConvexFn1D> catalog_functions(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NearlyConvexFn1D> fns;
  fns.reserve(n);
  for (int i = 0; i < n; ++i) fns.push_back(random_catalog_fn(rng));
  return fns;
}

double slope_estimate(const NearlyConvexFn1D& f, double x) {
  double h = 1e-5 * std::max(1.0, std::abs(x));
  return (f.base_value(x + h) - f.base_value(x - h)) / (2 * h);
}

Suite support_properties() {
  Suite s;
  std::mt19937_64 rng(101);
  std::vector<VPolyhedron2> sets;
  sets.push_back(VPolyhedron2({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, {}));
  sets.push_back(builtin::abs_epigraph_cone());
  sets.push_back(VPolyhedron2({{0, 0}}, {{1, 1}, {-1, -1}, {0, 1}}));
  for (int i = 0; i < 8; ++i) {
    double ax = rng_range(rng, -3, 0), bx = ax + rng_range(rng, 0.5, 3);
    double ay = rng_range(rng, -3, 0), by = ay + rng_range(rng, 0.5, 3);
    sets.push_back(VPolyhedron2({{ax, ay}, {bx, ay}, {bx, by}, {ax, by}}, {}));
  }
  for (const auto& P : sets) {
    for (int k = 0; k < 24; ++k) {
      Vec2 w{rng_range(rng, -2, 2), rng_range(rng, -2, 2)};
      Vec2 w2{rng_range(rng, -2, 2), rng_range(rng, -2, 2)};
      ExtReal sw = P.support(w);
      if (sw.finite()) {
        for (double t : {0.5, 2.0, 7.0}) {
          ExtReal st = P.support(t * w);
          s.expect(st.finite(), "homogeneity changed finiteness");
          if (st.finite()) {
            double dev = std::abs(st.raw() - t * sw.raw()) /
                         std::max(1.0, std::abs(t * sw.raw()));
            s.track(dev);
            s.expect(dev <= 1e-12, "support not positively homogeneous");
          }
        }
      }
      ExtReal s2 = P.support(w2);
      ExtReal ssum = P.support(w + w2);
      if (sw.finite() && s2.finite() && ssum.finite())
        s.expect(ssum.raw() <= sw.raw() + s2.raw() + TOL_EQ, "support not subadditive");
      // sampled points never beat the support
      if (sw.finite()) {
        for (int j = 0; j < 8; ++j) {
          double u = rng_u01(rng), v = rng_u01(rng);
          const auto& V = P.vertices();
          Vec2 p = (1 - u) * V[rng_int(rng, static_cast<int>(V.size()))] +
                   u * V[rng_int(rng, static_cast<int>(V.size()))];
          for (const Vec2& r : P.rays()) {
            if (dot(w, r) <= 0) p = p + (2 * v) * r;
          }
          s.expect(dot(w, p) <= sw.raw() + TOL_EQ, "sample exceeds support");
        }
      }
    }
  }
  return s;
}

Suite oracle_vs_analytic(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(202);
  const double window_half = 25.0;
  const int xi_grid = 1001;
  const double step = 2 * window_half / (xi_grid - 1);
  for (const auto& f : fns) {
    double x = random_ri_point(f, rng);
    double mid = slope_estimate(f, x);
    Interval window(Interval::closed(mid - window_half, mid + window_half));
    for (double eps : {0.0, 0.1, 0.5, 1.0}) {
      IntervalSet a = esub_interval(f, x, eps);
      OracleResult o = oracle_esub_interval(f, x, eps, 1025, window, xi_grid);
      if (a.is_empty()) {
        s.expect(o.set.is_empty(), "analytic empty but oracle nonempty");
        continue;
      }
      s.expect(!o.set.is_empty(), "oracle empty but analytic nonempty");
      if (o.set.is_empty()) continue;
      if (!a.unbounded_below() && !o.clipped_lo) {
        double dev = std::abs(a.lo() - o.set.lo());
        s.track(dev);
        s.expect(dev <= 3 * step, "lower endpoints disagree");
      }
      if (!a.unbounded_above() && !o.clipped_hi) {
        double dev = std::abs(a.hi() - o.set.hi());
        s.track(dev);
        s.expect(dev <= 3 * step, "upper endpoints disagree");
      }
    }
  }
  return s;
}

Suite monotonicity(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(303);
  const double eps_grid[] = {0.0, 0.1, 0.5, 1.0, 2.0};
  for (const auto& f : fns) {
    double x = random_ri_point(f, rng);
    IntervalSet prev;
    bool first = true;
    for (double eps : eps_grid) {
      IntervalSet cur = esub_interval(f, x, eps);
      if (!first) s.expect(prev.subset_of(cur, 1e-8), "eps-sets not nested");
      prev = cur;
      first = false;
    }
  }
  return s;
}

Suite nonemptiness(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(404);
  for (const auto& f : fns) {
    double x = random_ri_point(f, rng);
    for (double eps : {0.0, 1e-6, 0.1, 1.0})
      s.expect(!esub_interval(f, x, eps).is_empty(),
               "empty eps-subdifferential at an ri point");
  }
  return s;
}

Suite scalar_rule_equality(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(505);
  for (const auto& f : fns) {
    double x = random_ri_point(f, rng);
    for (double lam : {0.5, 2.0, 3.0}) {
      for (double eps : {0.0, 0.4, 1.0}) {
        IntervalSet a = scalar_rule(f, lam, x, eps);
        IntervalSet b = esub_interval(f.scaled(lam), x, eps);
        s.expect(a.approx_equal(b, 1e-8), "scalar rule mismatch");
        if (!a.is_empty() && !b.is_empty()) {
          if (!a.unbounded_below()) s.track(std::abs(a.lo() - b.lo()));
          if (!a.unbounded_above()) s.track(std::abs(a.hi() - b.hi()));
        }
      }
    }
  }
  return s;
}

Suite fenchel_young(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  for (const auto& f : fns) {
    double a = f.closure_lo(), b = f.closure_hi();
    for (int i = 0; i <= 16; ++i) {
      double x = a + (b - a) * i / 16.0;
      ExtReal fx = f.evaluate(x);
      if (!fx.finite()) continue;
      for (double xi = -5; xi <= 5; xi += 1.0) {
        ExtReal c = f.conjugate(xi);
        if (!c.finite()) continue;
        double slack = c.raw() + fx.raw() - xi * x;
        s.track(std::max(0.0, -slack));
        s.expect(slack >= -1e-8, "Fenchel-Young violated");
      }
    }
  }
  return s;
}

Suite conjugate_convexity(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  for (const auto& f : fns) {
    std::vector<double> v;
    for (double xi = -6; xi <= 6 + 1e-12; xi += 0.25) v.push_back(f.conjugate(xi).raw());
    for (size_t i = 0; i + 2 < v.size(); i += 1) {
      if (std::isinf(v[i]) || std::isinf(v[i + 1]) || std::isinf(v[i + 2])) continue;
      double viol = v[i + 1] - 0.5 * (v[i] + v[i + 2]);
      s.track(std::max(0.0, viol));
      s.expect(viol <= 1e-8, "conjugate not midpoint convex");
    }
  }
  return s;
}

Suite conjugate_ignores_overrides(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  for (const auto& f : fns) {
    if (f.overrides().empty()) continue;
    NearlyConvexFn1D stripped(f.domain(), f.pieces(), {});
    for (double xi = -4; xi <= 4 + 1e-12; xi += 0.5) {
      ExtReal a = f.conjugate(xi);
      ExtReal b = stripped.conjugate(xi);
      s.expect(a.raw() == b.raw(), "override changed the conjugate");
    }
  }
  return s;
}

Suite epigraph_bridge(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(606);
  for (const auto& f : fns) {
    double x = random_ri_point(f, rng);
    double mid = slope_estimate(f, x);
    for (double du : {-3.0, -1.0, -0.3, 0.0, 0.3, 1.0, 3.0}) {
      for (double eps : {0.0, 0.25, 1.0}) {
        bool a = epi_membership_check(f, x, eps, mid + du);
        bool b = esub_membership(f, x, eps, mid + du);
        s.expect(a == b, "epigraph route disagrees with the conjugate route");
      }
    }
  }
  return s;
}

Suite indicator_bridge() {
  Suite s;
  std::mt19937_64 rng(707);
  for (int i = 0; i < 100; ++i) {
    double a = rng_range(rng, -3, 1);
    double b = a + rng_range(rng, 0.0, 3.0);
    Interval omega;
    switch (rng_int(rng, 5)) {
      case 0: omega = Interval::closed(a, b); break;
      case 1: omega = Interval::make(a, pos_inf(), true, false); break;
      case 2: omega = Interval::make(neg_inf(), b, false, true); break;
      case 3: omega = Interval::singleton(a); break;
      default: omega = Interval::all(); break;
    }
    double x;
    switch (rng_int(rng, 3)) {
      case 0: x = omega.lo_finite() ? omega.lo() : rng_range(rng, a, b); break;
      case 1: x = omega.hi_finite() ? omega.hi() : rng_range(rng, a, b); break;
      default:
        x = omega.bounded() ? a + (b - a) * rng_u01(rng)
                            : (omega.lo_finite() ? omega.lo() + rng_u01(rng)
                                                 : (omega.hi_finite()
                                                        ? omega.hi() - rng_u01(rng)
                                                        : rng_range(rng, -2, 2)));
        break;
    }
    NearlyConvexFn1D ind = NearlyConvexFn1D::indicator(omega);
    for (double eps : {0.0, 0.3, 1.0}) {
      IntervalSet n = enormal_interval(omega, x, eps);
      IntervalSet e = esub_interval(ind, x, eps);
      bool ok = n.approx_equal(e, 1e-8);
      if (!n.is_empty() && !e.is_empty()) {
        if (!n.unbounded_below() && !e.unbounded_below())
          s.track(std::abs(n.lo() - e.lo()));
        if (!n.unbounded_above() && !e.unbounded_above())
          s.track(std::abs(n.hi() - e.hi()));
      }
      s.expect(ok, "normal set differs from the indicator subdifferential at x=" +
                       fmt_num(x) + " eps=" + fmt_num(eps) + " omega=" + omega.str());
    }
  }
  return s;
}

Suite sum_rule_suite(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(808);
  int done = 0;
  for (size_t i = 0; i + 1 < fns.size() && done < 100; i += 2) {
    const NearlyConvexFn1D& f1 = fns[i];
    const NearlyConvexFn1D& f2 = fns[i + 1];
    Interval overlap = f1.domain().intersect(f2.domain());
    if (overlap.is_empty() || overlap.width() < 0.2) continue;
    if (!ri_intersect_nonempty(f1.domain(), f2.domain())) continue;
    double x = 0.5 * (std::max(f1.closure_lo(), f2.closure_lo()) +
                      std::min(f1.closure_hi(), f2.closure_hi()));
    NearlyConvexFn1D sum = sum_functions(f1, f2);
    for (double eps : {0.3, 1.0}) {
      IntervalSet set = esub_interval(sum, x, eps);
      if (set.is_empty()) continue;
      std::vector<double> xis;
      if (!set.unbounded_below()) xis.push_back(set.lo() + 1e-6);
      if (!set.unbounded_above()) xis.push_back(set.hi() - 1e-6);
      if (!set.unbounded_below() && !set.unbounded_above())
        xis.push_back(0.5 * (set.lo() + set.hi()));
      for (double xi : xis) {
        ++done;
        SplitCertificate c = sum_rule_decompose(f1, f2, x, eps, xi);
        s.expect(std::abs(c.eps1 + c.eps2 - eps) <= 1e-10, "eps split off target");
        s.expect(std::abs(c.xi1 + c.xi2 - xi) <= 1e-10, "xi split off target");
        s.expect(oracle_esub_membership(f1, x, c.eps1 + 1e-7, c.xi1, 1025),
                 "raw oracle rejects part 1");
        s.expect(oracle_esub_membership(f2, x, c.eps2 + 1e-7, c.xi2, 1025),
                 "raw oracle rejects part 2");
      }
      // easy inclusion direction
      double e1 = 0.4 * eps, e2 = 0.6 * eps;
      IntervalSet s1 = esub_interval(f1, x, e1);
      IntervalSet s2 = esub_interval(f2, x, e2);
      if (!s1.is_empty() && !s2.is_empty() && !s1.unbounded_above() &&
          !s2.unbounded_above()) {
        double xi = s1.hi() + s2.hi() - 1e-7;
        s.expect(esub_membership(sum, x, eps + 1e-7, xi),
                 "forward inclusion fails at the endpoint sum");
      }
    }
  }
  s.note = s.pass ? fmt_num(done) + " decompositions" : s.note;
  return s;
}

Suite limit_convergence(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(909);
  EtaLadder ladder = EtaLadder::standard(21);
  for (const auto& f : fns) {
    double x = random_ri_point(f, rng);
    LimitResult r = esub_limit(f, x, ladder);
    s.expect(!r.set.is_empty(), "limit set empty at an ri point");
    s.track(std::isfinite(r.endpoint_delta) ? r.endpoint_delta : 1.0);
    s.expect(r.endpoint_delta < 1e-3, "ladder endpoints still moving at the bottom");
  }
  return s;
}

Suite cone_invariance() {
  Suite s;
  // 1D cones with vertex at x_bar
  for (double xb : {0.0, -1.5, 2.0}) {
    std::vector<Interval> cones{
        Interval::make(xb, pos_inf(), true, false),
        Interval::make(neg_inf(), xb, false, true),
        Interval::singleton(xb),
        Interval::all(),
    };
    for (const Interval& omega : cones) {
      IntervalSet base = enormal_interval(omega, xb, 0.0);
      for (double eps : {0.25, 1.0, 4.0}) {
        s.expect(enormal_interval(omega, xb, eps).approx_equal(base, 0.0),
                 "1D cone normal set depends on eps");
      }
    }
  }
  // the polyhedral cone fixture at its apex
  VPolyhedron2 cone = builtin::abs_epigraph_cone();
  for (double ux = -2; ux <= 2 + 1e-12; ux += 0.25) {
    for (double vy = -2; vy <= 2 + 1e-12; vy += 0.25) {
      bool base = enormal2_membership(cone, {0, 0}, 0.0, {ux, vy});
      for (double eps : {0.5, 2.0})
        s.expect(enormal2_membership(cone, {0, 0}, eps, {ux, vy}) == base,
                 "2D cone normal set depends on eps");
    }
  }
  return s;
}

Suite value_function_near_convexity() {
  Suite s;
  for (const ParametricProblem& p :
       {builtin::quadratic_box_problem(), builtin::weighted_abs_cone_problem()}) {
    const int n = 257;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
      double x = -1.0 + 2.0 * i / (n - 1);
      v[i] = value_function(p, x).raw();
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 2; j < n; j += 4) {
        if (std::isinf(v[i]) || std::isinf(v[j])) continue;
        int m = (i + j) / 2;
        double viol = v[m] - 0.5 * (v[i] + v[j]);
        s.track(std::max(0.0, viol));
        s.expect(viol <= 1e-7, "sampled optimal value function not midpoint convex");
      }
    }
  }
  return s;
}

Suite eps_solution_bridge(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(1111);
  int n = 0;
  for (const auto& f : fns) {
    if (n >= 60) break;
    ++n;
    double x = random_ri_point(f, rng);
    ConstrainedProblem p{f, Interval::all()};
    for (double eps : {0.05, 0.5}) {
      bool a = is_eps_solution(p, x, eps);
      bool b = esub_interval(f, x, eps).contains(0.0, 1e-8);
      s.expect(a == b, "eps-solution test disagrees with 0 in the subdifferential");
    }
  }
  return s;
}

Suite certificate_suite(const std::vector<NearlyConvexFn1D>& fns) {
  Suite s;
  std::mt19937_64 rng(1212);
  int done = 0;
  for (const auto& f : fns) {
    if (done >= 40) break;
    double a = f.closure_lo(), b = f.closure_hi();
    double s_lo = rng_range(rng, a - 0.5, 0.5 * (a + b));
    Interval S = rng_int(rng, 2) == 0
                     ? Interval::closed(s_lo, s_lo + rng_range(rng, 0.4, 3.0))
                     : Interval::make(s_lo, pos_inf(), true, false);
    Interval overlap = S.intersect(f.domain());
    if (overlap.is_empty() || overlap.width() < 0.2) continue;
    if (!ri_intersect_nonempty(f.domain(), S)) continue;
    ConstrainedProblem p{f, S};
    MinimizeResult m = minimize_on(f, S);
    double x = overlap.lo() + overlap.width() * rng_range(rng, 0.1, 0.9);
    if (!f.in_domain(x)) continue;
    double eps = f.evaluate(x).value() - m.value.raw() + rng_range(rng, 0.05, 0.5);
    ++done;
    s.expect(is_eps_solution(p, x, eps), "constructed point is not an eps-solution");
    OptimalityCertificate c = optimality_certificate(p, x, eps);
    s.expect(std::abs(c.eps1 + c.eps2 - eps) <= 1e-10, "certificate eps split off");
    // sufficiency: a valid certificate implies the eps-solution property
    s.expect(is_eps_solution(p, x, c.eps1 + c.eps2), "certificate does not certify");
  }
  s.note = s.pass ? fmt_num(done) + " certificates" : s.note;
  return s;
}

Suite sensitivity_agreement() {
  Suite s;
  ParametricProblem p1 = builtin::quadratic_box_problem();
  EtaLadder ladder = EtaLadder::standard(21);
  Interval window = Interval::closed(-8, 8);
  for (double eps : {0.0, 0.25, 1.0}) {
    IntervalSet u = sensitivity_unconstrained(p1, 0.0, eps, ladder, window);
    IntervalSet e = sensitivity_exact(p1, 0.0, eps, 0.0);
    IntervalSet d = value_function_esub_direct(p1, 0.0, eps);
    double tgt = 2 * std::sqrt(eps);
    for (const IntervalSet* r : {&u, &e, &d}) {
      s.expect(!r->is_empty(), "sensitivity set empty");
      if (r->is_empty()) continue;
      s.track(std::abs(r->hi() - tgt));
      s.track(std::abs(r->lo() + tgt));
      s.expect(std::abs(r->hi() - tgt) <= 5e-3 && std::abs(r->lo() + tgt) <= 5e-3,
               "free-constraint sensitivity off target at eps=" + fmt_num(eps));
    }
    s.expect(e.subset_of(u, 5e-3), "exact-solution set not inside the ladder set");
  }

  ParametricProblem p2 = builtin::weighted_abs_cone_problem();
  for (double eps : {0.0, 0.5}) {
    IntervalSet c = sensitivity_constrained(p2, 0.0, eps, ladder, 129, window);
    IntervalSet d = value_function_esub_direct(p2, 0.0, eps);
    s.expect(!c.is_empty() && !d.is_empty(), "constrained sensitivity set empty");
    if (!c.is_empty() && !d.is_empty()) {
      s.track(std::abs(c.lo() - d.lo()));
      s.track(std::abs(c.hi() - d.hi()));
      s.expect(std::abs(c.lo() - d.lo()) <= 5e-3 && std::abs(c.hi() - d.hi()) <= 5e-3,
               "constrained sensitivity disagrees with the direct oracle at eps=" +
                   fmt_num(eps));
    }
  }

  // with the constraint degenerated to the full box both routes coincide
  IntervalSet cu = sensitivity_constrained(p1, 0.0, 0.25, ladder, 129, window);
  IntervalSet uu = sensitivity_unconstrained(p1, 0.0, 0.25, ladder, window);
  s.expect(cu.approx_equal(uu, 5e-3), "degenerate constraint route disagrees");

  // running intersection over a deeper ladder only shrinks
  IntervalSet prev;
  bool first = true;
  for (int depth : {6, 11, 16, 21}) {
    IntervalSet cur =
        sensitivity_unconstrained(p1, 0.0, 0.25, EtaLadder::standard(depth), window);
    if (!first) s.expect(cur.subset_of(prev, 1e-8), "ladder extension grew the set");
    prev = cur;
    first = false;
  }
  return s;
}

}  // namespace

bool run_all(std::ostream& out) {
  std::vector<NearlyConvexFn1D> fns = catalog_functions(100, 0xC0FFEE);

  struct Row {
    const char* name;
    Suite result;
  };
  std::vector<Row> rows;
  rows.push_back({"support-function-properties", support_properties()});
  rows.push_back({"oracle-vs-analytic-endpoints", oracle_vs_analytic(fns)});
  rows.push_back({"eps-monotonicity", monotonicity(fns)});
  rows.push_back({"nonempty-on-relative-interior", nonemptiness(fns)});
  rows.push_back({"scalar-rule-equality", scalar_rule_equality(fns)});
  rows.push_back({"fenchel-young", fenchel_young(fns)});
  rows.push_back({"conjugate-convexity", conjugate_convexity(fns)});
  rows.push_back({"conjugate-ignores-overrides", conjugate_ignores_overrides(fns)});
  rows.push_back({"epigraph-bridge", epigraph_bridge(fns)});
  rows.push_back({"indicator-bridge", indicator_bridge()});
  rows.push_back({"sum-rule-certificates", sum_rule_suite(fns)});
  rows.push_back({"limit-ladder-convergence", limit_convergence(fns)});
  rows.push_back({"cone-invariance", cone_invariance()});
  rows.push_back({"value-function-near-convexity", value_function_near_convexity()});
  rows.push_back({"eps-solution-bridge", eps_solution_bridge(fns)});
  rows.push_back({"optimality-certificates", certificate_suite(fns)});
  rows.push_back({"sensitivity-agreement", sensitivity_agreement()});

  bool all = true;
  out << "suite                              result  checks  worst-dev     note\n";
  out << "---------------------------------  ------  ------  ------------  ----\n";
  for (const Row& r : rows) {
    all = all && r.result.pass;
    char line[256];
    std::snprintf(line, sizeof(line), "%-33s  %-6s  %6d  %-12s  %s\n", r.name,
                  r.result.pass ? "pass" : "FAIL", r.result.checks,
                  fmt_num(r.result.worst).c_str(), r.result.note.c_str());
    out << line;
  }
  out << (all ? "verify: all suites passed\n" : "verify: FAILURES present\n");
  return all;
}

}  // namespace nearconvex::verify
