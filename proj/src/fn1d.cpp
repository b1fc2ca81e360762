#include "nearconvex/fn1d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nearconvex/config.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/numfmt.hpp"

namespace nearconvex {

namespace {

// Golden-section maximum of a concave function on [a,b]; iterates past the
// nominal 60 rounds until the bracket hits the relative width stop so huge
// search windows still resolve.  Returns the best probed point, which also
// captures peaks far sharper than the width stop.
std::pair<double, double> golden_max(const std::function<double(double)>& g,
                                     double a, double b) {
  if (b <= a) return {a, g(a)};
  const double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = g(c), fd = g(d);
  double best_x = fc >= fd ? c : d;
  double best_v = std::max(fc, fd);
  for (int it = 0; it < 240; ++it) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (b - a <= TOL_EVAL * scale) break;
    if (fc >= fd) {
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
    if (fc > best_v) {
      best_v = fc;
      best_x = c;
    }
    if (fd > best_v) {
      best_v = fd;
      best_x = d;
    }
  }
  double xm = 0.5 * (a + b);
  double vm = g(xm);
  if (vm > best_v) return {xm, vm};
  return {best_x, best_v};
}

// Affine expressions need no interior search: the per-piece supremum of
// xi*x - f(x) sits at an endpoint.
bool expr_is_affine(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::Var:
      return true;
    case Expr::Kind::Add:
      return expr_is_affine(e.left()) && expr_is_affine(e.right());
    case Expr::Kind::Scale:
    case Expr::Kind::Neg:
      return expr_is_affine(e.child());
    default:
      return false;
  }
}

}  // namespace

NearlyConvexFn1D::NearlyConvexFn1D(Interval domain, std::vector<Piece> pieces,
                                   std::map<double, double> overrides)
    : domain_(domain), pieces_(std::move(pieces)), overrides_(std::move(overrides)) {
  if (domain_.is_empty()) throw ValidationError("function domain is empty");
  if (pieces_.empty()) throw ValidationError("function has no pieces");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.interval.lo() < b.interval.lo(); });
}

double NearlyConvexFn1D::closure_lo() const { return domain_.lo(); }
double NearlyConvexFn1D::closure_hi() const { return domain_.hi(); }

bool NearlyConvexFn1D::in_domain(double x) const {
  for (const auto& [p, v] : overrides_) {
    if (std::abs(x - p) <= TOL_EVAL) return std::isfinite(v);
  }
  if (domain_.contains(x)) return true;
  // fp wobble at closed endpoints
  if (domain_.lo_closed() && std::abs(x - domain_.lo()) <= TOL_EVAL) return true;
  if (domain_.hi_closed() && std::abs(x - domain_.hi()) <= TOL_EVAL) return true;
  return false;
}

double NearlyConvexFn1D::base_value(double x) const {
  const Piece* hit = nullptr;
  // binary search over sorted piece lows
  int lo = 0, hi = static_cast<int>(pieces_.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (pieces_[mid].interval.lo() <= x + TOL_EVAL)
      lo = mid;
    else
      hi = mid - 1;
  }
  for (int i = std::max(0, lo - 1); i < static_cast<int>(pieces_.size()); ++i) {
    const Interval cl = pieces_[i].interval.closure();
    if (cl.contains(x, TOL_EVAL)) {
      hit = &pieces_[i];
      break;
    }
    if (pieces_[i].interval.lo() > x + TOL_EVAL) break;
  }
  if (!hit) throw OutOfDomainError("base_value: x=" + fmt_num(x) + " not covered by pieces");
  return hit->expr.eval(x);
}

ExtReal NearlyConvexFn1D::evaluate(double x) const {
  for (const auto& [p, v] : overrides_) {
    if (std::abs(x - p) <= TOL_EVAL) return ExtReal(v);
  }
  if (!in_domain(x)) return ExtReal::pos_inf();
  return ExtReal(base_value(x));
}

ExtReal NearlyConvexFn1D::closure_value(double x) const {
  double lo = closure_lo(), hi = closure_hi();
  if (x < lo - TOL_EVAL || x > hi + TOL_EVAL) return ExtReal::pos_inf();
  return ExtReal(base_value(std::clamp(x, lo, hi)));
}

ValidationReport NearlyConvexFn1D::validate(int grid) const {
  ValidationReport rep;
  if (domain_.is_empty()) rep.fail("domain is empty");

  // piece coverage and ordering
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    double gap = pieces_[i + 1].interval.lo() - pieces_[i].interval.hi();
    if (std::abs(gap) > TOL_EQ)
      rep.fail("pieces " + std::to_string(i) + "," + std::to_string(i + 1) +
               (gap > 0 ? " leave a gap" : " overlap") + " near x=" +
               fmt_num(pieces_[i].interval.hi()));
    else {
      double xj = pieces_[i].interval.hi();
      if (std::isfinite(xj)) {
        double a = pieces_[i].expr.eval(xj);
        double b = pieces_[i + 1].expr.eval(xj);
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        if (std::abs(a - b) > TOL_EVAL * scale)
          rep.fail("pieces disagree at shared endpoint x=" + fmt_num(xj) + ": " +
                   fmt_num(a) + " vs " + fmt_num(b));
      }
    }
  }
  double dl = domain_.lo(), dh = domain_.hi();
  if (std::isfinite(dl) != std::isfinite(pieces_.front().interval.lo()) ||
      (std::isfinite(dl) && std::abs(pieces_.front().interval.lo() - dl) > TOL_EQ))
    rep.fail("pieces do not start at the domain lower end");
  if (std::isfinite(dh) != std::isfinite(pieces_.back().interval.hi()) ||
      (std::isfinite(dh) && std::abs(pieces_.back().interval.hi() - dh) > TOL_EQ))
    rep.fail("pieces do not reach the domain upper end");

  // sampled values: finiteness and midpoint convexity
  double lo = std::isfinite(dl) ? dl : -GRID_CLAMP;
  double hi = std::isfinite(dh) ? dh : GRID_CLAMP;
  if (grid < 3) grid = 3;
  std::vector<double> vals(grid);
  bool eval_ok = true;
  for (int i = 0; i < grid; ++i) {
    double x = lo + (hi - lo) * i / (grid - 1);
    try {
      vals[i] = base_value(x);
    } catch (const Error& e) {
      rep.fail(std::string("piece evaluation failed at x=") + fmt_num(x) + ": " + e.what());
      eval_ok = false;
      break;
    }
    if (!std::isfinite(vals[i])) {
      rep.fail("piece value not finite at x=" + fmt_num(x));
      eval_ok = false;
      break;
    }
  }
  if (eval_ok) {
    double scale = 1.0;
    for (double v : vals) scale = std::max(scale, std::abs(v));
    bool convex_ok = true;
    for (int i = 0; i < grid && convex_ok; ++i) {
      for (int j = i + 2; j < grid; j += 2) {
        int m = (i + j) / 2;
        if (vals[m] > 0.5 * (vals[i] + vals[j]) + TOL_EQ * scale) {
          rep.fail("midpoint convexity fails between x=" +
                   fmt_num(lo + (hi - lo) * i / (grid - 1)) + " and x=" +
                   fmt_num(lo + (hi - lo) * j / (grid - 1)));
          convex_ok = false;
          break;
        }
      }
    }
  }

  // overrides: boundary location and closure comparison
  for (const auto& [p, v] : overrides_) {
    bool at_lo = std::isfinite(dl) && std::abs(p - dl) <= TOL_EQ;
    bool at_hi = std::isfinite(dh) && std::abs(p - dh) <= TOL_EQ;
    if (!at_lo && !at_hi)
      rep.fail("override at x=" + fmt_num(p) + " is not a boundary point of the domain");
    ExtReal cl = closure_value(p);
    if (cl.finite() && std::isfinite(v) && v < cl.raw() - TOL_EQ)
      rep.fail("override value " + fmt_num(v) + " at x=" + fmt_num(p) +
               " lies below the closure value " + fmt_num(cl.raw()));
  }

  // properness: some point of the domain must carry a finite value
  bool any_finite = false;
  for (int i = 0; i < grid && !any_finite; ++i) {
    double x = lo + (hi - lo) * i / (grid - 1);
    if (in_domain(x) && evaluate(x).finite()) any_finite = true;
  }
  if (!any_finite) rep.fail("function has no point with a finite value");
  return rep;
}

ExtReal NearlyConvexFn1D::conjugate(double xi) const {
  double best = neg_inf();
  for (const Piece& piece : pieces_) {
    Interval cl = piece.interval.closure();
    double a = cl.lo(), b = cl.hi();
    bool a_art = !std::isfinite(a);
    bool b_art = !std::isfinite(b);
    double A = a_art ? -XI_SEARCH_BOUND : a;
    double B = b_art ? XI_SEARCH_BOUND : b;
    auto g = [&](double x) { return xi * x - piece.expr.eval(x); };

    // exact endpoint terms (needed to recognize attained asymptotes)
    best = std::max(best, g(A));
    best = std::max(best, g(B));

    // growth past an artificial endpoint means the supremum is infinite
    // (or beyond the value cap, which reports the same).
    if (B > A) {
      double step = std::max(1.0, std::abs(B) * 1e-6);
      if (b_art && g(B) > g(B - step) + TOL_EQ * step) return ExtReal::pos_inf();
      if (a_art && g(A) > g(A + step) + TOL_EQ * step) return ExtReal::pos_inf();
      if (!expr_is_affine(piece.expr)) {
        best = std::max(best, golden_max(g, A, B).second);
        // geometric probes catch maxima concentrated closer to an endpoint
        // than the golden width stop can resolve (sqrt-type branches under
        // very steep slopes)
        double w = std::min(1.0, B - A);
        for (double h = 0.1 * w; h > 1e-40; h *= 0.1) {
          if (!a_art) best = std::max(best, g(A + h));
          if (!b_art) best = std::max(best, g(B - h));
        }
      }
    }
  }
  if (best > CONJ_VALUE_CAP) return ExtReal::pos_inf();
  return ExtReal(best);
}

NearlyConvexFn1D NearlyConvexFn1D::scaled(double lambda) const {
  if (lambda <= 0) throw NonPositiveScalarError("scaled: lambda must be positive");
  std::vector<Piece> ps;
  ps.reserve(pieces_.size());
  for (const Piece& p : pieces_) ps.push_back({p.interval, Expr::scale(lambda, p.expr)});
  std::map<double, double> ov;
  for (const auto& [p, v] : overrides_) ov[p] = lambda * v;
  return NearlyConvexFn1D(domain_, std::move(ps), std::move(ov));
}

NearlyConvexFn1D NearlyConvexFn1D::indicator(const Interval& set) {
  if (set.is_empty()) throw EmptySetError("indicator of empty set");
  return NearlyConvexFn1D(set, {Piece{set, Expr::constant(0.0)}});
}

NearlyConvexFn1D NearlyConvexFn1D::piecewise_linear(const std::vector<double>& xs,
                                                    const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ValidationError("piecewise_linear: need matching xs/ys with >= 2 samples");
  std::vector<Piece> ps;
  ps.reserve(xs.size() - 1);
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    double s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    Expr e = Expr::add(Expr::constant(ys[i] - s * xs[i]), Expr::scale(s, Expr::var()));
    ps.push_back({Interval::closed(xs[i], xs[i + 1]), e});
  }
  return NearlyConvexFn1D(Interval::closed(xs.front(), xs.back()), std::move(ps));
}

NearlyConvexFn1D sum_functions(const NearlyConvexFn1D& f, const NearlyConvexFn1D& g) {
  Interval dom = f.domain().intersect(g.domain());
  if (dom.is_empty()) throw EmptySetError("sum: domains do not intersect");
  Interval cl = dom.closure();

  std::vector<double> cuts;
  auto add_cut = [&](double x) {
    if (!std::isfinite(x)) return;
    if (x < cl.lo() - TOL_EVAL || x > cl.hi() + TOL_EVAL) return;
    for (double c : cuts)
      if (std::abs(c - x) <= TOL_EVAL) return;
    cuts.push_back(x);
  };
  add_cut(cl.lo());
  add_cut(cl.hi());
  for (const NearlyConvexFn1D* h : {&f, &g}) {
    for (const Piece& p : h->pieces()) {
      add_cut(p.interval.lo());
      add_cut(p.interval.hi());
    }
  }
  std::sort(cuts.begin(), cuts.end());

  std::vector<Piece> pieces;
  auto piece_expr = [](const NearlyConvexFn1D& h, double x) -> Expr {
    for (const Piece& p : h.pieces()) {
      if (p.interval.closure().contains(x, TOL_EVAL)) return p.expr;
    }
    throw OutOfDomainError("sum: no piece at x=" + fmt_num(x));
  };
  bool lo_unbounded = !std::isfinite(cl.lo());
  bool hi_unbounded = !std::isfinite(cl.hi());
  if (cuts.empty()) {
    // both summands live on the whole line with a single formula each
    Expr e = Expr::add(piece_expr(f, 0.0), piece_expr(g, 0.0));
    pieces.push_back({Interval::all(), e});
  } else if (!lo_unbounded && !hi_unbounded && cuts.back() - cuts.front() <= TOL_EVAL) {
    double c = cuts.front();
    Expr e = Expr::add(piece_expr(f, c), piece_expr(g, c));
    pieces.push_back({Interval::closed(c, c), e});
  } else {
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      double a = cuts[i], b = cuts[i + 1];
      double mid = 0.5 * (a + b);
      Expr e = Expr::add(piece_expr(f, mid), piece_expr(g, mid));
      pieces.push_back({Interval::closed(a, b), e});
    }
    if (lo_unbounded) {
      double a = cuts.front();
      Expr e = Expr::add(piece_expr(f, a - 1.0), piece_expr(g, a - 1.0));
      pieces.insert(pieces.begin(),
                    {Interval::make(neg_inf(), a, false, true), e});
    }
    if (hi_unbounded) {
      double b = cuts.back();
      Expr e = Expr::add(piece_expr(f, b + 1.0), piece_expr(g, b + 1.0));
      pieces.push_back({Interval::make(b, pos_inf(), true, false), e});
    }
  }

  std::map<double, double> overrides;
  for (const NearlyConvexFn1D* h : {&f, &g}) {
    for (const auto& [p, v] : h->overrides()) {
      (void)v;
      if (p < cl.lo() - TOL_EVAL || p > cl.hi() + TOL_EVAL) continue;
      if (overrides.count(p)) continue;
      ExtReal s = f.evaluate(p);
      ExtReal t = g.evaluate(p);
      if (s.is_pos_inf() || t.is_pos_inf())
        overrides[p] = pos_inf();
      else
        overrides[p] = s.raw() + t.raw();
    }
  }
  return NearlyConvexFn1D(dom, std::move(pieces), std::move(overrides));
}

}  // namespace nearconvex
