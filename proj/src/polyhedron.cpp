#include "nearconvex/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nearconvex/config.hpp"
#include "nearconvex/numfmt.hpp"

namespace nearconvex {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

static Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return {a.x / n, a.y / n};
}

static Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

VPolyhedron2::VPolyhedron2(std::vector<Vec2> vertices, std::vector<Vec2> rays)
    : rays_(std::move(rays)) {
  if (vertices.empty()) throw std::invalid_argument("VPolyhedron2: vertex list empty");
  for (const Vec2& v : vertices) {
    bool dup = false;
    for (const Vec2& u : vertices_) {
      if (std::abs(u.x - v.x) <= TOL_EVAL && std::abs(u.y - v.y) <= TOL_EVAL) {
        dup = true;
        break;
      }
    }
    if (!dup) vertices_.push_back(v);
  }
  for (const Vec2& r : rays_) {
    if (norm(r) <= TOL_EVAL) throw std::invalid_argument("VPolyhedron2: zero ray");
  }
}

ExtReal VPolyhedron2::support(Vec2 w) const {
  double scale = std::max(1.0, norm(w));
  for (const Vec2& r : rays_) {
    if (dot(w, r) > TOL_EVAL * scale * std::max(1.0, norm(r))) return ExtReal::pos_inf();
  }
  double best = neg_inf();
  for (const Vec2& v : vertices_) best = std::max(best, dot(w, v));
  return ExtReal(best);
}

double VPolyhedron2::separation(Vec2 p) const {
  // Candidate unit directions where max_w (<w,p> - sigma(w)) can be attained.
  std::vector<Vec2> cands;
  cands.reserve(4 + 2 * rays_.size() + vertices_.size() * (vertices_.size() + 1));
  cands.push_back({1, 0});
  cands.push_back({-1, 0});
  cands.push_back({0, 1});
  cands.push_back({0, -1});
  for (const Vec2& r : rays_) {
    Vec2 q = normalized(perp(r));
    cands.push_back(q);
    cands.push_back({-q.x, -q.y});
  }
  for (size_t i = 0; i < vertices_.size(); ++i) {
    Vec2 d = p - vertices_[i];
    if (norm(d) > TOL_EVAL) cands.push_back(normalized(d));
    for (size_t j = i + 1; j < vertices_.size(); ++j) {
      Vec2 e = vertices_[j] - vertices_[i];
      if (norm(e) > TOL_EVAL) {
        Vec2 q = normalized(perp(e));
        cands.push_back(q);
        cands.push_back({-q.x, -q.y});
      }
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& w : cands) {
    ExtReal s = support(w);
    if (!s.finite()) continue;
    best = std::max(best, dot(w, p) - s.raw());
  }
  // All directions infeasible means the recession cone spans the plane.
  if (!std::isfinite(best)) return -std::numeric_limits<double>::infinity();
  return best;
}

bool VPolyhedron2::contains(Vec2 p, double tol) const { return separation(p) <= tol; }

bool VPolyhedron2::cone_contains(Vec2 d, double tol) const {
  double nd = norm(d);
  if (nd <= tol) return true;
  Vec2 u = normalized(d);
  // Single ray parallel to d.
  for (const Vec2& r : rays_) {
    Vec2 ur = normalized(r);
    if (std::abs(ur.x - u.x) <= 1e-10 && std::abs(ur.y - u.y) <= 1e-10) return true;
  }
  // Positive combination of a ray pair.
  for (size_t i = 0; i < rays_.size(); ++i) {
    for (size_t j = i + 1; j < rays_.size(); ++j) {
      Vec2 a = rays_[i], b = rays_[j];
      double det = a.x * b.y - a.y * b.x;
      if (std::abs(det) <= 1e-14) continue;
      double s = (u.x * b.y - u.y * b.x) / det;
      double t = (a.x * u.y - a.y * u.x) / det;
      if (s >= -1e-12 && t >= -1e-12) return true;
    }
  }
  return false;
}

IntervalSet VPolyhedron2::x_range() const {
  ExtReal hi = support({1, 0});
  ExtReal lo = support({-1, 0});
  double a = lo.finite() ? -lo.raw() : neg_inf();
  double b = hi.finite() ? hi.raw() : pos_inf();
  IntervalSet r = IntervalSet::closed(std::isfinite(a) ? a : 0, std::isfinite(b) ? b : 0);
  if (!std::isfinite(a) && !std::isfinite(b)) return IntervalSet::all();
  if (!std::isfinite(a)) return IntervalSet::at_most(b);
  if (!std::isfinite(b)) return IntervalSet::at_least(a);
  return r;
}

IntervalSet VPolyhedron2::slice_at(double x) const {
  IntervalSet xr = x_range();
  if (!xr.contains(x, TOL_EQ)) return IntervalSet::empty();

  bool unb_above = cone_contains({0, 1});
  bool unb_below = cone_contains({0, -1});

  // Candidate boundary heights.  Every candidate below is a point of the
  // set by convexity, and each slice endpoint lies on a vertex-vertex or
  // vertex-ray edge, so min/max over candidates is exact.
  std::vector<double> ys;
  for (const Vec2& v : vertices_) {
    if (std::abs(v.x - x) <= TOL_EQ) ys.push_back(v.y);
  }
  for (size_t i = 0; i < vertices_.size(); ++i) {
    for (size_t j = i + 1; j < vertices_.size(); ++j) {
      const Vec2 &a = vertices_[i], &b = vertices_[j];
      if (std::abs(b.x - a.x) <= TOL_EVAL) continue;
      double t = (x - a.x) / (b.x - a.x);
      if (t >= -1e-12 && t <= 1 + 1e-12) ys.push_back(a.y + t * (b.y - a.y));
    }
    for (const Vec2& r : rays_) {
      if (std::abs(r.x) <= TOL_EVAL) continue;
      double t = (x - vertices_[i].x) / r.x;
      if (t >= -1e-12) ys.push_back(vertices_[i].y + t * r.y);
    }
  }
  if (ys.empty()) {
    if (unb_above && unb_below) return IntervalSet::all();
    return IntervalSet::empty();
  }
  double lo = *std::min_element(ys.begin(), ys.end());
  double hi = *std::max_element(ys.begin(), ys.end());
  if (unb_above && unb_below) return IntervalSet::all();
  if (unb_above) return IntervalSet::at_least(lo);
  if (unb_below) return IntervalSet::at_most(hi);
  return IntervalSet::closed(lo, hi);
}

std::optional<Vec2> VPolyhedron2::interior_point(double margin) const {
  Vec2 c{0, 0};
  for (const Vec2& v : vertices_) c = c + v;
  c = (1.0 / static_cast<double>(vertices_.size())) * c;
  Vec2 rmix{0, 0};
  for (const Vec2& r : rays_) rmix = rmix + normalized(r);

  std::vector<Vec2> cands{c, c + rmix, c + 0.5 * rmix, c + 2.0 * rmix};
  for (const Vec2& v : vertices_) cands.push_back(0.5 * (c + v) + rmix);
  for (const Vec2& p : cands) {
    if (separation(p) <= -margin) return p;
  }
  return std::nullopt;
}

std::string VPolyhedron2::str() const {
  std::string s = "polyhedron{";
  for (const Vec2& v : vertices_) s += " v(" + fmt_num(v.x) + "," + fmt_num(v.y) + ")";
  for (const Vec2& r : rays_) s += " r(" + fmt_num(r.x) + "," + fmt_num(r.y) + ")";
  return s + " }";
}

// Least slope s with (d, s) in the recession cone, via bisection on
// cone_contains; nullopt when no slope is feasible for that d.
static std::optional<double> min_ray_slope(const VPolyhedron2& g, double d) {
  const double kHi = 1e6;
  if (!g.cone_contains({d, kHi})) {
    if (g.cone_contains({d, -kHi})) {
      // Only steep downward slopes feasible: search [-kHi, 0].
      double lo = -kHi, hi = 0;
      if (g.cone_contains({d, hi})) return hi;
      for (int i = 0; i < 120; ++i) {
        double m = 0.5 * (lo + hi);
        (g.cone_contains({d, m}) ? lo : hi) = m;
      }
      return lo;
    }
    return std::nullopt;
  }
  if (g.cone_contains({d, -kHi})) return -kHi;  // unbounded below in slope
  double lo = -kHi, hi = kHi;
  for (int i = 0; i < 120; ++i) {
    double m = 0.5 * (lo + hi);
    (g.cone_contains({d, m}) ? hi : lo) = m;
  }
  return hi;
}

static std::optional<double> max_ray_slope(const VPolyhedron2& g, double d) {
  const double kHi = 1e6;
  if (!g.cone_contains({d, kHi})) {
    auto mn = min_ray_slope(g, d);
    if (!mn) return std::nullopt;
    double lo = *mn, hi = kHi;
    for (int i = 0; i < 120; ++i) {
      double m = 0.5 * (lo + hi);
      (g.cone_contains({d, m}) ? lo : hi) = m;
    }
    return lo;
  }
  return std::nullopt;  // unbounded above in slope; the (0,1) ray covers it
}

VPolyhedron2 minkowski_y_sum(const VPolyhedron2& a, const VPolyhedron2& b,
                             int grid_points) {
  IntervalSet xa = a.x_range();
  IntervalSet xb = b.x_range();
  IntervalSet overlap = xa.intersect(xb);
  if (overlap.is_empty())
    throw std::invalid_argument("minkowski_y_sum: disjoint x ranges");

  double scale = 1.0;
  for (const VPolyhedron2* g : {&a, &b})
    for (const Vec2& v : g->vertices())
      scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
  double lo = overlap.unbounded_below() ? -8.0 * scale : overlap.lo();
  double hi = overlap.unbounded_above() ? 8.0 * scale : overlap.hi();

  std::vector<Vec2> verts;
  std::vector<Vec2> rays;
  for (int i = 0; i < grid_points; ++i) {
    double x = lo + (hi - lo) * i / (grid_points - 1);
    IntervalSet sa = a.slice_at(x);
    IntervalSet sb = b.slice_at(x);
    if (sa.is_empty() || sb.is_empty()) continue;
    if (!sa.unbounded_below() && !sb.unbounded_below())
      verts.push_back({x, sa.lo() + sb.lo()});
    if (!sa.unbounded_above() && !sb.unbounded_above())
      verts.push_back({x, sa.hi() + sb.hi()});
  }
  if (verts.empty()) throw std::invalid_argument("minkowski_y_sum: no finite slices");

  if (a.cone_contains({0, 1}) && b.cone_contains({0, 1})) rays.push_back({0, 1});
  if (a.cone_contains({0, -1}) && b.cone_contains({0, -1})) rays.push_back({0, -1});
  for (double d : {1.0, -1.0}) {
    auto s1 = min_ray_slope(a, d);
    auto s2 = min_ray_slope(b, d);
    if (s1 && s2) rays.push_back({d, *s1 + *s2});
    auto m1 = max_ray_slope(a, d);
    auto m2 = max_ray_slope(b, d);
    if (m1 && m2) rays.push_back({d, *m1 + *m2});
  }
  return VPolyhedron2(verts, rays);
}

ExtReal intersection_support(const std::vector<VPolyhedron2>& sets, Vec2 w) {
  if (sets.empty()) throw std::invalid_argument("intersection_support: no sets");

  // Unbounded when some extreme ray of the common recession cone points
  // with w.  In 2D every extreme ray of an intersection of cones is a ray
  // of one of them lying in all the others.
  for (const VPolyhedron2& g : sets) {
    for (const Vec2& r : g.rays()) {
      bool in_all = true;
      for (const VPolyhedron2& h : sets) {
        if (!h.cone_contains(r)) {
          in_all = false;
          break;
        }
      }
      if (in_all && dot(w, r) > TOL_EVAL * std::max(1.0, norm(w)) * norm(r))
        return ExtReal::pos_inf();
    }
  }

  // Window from the vertex spread.
  double lo_x = pos_inf(), hi_x = neg_inf(), lo_y = pos_inf(), hi_y = neg_inf();
  for (const VPolyhedron2& g : sets) {
    for (const Vec2& v : g.vertices()) {
      lo_x = std::min(lo_x, v.x);
      hi_x = std::max(hi_x, v.x);
      lo_y = std::min(lo_y, v.y);
      hi_y = std::max(hi_y, v.y);
    }
  }
  double pad = 1.0 + 0.5 * std::max(hi_x - lo_x, hi_y - lo_y);
  lo_x -= pad;
  hi_x += pad;
  lo_y -= pad;
  hi_y += pad;

  auto in_all = [&](Vec2 q) {
    for (const VPolyhedron2& g : sets)
      if (!g.contains(q, TOL_EQ)) return false;
    return true;
  };

  const int n = 65;
  bool found = false;
  Vec2 best{0, 0};
  double best_val = neg_inf();
  double cx = 0, cy = 0, wx = 0, wy = 0;
  for (int level = 0; level < 4; ++level) {
    double ax = level == 0 ? lo_x : cx - wx;
    double bx = level == 0 ? hi_x : cx + wx;
    double ay = level == 0 ? lo_y : cy - wy;
    double by = level == 0 ? hi_y : cy + wy;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Vec2 q{ax + (bx - ax) * i / (n - 1), ay + (by - ay) * j / (n - 1)};
        if (!in_all(q)) continue;
        double val = dot(w, q);
        if (!found || val > best_val) {
          found = true;
          best_val = val;
          best = q;
        }
      }
    }
    if (!found) break;
    cx = best.x;
    cy = best.y;
    wx = (level == 0 ? (hi_x - lo_x) : 2 * wx) * 1.5 / (n - 1);
    wy = (level == 0 ? (hi_y - lo_y) : 2 * wy) * 1.5 / (n - 1);
  }
  if (!found) return ExtReal::neg_inf();  // empty intersection sampled
  return ExtReal(best_val);
}

std::optional<Vec2> common_interior_point(const std::vector<VPolyhedron2>& sets,
                                          double margin) {
  std::vector<Vec2> cands;
  for (const VPolyhedron2& g : sets) {
    auto p = g.interior_point(margin);
    if (p) cands.push_back(*p);
    Vec2 c{0, 0};
    for (const Vec2& v : g.vertices()) c = c + v;
    c = (1.0 / static_cast<double>(g.vertices().size())) * c;
    Vec2 rmix{0, 0};
    for (const Vec2& r : g.rays()) rmix = rmix + normalized(r);
    cands.push_back(c + rmix);
    cands.push_back(c + 3.0 * rmix);
  }
  // Average of per-set candidates plus a coarse absolute grid.
  if (!cands.empty()) {
    Vec2 avg{0, 0};
    for (const Vec2& p : cands) avg = avg + p;
    cands.push_back((1.0 / static_cast<double>(cands.size())) * avg);
  }
  for (double x = -3; x <= 3; x += 0.75)
    for (double y = -3; y <= 3; y += 0.75) cands.push_back({x, y});

  for (const Vec2& p : cands) {
    bool ok = true;
    for (const VPolyhedron2& g : sets) {
      if (g.separation(p) > -margin) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  }
  return std::nullopt;
}

}  // namespace nearconvex
