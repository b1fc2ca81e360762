#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nearconvex/extreal.hpp"
#include "nearconvex/interval.hpp"

namespace nearconvex {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

double dot(Vec2 a, Vec2 b);
double norm(Vec2 a);

// A 2D polyhedron in V-representation: conv(vertices) + cone(rays).
// The vertex list may contain redundant (non-extreme) points; support and
// membership stay correct since both are evaluated against the full list.
class VPolyhedron2 {
 public:
  VPolyhedron2(std::vector<Vec2> vertices, std::vector<Vec2> rays);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Vec2>& rays() const { return rays_; }

  // Support function sigma(w) = sup over the set of <w, p>.  +inf as soon
  // as some recession ray has positive inner product with w.
  ExtReal support(Vec2 w) const;

  // Exact membership test, derived from the support function: p belongs to
  // the set iff <w,p> <= sigma(w) for every direction w, and in 2D the
  // maximum of <w,p> - sigma(w) over unit w is attained at one of finitely
  // many candidate directions (vertex-pair normals, p-to-vertex directions,
  // ray perpendiculars).
  bool contains(Vec2 p, double tol) const;

  // Largest value of <w,p> - sigma(w) over admissible unit directions;
  // negative inside, ~0 on the boundary, positive outside.
  double separation(Vec2 p) const;

  // Does the recession cone cone(rays) contain direction d?
  bool cone_contains(Vec2 d, double tol = 1e-12) const;

  // Range of x over the set, as a closed interval of R.
  IntervalSet x_range() const;

  // Vertical slice {y : (x,y) in set}; empty when x is outside the range.
  IntervalSet slice_at(double x) const;

  // A point with strictly negative separation, when one can be found among
  // vertex centroids pushed along ray combinations.  Used by sampled
  // relative-interior qualification checks (full-dimensional sets only).
  std::optional<Vec2> interior_point(double margin = 1e-7) const;

  std::string str() const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<Vec2> rays_;
};

// Graph of the pointwise sum of two set-valued maps, assembled from
// vertical slices on a shared x grid plus the exact recession directions.
VPolyhedron2 minkowski_y_sum(const VPolyhedron2& a, const VPolyhedron2& b,
                             int grid_points = 257);

// Support of the intersection of several polyhedra in direction w,
// via a recession test plus a refined grid maximization of <w,q> over the
// common region.  Desk-scale: accuracy follows the refinement depth.
ExtReal intersection_support(const std::vector<VPolyhedron2>& sets, Vec2 w);

// A strictly interior common point of all sets, if the sampling finds one.
std::optional<Vec2> common_interior_point(const std::vector<VPolyhedron2>& sets,
                                          double margin = 1e-7);

}  // namespace nearconvex
