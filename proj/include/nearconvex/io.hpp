#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nearconvex/problems.hpp"

namespace nearconvex {

// A named set: an interval of R or a 2D V-polyhedron.
struct SetDef {
  bool is_polyhedron = false;
  Interval interval;
  std::optional<VPolyhedron2> poly;
};

struct ParametricDef {
  std::string f1, f2, graph;
  std::vector<std::pair<Vec2, double>> overrides;  // value may be +inf
};

// Parsed problem document.  Object order follows the source text so the
// canonical serializer round-trips.
struct ProblemFile {
  std::vector<std::pair<std::string, NearlyConvexFn1D>> functions;
  std::vector<std::pair<std::string, SetDef>> sets;
  std::vector<std::pair<std::string, ParametricDef>> parametrics;

  const NearlyConvexFn1D& function(const std::string& name) const;
  const SetDef& set(const std::string& name) const;
  ParametricProblem parametric(const std::string& name) const;
};

// Expression sublanguage: numbers, x, + - *, abs(), sqrt(), ^2, parentheses.
// Products need a constant factor; everything lowers to the node catalog.
Expr parse_expression(const std::string& text);

ProblemFile parse_problem_file(const std::string& text);

// Canonical text form; parse(serialize(parse(t))) equals parse(t).
std::string serialize_problem_file(const ProblemFile& doc);

std::string read_text_file(const std::string& path);

}  // namespace nearconvex
