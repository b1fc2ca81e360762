#include "nearconvex/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nearconvex/config.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/numfmt.hpp"

namespace nearconvex {

const NearlyConvexFn1D& ProblemFile::function(const std::string& name) const {
  for (const auto& [n, f] : functions)
    if (n == name) return f;
  throw Error("no function named '" + name + "' in the problem file");
}

const SetDef& ProblemFile::set(const std::string& name) const {
  for (const auto& [n, s] : sets)
    if (n == name) return s;
  throw Error("no set named '" + name + "' in the problem file");
}

ParametricProblem ProblemFile::parametric(const std::string& name) const {
  for (const auto& [n, p] : parametrics) {
    if (n != name) continue;
    const SetDef& g = set(p.graph);
    if (!g.is_polyhedron)
      throw Error("parametric '" + name + "': graph set must be a polyhedron");
    SeparableFn2D f(function(p.f1), function(p.f2), p.overrides);
    return ParametricProblem{f, *g.poly};
  }
  throw Error("no parametric problem named '" + name + "' in the problem file");
}

// ---------------------------------------------------------------------------
// expression parser

namespace {

struct ExprParser {
  const std::string& s;
  size_t pos = 0;
  int line, col0;

  ExprParser(const std::string& text, int line_no, int col_base)
      : s(text), line(line_no), col0(col_base) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line, col0 + static_cast<int>(pos), msg);
  }

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek_word(const std::string& w) {
    skip_ws();
    return s.compare(pos, w.size(), w) == 0;
  }

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos != s.size()) fail("unexpected trailing characters in expression");
    return e;
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      skip_ws();
      if (eat('+')) {
        e = fold_add(e, term());
      } else if (eat('-')) {
        e = fold_add(e, fold_neg(term()));
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    while (eat('*')) e = fold_mul(e, factor());
    return e;
  }

  Expr factor() {
    skip_ws();
    if (eat('-')) return fold_neg(factor());
    return power();
  }

  Expr power() {
    Expr e = atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      if (pos >= s.size() || s[pos] != '2') fail("only the exponent 2 is supported");
      ++pos;
      return Expr::sq(e);
    }
    return e;
  }

  Expr atom() {
    skip_ws();
    if (pos >= s.size()) fail("expression ended unexpectedly");
    if (peek_word("abs(")) {
      pos += 4;
      Expr e = expr();
      if (!eat(')')) fail("missing ')' after abs");
      return Expr::abs(e);
    }
    if (peek_word("sqrt(")) {
      pos += 5;
      Expr e = expr();
      if (!eat(')')) fail("missing ')' after sqrt");
      return Expr::sqrt(e);
    }
    if (eat('(')) {
      Expr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    char c = s[pos];
    if (c == 'x') {
      ++pos;
      return Expr::var();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
              s[pos] == 'e' || s[pos] == 'E' ||
              ((s[pos] == '+' || s[pos] == '-') && pos > start &&
               (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
        ++pos;
      try {
        return Expr::constant(std::stod(s.substr(start, pos - start)));
      } catch (...) {
        fail("malformed number");
      }
    }
    fail(std::string("unexpected character '") + c + "' in expression");
  }

  static std::optional<double> const_of(const Expr& e) {
    if (e.kind() == Expr::Kind::Const) return e.coeff();
    return std::nullopt;
  }

  Expr fold_add(const Expr& a, const Expr& b) {
    auto ca = const_of(a), cb = const_of(b);
    if (ca && cb) return Expr::constant(*ca + *cb);
    return Expr::add(a, b);
  }

  Expr fold_neg(const Expr& a) {
    if (auto c = const_of(a)) return Expr::constant(-*c);
    return Expr::neg(a);
  }

  Expr fold_mul(const Expr& a, const Expr& b) {
    auto ca = const_of(a), cb = const_of(b);
    if (ca && cb) return Expr::constant(*ca * *cb);
    if (ca) return Expr::scale(*ca, b);
    if (cb) return Expr::scale(*cb, a);
    fail("a product needs a constant factor (the catalog has no general product)");
  }
};

}  // namespace

Expr parse_expression(const std::string& text) {
  ExprParser p(text, 0, 0);
  return p.parse();
}

// ---------------------------------------------------------------------------
// document parser

namespace {

struct LineScanner {
  std::string text;
  int line_no;

  double number(size_t& pos, int col_base) const {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    size_t start = pos;
    if (text.compare(pos, 4, "-inf") == 0) {
      pos += 4;
      return neg_inf();
    }
    if (text.compare(pos, 3, "inf") == 0) {
      pos += 3;
      return pos_inf();
    }
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != ',' && text[pos] != ']' && text[pos] != ')' && text[pos] != ':')
      ++pos;
    try {
      return std::stod(text.substr(start, pos - start));
    } catch (...) {
      throw ParseError(line_no, col_base + static_cast<int>(start), "malformed number");
    }
  }
};

Interval parse_interval_text(const std::string& t, int line_no) {
  size_t pos = 0;
  while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  if (pos >= t.size() || (t[pos] != '[' && t[pos] != '('))
    throw ParseError(line_no, static_cast<int>(pos), "interval must start with [ or (");
  bool lo_closed = t[pos] == '[';
  ++pos;
  LineScanner sc{t, line_no};
  double lo = sc.number(pos, 0);
  while (pos < t.size() && (std::isspace(static_cast<unsigned char>(t[pos])) || t[pos] == ','))
    ++pos;
  double hi = sc.number(pos, 0);
  while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  if (pos >= t.size() || (t[pos] != ']' && t[pos] != ')'))
    throw ParseError(line_no, static_cast<int>(pos), "interval must end with ] or )");
  bool hi_closed = t[pos] == ']';
  Interval r = Interval::make(lo, hi, lo_closed, hi_closed);
  if (r.is_empty() && !(lo > hi))
    return r;  // explicitly empty intervals are representable
  if (r.is_empty())
    throw ParseError(line_no, 0, "interval endpoints are out of order");
  return r;
}

struct DocParser {
  std::istringstream in;
  int line_no = 0;

  enum class SectionKind { None, Function, Set, Parametric };
  SectionKind kind = SectionKind::None;
  std::string name;

  // function under construction
  std::optional<Interval> fdomain;
  std::vector<Piece> pieces;
  std::map<double, double> overrides;

  // set under construction
  std::optional<Interval> set_interval;
  bool set_is_poly = false;
  std::vector<Vec2> verts;
  std::vector<Vec2> rays;

  // parametric under construction
  ParametricDef par;
  std::optional<std::string> box_text;

  ProblemFile doc;

  explicit DocParser(const std::string& text) : in(text) {}

  [[noreturn]] void fail(const std::string& msg, int col = 0) {
    throw ParseError(line_no, col, msg);
  }

  void flush_section() {
    switch (kind) {
      case SectionKind::None:
        return;
      case SectionKind::Function: {
        if (pieces.empty()) fail("function '" + name + "' has no pieces");
        Interval dom;
        if (fdomain) {
          dom = *fdomain;
        } else {
          double lo = pieces.front().interval.lo();
          double hi = pieces.back().interval.hi();
          for (const auto& [p, v] : overrides) {
            (void)v;
            lo = std::min(lo, p);
            hi = std::max(hi, p);
          }
          dom = Interval::make(lo, hi, std::isfinite(lo), std::isfinite(hi));
        }
        NearlyConvexFn1D f(dom, pieces, overrides);
        ValidationReport rep = f.validate();
        if (!rep.valid) {
          std::string msg = "function '" + name + "' is invalid:";
          for (const auto& issue : rep.issues) msg += "\n  " + issue;
          throw ValidationError(msg);
        }
        doc.functions.emplace_back(name, std::move(f));
        break;
      }
      case SectionKind::Set: {
        SetDef def;
        if (set_is_poly) {
          if (verts.empty()) fail("polyhedron '" + name + "' needs a vertex");
          def.is_polyhedron = true;
          def.poly = VPolyhedron2(verts, rays);
        } else {
          if (!set_interval) fail("set '" + name + "' needs an interval or polyhedron");
          def.interval = *set_interval;
        }
        doc.sets.emplace_back(name, std::move(def));
        break;
      }
      case SectionKind::Parametric: {
        if (par.f1.empty() || par.f2.empty() || par.graph.empty())
          fail("parametric '" + name + "' needs f1, f2 and graph lines");
        // the optional box line must match dom f1 x dom f2
        if (box_text) {
          const NearlyConvexFn1D& f1 = doc.function(par.f1);
          const NearlyConvexFn1D& f2 = doc.function(par.f2);
          size_t x_pos = box_text->find('x');
          if (x_pos == std::string::npos) fail("box line needs the form I x J");
          Interval bx = parse_interval_text(box_text->substr(0, x_pos), line_no);
          Interval by = parse_interval_text(box_text->substr(x_pos + 1), line_no);
          auto same = [](const Interval& a, const Interval& b) {
            return a.str() == b.str();
          };
          if (!same(bx, f1.domain()) || !same(by, f2.domain()))
            throw ValidationError("parametric box does not equal dom f1 x dom f2");
        }
        doc.parametrics.emplace_back(name, par);
        break;
      }
    }
    kind = SectionKind::None;
    name.clear();
    fdomain.reset();
    pieces.clear();
    overrides.clear();
    set_interval.reset();
    set_is_poly = false;
    verts.clear();
    rays.clear();
    par = ParametricDef{};
    box_text.reset();
  }

  ProblemFile run() {
    std::string raw;
    bool any_content = false;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string lineText = raw;
      size_t hash = lineText.find('#');
      if (hash != std::string::npos) lineText.erase(hash);
      size_t b = lineText.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      size_t e = lineText.find_last_not_of(" \t\r");
      lineText = lineText.substr(b, e - b + 1);
      any_content = true;
      handle_line(lineText, static_cast<int>(b));
    }
    if (!any_content) throw ParseError(1, 0, "empty problem file");
    flush_section();
    return std::move(doc);
  }

  static std::pair<std::string, std::string> split_word(const std::string& t) {
    size_t sp = t.find_first_of(" \t");
    if (sp == std::string::npos) return {t, ""};
    size_t b = t.find_first_not_of(" \t", sp);
    return {t.substr(0, sp), b == std::string::npos ? "" : t.substr(b)};
  }

  void handle_line(const std::string& t, int col) {
    auto [word, rest] = split_word(t);
    if (word == "function" || word == "set" || word == "parametric") {
      flush_section();
      if (rest.empty()) fail("'" + word + "' needs a name", col);
      name = rest;
      kind = word == "function" ? SectionKind::Function
             : word == "set"    ? SectionKind::Set
                                : SectionKind::Parametric;
      return;
    }
    switch (kind) {
      case SectionKind::None:
        fail("line outside of a section: '" + t + "'", col);
      case SectionKind::Function:
        function_line(word, rest, col);
        return;
      case SectionKind::Set:
        set_line(word, rest, col);
        return;
      case SectionKind::Parametric:
        parametric_line(word, rest, col);
        return;
    }
  }

  void function_line(const std::string& word, const std::string& rest, int col) {
    if (word == "domain") {
      fdomain = parse_interval_text(rest, line_no);
    } else if (word == "on") {
      size_t colon = rest.find(':');
      if (colon == std::string::npos) fail("'on' line needs 'on INTERVAL: EXPR'", col);
      Interval iv = parse_interval_text(rest.substr(0, colon), line_no);
      ExprParser ep(rest.substr(colon + 1), line_no, col + static_cast<int>(colon) + 1);
      pieces.push_back({iv, ep.parse()});
    } else if (word == "at") {
      size_t colon = rest.find(':');
      if (colon == std::string::npos) fail("'at' line needs 'at POINT: VALUE'", col);
      LineScanner sc{rest, line_no};
      size_t pos = 0;
      double p = sc.number(pos, col);
      std::string vtext = rest.substr(colon + 1);
      size_t vpos = 0;
      double v = LineScanner{vtext, line_no}.number(vpos, col);
      overrides[p] = v;
    } else {
      fail("unknown function line '" + word + "'", col);
    }
  }

  void set_line(const std::string& word, const std::string& rest, int col) {
    if (word == "interval") {
      set_interval = parse_interval_text(rest, line_no);
    } else if (word == "polyhedron") {
      set_is_poly = true;
    } else if (word == "vertex" || word == "ray") {
      if (!set_is_poly) fail("'" + word + "' outside a polyhedron block", col);
      LineScanner sc{rest, line_no};
      size_t pos = 0;
      double x = sc.number(pos, col);
      double y = sc.number(pos, col);
      if (word == "vertex")
        verts.push_back({x, y});
      else
        rays.push_back({x, y});
    } else {
      fail("unknown set line '" + word + "'", col);
    }
  }

  void parametric_line(const std::string& word, const std::string& rest, int col) {
    if (word == "f1") {
      par.f1 = rest;
    } else if (word == "f2") {
      par.f2 = rest;
    } else if (word == "graph") {
      par.graph = rest;
    } else if (word == "box") {
      box_text = rest;
    } else if (word == "at") {
      size_t colon = rest.find(':');
      if (colon == std::string::npos) fail("'at' line needs 'at X Y: VALUE'", col);
      LineScanner sc{rest.substr(0, colon), line_no};
      size_t pos = 0;
      double x = sc.number(pos, col);
      double y = sc.number(pos, col);
      std::string vtext = rest.substr(colon + 1);
      size_t vpos = 0;
      double v = LineScanner{vtext, line_no}.number(vpos, col);
      par.overrides.push_back({Vec2{x, y}, v});
    } else {
      fail("unknown parametric line '" + word + "'", col);
    }
  }
};

std::string interval_text(const Interval& iv) {
  std::string s = iv.lo_closed() ? "[" : "(";
  s += fmt_num(iv.lo());
  s += ", ";
  s += fmt_num(iv.hi());
  s += iv.hi_closed() ? "]" : ")";
  return s;
}

}  // namespace

ProblemFile parse_problem_file(const std::string& text) {
  DocParser p(text);
  return p.run();
}

std::string serialize_problem_file(const ProblemFile& doc) {
  std::string out;
  for (const auto& [name, f] : doc.functions) {
    out += "function " + name + "\n";
    out += "  domain " + interval_text(f.domain()) + "\n";
    for (const Piece& p : f.pieces())
      out += "  on " + interval_text(p.interval) + ": " + p.expr.str() + "\n";
    for (const auto& [pt, v] : f.overrides())
      out += "  at " + fmt_num(pt) + ": " + fmt_num(v) + "\n";
    out += "\n";
  }
  for (const auto& [name, s] : doc.sets) {
    out += "set " + name + "\n";
    if (s.is_polyhedron) {
      out += "  polyhedron\n";
      for (const Vec2& v : s.poly->vertices())
        out += "  vertex " + fmt_num(v.x) + " " + fmt_num(v.y) + "\n";
      for (const Vec2& r : s.poly->rays())
        out += "  ray " + fmt_num(r.x) + " " + fmt_num(r.y) + "\n";
    } else {
      out += "  interval " + interval_text(s.interval) + "\n";
    }
    out += "\n";
  }
  for (const auto& [name, p] : doc.parametrics) {
    out += "parametric " + name + "\n";
    out += "  f1 " + p.f1 + "\n";
    out += "  f2 " + p.f2 + "\n";
    out += "  box " + interval_text(doc.function(p.f1).domain()) + " x " +
           interval_text(doc.function(p.f2).domain()) + "\n";
    out += "  graph " + p.graph + "\n";
    for (const auto& [q, v] : p.overrides)
      out += "  at " + fmt_num(q.x) + " " + fmt_num(q.y) + ": " + fmt_num(v) + "\n";
    out += "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nearconvex
