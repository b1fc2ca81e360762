#include "nearconvex/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <sstream>

#include "nearconvex/calculus.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/io.hpp"
#include "nearconvex/numfmt.hpp"
#include "nearconvex/problems.hpp"
#include "nearconvex/svg.hpp"
#include "nearconvex/verify.hpp"

namespace nearconvex {

namespace {

std::pair<double, double> parse_pair(const std::string& s, const std::string& what) {
  size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw ParseError(0, 0, what + " needs the form 'a,b'");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (...) {
    throw ParseError(0, 0, what + ": malformed number in '" + s + "'");
  }
}

std::string set_csv(const IntervalSet& s) {
  if (s.is_empty()) return "nan,nan,0,0";
  return fmt_num(s.lo()) + "," + fmt_num(s.hi()) + "," +
         fmt_flag(s.unbounded_below()) + "," + fmt_flag(s.unbounded_above());
}

std::string set_text(const IntervalSet& s) {
  if (s.is_empty()) return "empty";
  std::string lo = s.unbounded_below() ? "-inf" : fmt_num(s.lo());
  std::string hi = s.unbounded_above() ? "inf" : fmt_num(s.hi());
  return (s.unbounded_below() ? "(" : "[") + lo + ", " + hi +
         (s.unbounded_above() ? ")" : "]");
}

void emit_set(std::ostream& out, const RunConfig& cfg, const std::string& header,
              const std::string& prefix, const IntervalSet& s,
              const std::string& text_label) {
  if (cfg.format == "text") {
    out << text_label << " = " << set_text(s) << "\n";
  } else {
    out << "# " << header << "\n" << prefix << set_csv(s) << "\n";
  }
}

struct Ctx {
  RunConfig cfg;
  std::string file;
  std::ostream& out;

  ProblemFile doc;
  bool loaded = false;

  explicit Ctx(std::ostream& o) : out(o) {}

  void load() {
    if (loaded) return;
    if (file.empty()) throw ParseError(0, 0, "--file is required");
    doc = parse_problem_file(read_text_file(file));
    loaded = true;
  }
};

void plot_esub_band(Ctx& ctx, const NearlyConvexFn1D& f, double at, double eps) {
  double top = std::max(1.0, 2 * eps);
  PlotSeries band;
  band.label = "esub endpoints vs eps";
  band.band = true;
  std::vector<double> finite;
  const int n = 33;
  std::vector<IntervalSet> sets(n);
  for (int i = 0; i < n; ++i) {
    double e = top * i / (n - 1);
    sets[i] = esub_interval(f, at, e);
    if (!sets[i].is_empty()) {
      if (!sets[i].unbounded_below()) finite.push_back(sets[i].lo());
      if (!sets[i].unbounded_above()) finite.push_back(sets[i].hi());
    }
  }
  double clamp = 1.0;
  for (double v : finite) clamp = std::max(clamp, std::abs(v) * 1.2);
  for (int i = 0; i < n; ++i) {
    if (sets[i].is_empty()) continue;
    band.x.push_back(top * i / (n - 1));
    band.y.push_back(sets[i].unbounded_below() ? -clamp : sets[i].lo());
    band.y2.push_back(sets[i].unbounded_above() ? clamp : sets[i].hi());
  }
  emit_plot(ctx.cfg.plot_path, "eps-subdifferential band", {band});
}

int cmd_eval(Ctx& ctx, const std::string& fn, double at) {
  ctx.load();
  ExtReal v = ctx.doc.function(fn).evaluate(at);
  if (ctx.cfg.format == "text")
    ctx.out << fn << "(" << fmt_num(at) << ") = " << fmt_num(v.raw()) << "\n";
  else
    ctx.out << "# x,value\n" << fmt_num(at) << "," << fmt_num(v.raw()) << "\n";
  return 0;
}

int cmd_conjugate(Ctx& ctx, const std::string& fn, double at) {
  ctx.load();
  ExtReal v = ctx.doc.function(fn).conjugate(at);
  if (ctx.cfg.format == "text")
    ctx.out << fn << "*(" << fmt_num(at) << ") = " << fmt_num(v.raw()) << "\n";
  else
    ctx.out << "# xi,value\n" << fmt_num(at) << "," << fmt_num(v.raw()) << "\n";
  return 0;
}

int cmd_esub(Ctx& ctx, const std::string& fn, double at, double eps, bool oracle) {
  ctx.load();
  const NearlyConvexFn1D& f = ctx.doc.function(fn);
  std::string prefix = fmt_num(at) + "," + fmt_num(eps) + ",";
  if (oracle) {
    OracleResult r =
        oracle_esub_interval(f, at, eps, ctx.cfg.x_grid, ctx.cfg.xi_window,
                             ctx.cfg.xi_grid);
    if (ctx.cfg.format == "text") {
      ctx.out << "oracle esub = " << set_text(r.set) << " (clipped "
              << fmt_flag(r.clipped_lo) << "," << fmt_flag(r.clipped_hi) << ")\n";
    } else {
      ctx.out << "# x_bar,eps,lo,hi,clipped_lo,clipped_hi\n";
      if (r.set.is_empty())
        ctx.out << prefix << "nan,nan,0,0\n";
      else
        ctx.out << prefix << fmt_num(r.set.lo()) << "," << fmt_num(r.set.hi()) << ","
                << fmt_flag(r.clipped_lo) << "," << fmt_flag(r.clipped_hi) << "\n";
    }
  } else {
    IntervalSet s = esub_interval(f, at, eps);
    emit_set(ctx.out, ctx.cfg, "x_bar,eps,lo,hi,unbounded_below,unbounded_above",
             prefix, s, "esub");
  }
  if (!ctx.cfg.plot_path.empty()) plot_esub_band(ctx, f, at, eps);
  return 0;
}

int cmd_normal(Ctx& ctx, const std::string& set_name, const std::string& at,
               double eps, const std::string& w_text) {
  ctx.load();
  const SetDef& s = ctx.doc.set(set_name);
  if (s.is_polyhedron) {
    if (w_text.empty())
      throw ParseError(0, 0, "polyhedral sets need --w 'wx,wy' for the membership test");
    auto [px, py] = parse_pair(at, "--at");
    auto [wx, wy] = parse_pair(w_text, "--w");
    bool member = enormal2_membership(*s.poly, {px, py}, eps, {wx, wy});
    if (ctx.cfg.format == "text")
      ctx.out << "(" << fmt_num(wx) << "," << fmt_num(wy) << ") "
              << (member ? "is" : "is not") << " eps-normal\n";
    else
      ctx.out << "# x,y,eps,wx,wy,member\n"
              << fmt_num(px) << "," << fmt_num(py) << "," << fmt_num(eps) << ","
              << fmt_num(wx) << "," << fmt_num(wy) << "," << fmt_flag(member) << "\n";
    return 0;
  }
  double x = std::stod(at);
  IntervalSet n = enormal_interval(s.interval, x, eps);
  emit_set(ctx.out, ctx.cfg, "x_bar,eps,lo,hi,unbounded_below,unbounded_above",
           fmt_num(x) + "," + fmt_num(eps) + ",", n, "normal set");
  return 0;
}

int cmd_sumrule(Ctx& ctx, const std::string& fn1, const std::string& fn2, double at,
                double eps, double xi) {
  ctx.load();
  SplitCertificate c =
      sum_rule_decompose(ctx.doc.function(fn1), ctx.doc.function(fn2), at, eps, xi);
  if (ctx.cfg.format == "text")
    ctx.out << "split: eps1=" << fmt_num(c.eps1) << " eps2=" << fmt_num(c.eps2)
            << " xi1=" << fmt_num(c.xi1) << " xi2=" << fmt_num(c.xi2) << "\n";
  else
    ctx.out << "# eps1,eps2,xi1,xi2\n"
            << fmt_num(c.eps1) << "," << fmt_num(c.eps2) << "," << fmt_num(c.xi1)
            << "," << fmt_num(c.xi2) << "\n";
  return 0;
}

int cmd_coderiv(Ctx& ctx, const std::string& set_name, const std::string& at,
                double eps, double v, double u, const std::string& sum_with,
                const std::string& at2, const std::string& intersect_with) {
  ctx.load();
  const SetDef& g = ctx.doc.set(set_name);
  if (!g.is_polyhedron) throw Error("coderiv: '" + set_name + "' is not a polyhedron");

  if (!sum_with.empty()) {
    const SetDef& g2 = ctx.doc.set(sum_with);
    if (!g2.is_polyhedron) throw Error("coderiv: '" + sum_with + "' is not a polyhedron");
    if (at2.empty()) throw ParseError(0, 0, "--sum-with needs --at2 'y1,y2'");
    auto [y1, y2] = parse_pair(at2, "--at2");
    double x_bar = std::stod(at);
    CoderivSplit c = coderiv_sum_decompose(*g.poly, *g2.poly, x_bar, y1, y2, eps, v, u,
                                           ctx.cfg.split_grid);
    if (ctx.cfg.format == "text")
      ctx.out << "split: eps1=" << fmt_num(c.eps1) << " eps2=" << fmt_num(c.eps2)
              << " u1=" << fmt_num(c.u1) << " u2=" << fmt_num(c.u2) << "\n";
    else
      ctx.out << "# eps1,eps2,u1,u2\n"
              << fmt_num(c.eps1) << "," << fmt_num(c.eps2) << "," << fmt_num(c.u1)
              << "," << fmt_num(c.u2) << "\n";
    return 0;
  }

  auto [px, py] = parse_pair(at, "--at");
  if (!intersect_with.empty()) {
    std::vector<VPolyhedron2> graphs{*g.poly};
    std::stringstream names(intersect_with);
    std::string n;
    while (std::getline(names, n, ',')) {
      const SetDef& gi = ctx.doc.set(n);
      if (!gi.is_polyhedron) throw Error("coderiv: '" + n + "' is not a polyhedron");
      graphs.push_back(*gi.poly);
    }
    IntersectionCheck c = coderiv_intersection_check(graphs, {px, py}, eps, v, u,
                                                     ctx.cfg.split_grid);
    if (ctx.cfg.format == "text") {
      ctx.out << "member: " << fmt_flag(c.member);
      if (c.witness) {
        ctx.out << "  witness:";
        for (size_t i = 0; i < c.witness->eps.size(); ++i)
          ctx.out << " (eps=" << fmt_num(c.witness->eps[i])
                  << ", v=" << fmt_num(c.witness->v[i])
                  << ", u=" << fmt_num(c.witness->u[i]) << ")";
      }
      ctx.out << "\n";
    } else {
      ctx.out << "# member,then eps_i,v_i,u_i per graph\n" << fmt_flag(c.member);
      if (c.witness)
        for (size_t i = 0; i < c.witness->eps.size(); ++i)
          ctx.out << "," << fmt_num(c.witness->eps[i]) << ","
                  << fmt_num(c.witness->v[i]) << "," << fmt_num(c.witness->u[i]);
      ctx.out << "\n";
    }
    return 0;
  }

  bool member = ecoderiv_membership(*g.poly, {px, py}, eps, v, u);
  if (ctx.cfg.format == "text")
    ctx.out << "u=" << fmt_num(u) << (member ? " is" : " is not")
            << " in the eps-coderivative\n";
  else
    ctx.out << "# x,y,eps,v,u,member\n"
            << fmt_num(px) << "," << fmt_num(py) << "," << fmt_num(eps) << ","
            << fmt_num(v) << "," << fmt_num(u) << "," << fmt_flag(member) << "\n";
  return 0;
}

int cmd_check_opt(Ctx& ctx, const std::string& fn, const std::string& set_name,
                  double at, double eps) {
  ctx.load();
  const SetDef& s = ctx.doc.set(set_name);
  if (s.is_polyhedron) throw Error("check-opt: the feasible set must be an interval");
  ConstrainedProblem p{ctx.doc.function(fn), s.interval};
  OptimalityCertificate c = optimality_certificate(p, at, eps);
  if (ctx.cfg.format == "text")
    ctx.out << "certificate: eps1=" << fmt_num(c.eps1) << " eps2=" << fmt_num(c.eps2)
            << " xi=" << fmt_num(c.xi) << "\n";
  else
    ctx.out << "# eps1,eps2,xi\n"
            << fmt_num(c.eps1) << "," << fmt_num(c.eps2) << "," << fmt_num(c.xi)
            << "\n";
  return 0;
}

int cmd_value_fn(Ctx& ctx, const std::string& prob, bool has_at, double at) {
  ctx.load();
  ParametricProblem p = ctx.doc.parametric(prob);
  if (has_at) {
    ExtReal v = value_function(p, at);
    if (ctx.cfg.format == "text")
      ctx.out << "m(" << fmt_num(at) << ") = " << fmt_num(v.raw()) << "\n";
    else
      ctx.out << "# x,m\n" << fmt_num(at) << "," << fmt_num(v.raw()) << "\n";
    return 0;
  }
  IntervalSet xr = p.constraint_graph.x_range();
  Interval d1 = p.objective.f1().domain();
  double lo = std::max(std::isfinite(d1.lo()) ? d1.lo() : -8.0,
                       xr.unbounded_below() ? -8.0 : xr.lo());
  double hi = std::min(std::isfinite(d1.hi()) ? d1.hi() : 8.0,
                       xr.unbounded_above() ? 8.0 : xr.hi());
  if (ctx.cfg.format != "text") ctx.out << "# x,m\n";
  PlotSeries curve;
  curve.label = "m(x)";
  for (int i = 0; i < ctx.cfg.value_grid; ++i) {
    double x = lo + (hi - lo) * i / (ctx.cfg.value_grid - 1);
    ExtReal v = value_function(p, x);
    if (ctx.cfg.format == "text")
      ctx.out << "m(" << fmt_num(x) << ") = " << fmt_num(v.raw()) << "\n";
    else
      ctx.out << fmt_num(x) << "," << fmt_num(v.raw()) << "\n";
    if (v.finite()) {
      curve.x.push_back(x);
      curve.y.push_back(v.raw());
    }
  }
  if (!ctx.cfg.plot_path.empty())
    emit_plot(ctx.cfg.plot_path, "optimal value function", {curve});
  return 0;
}

int cmd_sens(Ctx& ctx, const std::string& prob, double at, double eps,
             std::string method, bool has_ybar, double ybar) {
  ctx.load();
  ParametricProblem p = ctx.doc.parametric(prob);
  EtaLadder ladder = EtaLadder::standard(ctx.cfg.eta_depth);

  if (method == "auto") {
    // the constraint is inactive when every slice covers the whole y box
    bool free_constraint = true;
    Interval d1 = p.objective.f1().domain();
    for (int i = 0; i < 5 && free_constraint; ++i) {
      double x = d1.lo() + (d1.hi() - d1.lo()) * i / 4.0;
      IntervalSet gs = p.constraint_graph.slice_at(x);
      Interval d2 = p.objective.f2().domain();
      free_constraint = !gs.is_empty() && gs.contains(d2.lo(), 1e-9) &&
                        gs.contains(d2.hi(), 1e-9);
    }
    method = free_constraint ? "ladder" : "constrained";
  }

  IntervalSet s;
  if (method == "ladder") {
    s = sensitivity_unconstrained(p, at, eps, ladder, ctx.cfg.sens_window);
  } else if (method == "exact") {
    if (!has_ybar) throw ParseError(0, 0, "--method exact needs --ybar");
    s = sensitivity_exact(p, at, eps, ybar);
  } else if (method == "constrained") {
    s = sensitivity_constrained(p, at, eps, ladder, ctx.cfg.split_grid,
                                ctx.cfg.sens_window);
  } else if (method == "direct") {
    s = value_function_esub_direct(p, at, eps, ctx.cfg.value_grid);
  } else {
    throw ParseError(0, 0, "unknown --method '" + method + "'");
  }
  emit_set(ctx.out, ctx.cfg, "x_bar,eps,lo,hi,unbounded_below,unbounded_above",
           fmt_num(at) + "," + fmt_num(eps) + ",", s, "sens(" + method + ")");

  if (!ctx.cfg.plot_path.empty()) {
    // band of the direct-route set against eps
    PlotSeries band;
    band.label = "direct esub band of m";
    band.band = true;
    double top = std::max(1.0, 2 * eps);
    for (int i = 0; i < 17; ++i) {
      double e = top * i / 16.0;
      IntervalSet d = value_function_esub_direct(p, at, e, 257);
      if (d.is_empty()) continue;
      band.x.push_back(e);
      band.y.push_back(d.unbounded_below() ? -20 : d.lo());
      band.y2.push_back(d.unbounded_above() ? 20 : d.hi());
    }
    emit_plot(ctx.cfg.plot_path, "value-function sensitivity band", {band});
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"epsilon-subdifferential calculus for nearly convex problems"};
  app.require_subcommand(1);

  Ctx ctx(out);
  std::string fn, fn2, set_name, prob, at_text, w_text, at2, sum_with, intersect_with;
  std::string method = "auto";
  double at = 0, eps = 0, xi = 0, v = 0, u = 0, ybar = 0;
  bool oracle = false;
  std::string xi_window_text, sens_window_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--file", ctx.file, "problem file (.ncx)");
    cmd->add_option("--format", ctx.cfg.format, "csv or text")
        ->check(CLI::IsMember({"csv", "text"}));
    cmd->add_option("--plot", ctx.cfg.plot_path, "write an SVG plot to this path");
    cmd->add_option("--grid", ctx.cfg.x_grid, "x grid size for oracles")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eta-depth", ctx.cfg.eta_depth, "eta ladder depth")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--xi-window", xi_window_text, "slope window 'a,b'");
  };

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a function");
  add_common(c_eval);
  c_eval->add_option("--fn", fn)->required();
  c_eval->add_option("--at", at)->required();

  CLI::App* c_conj = app.add_subcommand("conjugate", "Legendre-Fenchel conjugate");
  add_common(c_conj);
  c_conj->add_option("--fn", fn)->required();
  c_conj->add_option("--at", at)->required();

  CLI::App* c_esub = app.add_subcommand("esub", "eps-subdifferential interval");
  add_common(c_esub);
  c_esub->add_option("--fn", fn)->required();
  c_esub->add_option("--at", at)->required();
  c_esub->add_option("--eps", eps)->required();
  c_esub->add_flag("--oracle", oracle, "use the brute-force oracle route");

  CLI::App* c_norm = app.add_subcommand("normal", "eps-normal set");
  add_common(c_norm);
  c_norm->add_option("--set", set_name)->required();
  c_norm->add_option("--at", at_text, "point: x, or 'x,y' for polyhedra")->required();
  c_norm->add_option("--eps", eps)->required();
  c_norm->add_option("--w", w_text, "direction 'wx,wy' (polyhedra)");

  CLI::App* c_sum = app.add_subcommand("sumrule", "sum-rule split certificate");
  add_common(c_sum);
  c_sum->add_option("--fn", fn)->required();
  c_sum->add_option("--fn2", fn2)->required();
  c_sum->add_option("--at", at)->required();
  c_sum->add_option("--eps", eps)->required();
  c_sum->add_option("--xi", xi)->required();

  CLI::App* c_cod = app.add_subcommand("coderiv", "eps-coderivative operations");
  add_common(c_cod);
  c_cod->add_option("--set", set_name, "graph polyhedron")->required();
  c_cod->add_option("--at", at_text, "point 'x,y', or x with --sum-with")->required();
  c_cod->add_option("--eps", eps)->required();
  c_cod->add_option("--v", v)->required();
  c_cod->add_option("--u", u)->required();
  c_cod->add_option("--sum-with", sum_with, "second graph: decompose the sum");
  c_cod->add_option("--at2", at2, "'y1,y2' for --sum-with");
  c_cod->add_option("--intersect-with", intersect_with,
                    "comma-separated graphs: intersection membership + witness");

  CLI::App* c_opt = app.add_subcommand("check-opt", "eps-optimality certificate");
  add_common(c_opt);
  c_opt->add_option("--fn", fn)->required();
  c_opt->add_option("--set", set_name)->required();
  c_opt->add_option("--at", at)->required();
  c_opt->add_option("--eps", eps)->required();

  CLI::App* c_val = app.add_subcommand("value-fn", "optimal value function");
  add_common(c_val);
  c_val->add_option("--problem", prob)->required();
  CLI::Option* val_at = c_val->add_option("--at", at);

  CLI::App* c_sens = app.add_subcommand("sens", "value-function sensitivity");
  add_common(c_sens);
  c_sens->add_option("--problem", prob)->required();
  c_sens->add_option("--at", at)->required();
  c_sens->add_option("--eps", eps)->required();
  c_sens->add_option("--method", method,
                     "auto | ladder | exact | constrained | direct");
  CLI::Option* opt_ybar = c_sens->add_option("--ybar", ybar, "exact solution y");

  CLI::App* c_ver = app.add_subcommand("verify", "run the oracle cross-check suites");
  add_common(c_ver);

  std::vector<const char*> argv;
  argv.push_back("nearconvex");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!xi_window_text.empty()) {
      auto [a, b] = parse_pair(xi_window_text, "--xi-window");
      ctx.cfg.xi_window = Interval::closed(a, b);
      ctx.cfg.sens_window = Interval::closed(a, b);
    }
    ctx.cfg.xi_grid = std::max(3, ctx.cfg.xi_grid);

    if (*c_eval) return cmd_eval(ctx, fn, at);
    if (*c_conj) return cmd_conjugate(ctx, fn, at);
    if (*c_esub) return cmd_esub(ctx, fn, at, eps, oracle);
    if (*c_norm) return cmd_normal(ctx, set_name, at_text, eps, w_text);
    if (*c_sum) return cmd_sumrule(ctx, fn, fn2, at, eps, xi);
    if (*c_cod)
      return cmd_coderiv(ctx, set_name, at_text, eps, v, u, sum_with, at2,
                         intersect_with);
    if (*c_opt) return cmd_check_opt(ctx, fn, set_name, at, eps);
    if (*c_val) return cmd_value_fn(ctx, prob, val_at->count() > 0, at);
    if (*c_sens)
      return cmd_sens(ctx, prob, at, eps, method, opt_ybar->count() > 0, ybar);
    if (*c_ver) return verify::run_all(out) ? 0 : 1;
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nearconvex
