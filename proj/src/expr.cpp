#include "nearconvex/expr.hpp"

#include <cmath>

#include "nearconvex/config.hpp"
#include "nearconvex/errors.hpp"
#include "nearconvex/numfmt.hpp"

namespace nearconvex {

Expr Expr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->c = c;
  return Expr(n);
}

Expr Expr::var() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  return Expr(n);
}

Expr Expr::add(const Expr& a, const Expr& b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(n);
}

Expr Expr::scale(double c, const Expr& a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->c = c;
  n->a = a.node_;
  return Expr(n);
}

Expr Expr::abs(const Expr& a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->a = a.node_;
  return Expr(n);
}

Expr Expr::sq(const Expr& a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sq;
  n->a = a.node_;
  return Expr(n);
}

Expr Expr::sqrt(const Expr& a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sqrt;
  n->a = a.node_;
  return Expr(n);
}

Expr Expr::neg(const Expr& a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->a = a.node_;
  return Expr(n);
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::coeff() const { return node_->c; }
Expr Expr::child() const { return Expr(node_->a); }
Expr Expr::left() const { return Expr(node_->a); }
Expr Expr::right() const { return Expr(node_->b); }

static double eval_node(const Expr::Node* n, double x) {
  switch (n->kind) {
    case Expr::Kind::Const:
      return n->c;
    case Expr::Kind::Var:
      return x;
    case Expr::Kind::Add:
      return eval_node(n->a.get(), x) + eval_node(n->b.get(), x);
    case Expr::Kind::Scale:
      return n->c * eval_node(n->a.get(), x);
    case Expr::Kind::Abs:
      return std::abs(eval_node(n->a.get(), x));
    case Expr::Kind::Sq: {
      double v = eval_node(n->a.get(), x);
      return v * v;
    }
    case Expr::Kind::Sqrt: {
      double v = eval_node(n->a.get(), x);
      if (v < -TOL_EQ) throw EvalDomainError("sqrt of negative value " + fmt_num(v));
      return std::sqrt(std::max(0.0, v));
    }
    case Expr::Kind::Neg:
      return -eval_node(n->a.get(), x);
  }
  return 0.0;
}

double Expr::eval(double x) const { return eval_node(node_.get(), x); }

static std::string str_node(const Expr::Node* n) {
  switch (n->kind) {
    case Expr::Kind::Const:
      return fmt_num(n->c);
    case Expr::Kind::Var:
      return "x";
    case Expr::Kind::Add:
      return "(" + str_node(n->a.get()) + " + " + str_node(n->b.get()) + ")";
    case Expr::Kind::Scale:
      return fmt_num(n->c) + "*(" + str_node(n->a.get()) + ")";
    case Expr::Kind::Abs:
      return "abs(" + str_node(n->a.get()) + ")";
    case Expr::Kind::Sq:
      return "(" + str_node(n->a.get()) + ")^2";
    case Expr::Kind::Sqrt:
      return "sqrt(" + str_node(n->a.get()) + ")";
    case Expr::Kind::Neg:
      return "-(" + str_node(n->a.get()) + ")";
  }
  return "";
}

std::string Expr::str() const { return str_node(node_.get()); }

}  // namespace nearconvex
