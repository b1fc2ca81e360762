#pragma once

#include <memory>
#include <string>

namespace nearconvex {

// A closed catalog of expression nodes over one real variable:
//   const(c) | var | add(a,b) | scale(c,a) | abs(a) | sq(a) | sqrt(a) | neg(a)
// Nodes are immutable and shared; copies are cheap.
class Expr {
 public:
  enum class Kind { Const, Var, Add, Scale, Abs, Sq, Sqrt, Neg };

  struct Node {
    Kind kind;
    double c = 0.0;
    std::shared_ptr<const Node> a, b;
  };

  static Expr constant(double c);
  static Expr var();
  static Expr add(const Expr& a, const Expr& b);
  static Expr scale(double c, const Expr& a);
  static Expr abs(const Expr& a);
  static Expr sq(const Expr& a);
  static Expr sqrt(const Expr& a);
  static Expr neg(const Expr& a);

  Kind kind() const;
  double coeff() const;  // Const / Scale payload
  Expr child() const;    // unary / Scale operand
  Expr left() const;     // Add operands
  Expr right() const;

  // Arithmetic evaluation; throws EvalDomainError on sqrt of a negative
  // argument (below -TOL_EQ; tiny negatives round to zero).
  double eval(double x) const;

  // Canonical infix form accepted back by the problem-file parser.
  std::string str() const;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace nearconvex
