#include "nearconvex/catalog.hpp"

#include <cmath>

#include "nearconvex/config.hpp"

namespace nearconvex {

namespace {

Expr random_convex_atom(std::mt19937_64& rng, double a, double b) {
  switch (rng_int(rng, 6)) {
    case 0:  // c * x^2
      return Expr::scale(rng_range(rng, 0.1, 2.0), Expr::sq(Expr::var()));
    case 1: {  // c * |x - s|
      double s = rng_range(rng, a, b);
      return Expr::scale(rng_range(rng, 0.1, 2.0),
                         Expr::abs(Expr::add(Expr::var(), Expr::constant(-s))));
    }
    case 2:  // linear
      return Expr::scale(rng_range(rng, -1.5, 1.5), Expr::var());
    case 3:  // constant
      return Expr::constant(rng_range(rng, -1.0, 1.0));
    case 4:  // -c * sqrt(x - a), convex decreasing
      return Expr::neg(Expr::scale(
          rng_range(rng, 0.2, 1.2),
          Expr::sqrt(Expr::add(Expr::var(), Expr::constant(-a)))));
    default:  // -c * sqrt(b - x), convex increasing
      return Expr::neg(Expr::scale(
          rng_range(rng, 0.2, 1.2),
          Expr::sqrt(Expr::add(Expr::constant(b), Expr::neg(Expr::var())))));
  }
}

}  // namespace

NearlyConvexFn1D random_catalog_fn(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    double a = rng_range(rng, -3.0, 0.0);
    double b = a + rng_range(rng, 0.5, 4.0);
    Expr e = random_convex_atom(rng, a, b);
    int extra = rng_int(rng, 3);
    for (int i = 0; i < extra; ++i) e = Expr::add(e, random_convex_atom(rng, a, b));

    std::vector<Piece> pieces;
    if (rng_int(rng, 3) == 0) {
      double mid = rng_range(rng, a + 0.2 * (b - a), b - 0.2 * (b - a));
      pieces.push_back({Interval::closed(a, mid), e});
      pieces.push_back({Interval::closed(mid, b), e});
    } else {
      pieces.push_back({Interval::closed(a, b), e});
    }

    std::map<double, double> overrides;
    if (rng_int(rng, 5) < 2) {
      double p = rng_int(rng, 2) == 0 ? a : b;
      double lift = rng_range(rng, 0.05, 2.0);
      overrides[p] = rng_int(rng, 10) == 0
                         ? pos_inf()
                         : e.eval(p) + lift;
    }

    NearlyConvexFn1D f(Interval::closed(a, b), std::move(pieces), std::move(overrides));
    if (f.validate(257).valid) return f;
  }
  // the atoms are convex by construction, so this is unreachable in practice
  return NearlyConvexFn1D(Interval::closed(0, 1),
                          {Piece{Interval::closed(0, 1), Expr::sq(Expr::var())}});
}

double random_ri_point(const NearlyConvexFn1D& f, std::mt19937_64& rng) {
  double a = f.closure_lo();
  double b = f.closure_hi();
  return a + (b - a) * rng_range(rng, 0.15, 0.85);
}

}  // namespace nearconvex
