#pragma once

#include <cstdint>
#include <random>

#include "nearconvex/fn1d.hpp"

namespace nearconvex {

// Deterministic uniform helpers on top of mt19937_64.  The standard
// distributions are implementation-defined, and byte-identical verify
// reports need reproducible draws everywhere.
inline double rng_u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}
inline double rng_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * rng_u01(rng);
}
inline int rng_int(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

// A random member of the expression catalog restricted to convex shapes on
// a random bounded domain, possibly split into two pieces and possibly
// carrying a boundary value lift (occasionally an infinite one, removing
// the point).
NearlyConvexFn1D random_catalog_fn(std::mt19937_64& rng);

// A point of ri(dom f), away from the endpoints.
double random_ri_point(const NearlyConvexFn1D& f, std::mt19937_64& rng);

}  // namespace nearconvex
