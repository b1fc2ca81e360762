#pragma once

namespace nearconvex {

// Tolerance constants shared across the library.  TOL_EQ governs set-endpoint
// and membership comparisons, TOL_EVAL governs raw arithmetic agreement
// (piece continuity, vertex dedup, point snapping).
inline constexpr double TOL_EQ = 1e-9;
inline constexpr double TOL_EVAL = 1e-12;

// Half-width of the slope window searched when locating subgradients or
// conjugate suprema.  Sets that extend past it are reported as clipped.
inline constexpr double XI_SEARCH_BOUND = 1e9;

// Probe abscissa used to tell an attained asymptote from a strictly
// decreasing one when classifying unbounded subdifferential sides.
inline constexpr double XI_ATTAIN_PROBE = 1e7;

// Conjugate values above this cap are reported as +infinity.
inline constexpr double CONJ_VALUE_CAP = 1e15;

// Clamp applied to unbounded domains before grid scans.
inline constexpr double GRID_CLAMP = 1e3;

}  // namespace nearconvex
