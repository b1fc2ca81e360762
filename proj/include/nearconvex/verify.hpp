#pragma once

#include <ostream>

namespace nearconvex::verify {

// Runs the oracle cross-check and property suites, printing one pass/fail
// row per suite.  Deterministic: fixed seeds, fixed grids, fixed formats.
// Returns true iff every suite passed.
bool run_all(std::ostream& out);

}  // namespace nearconvex::verify
