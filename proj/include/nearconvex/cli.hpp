#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nearconvex/interval.hpp"

namespace nearconvex {

// Knobs shared by the subcommands; every numeric field must stay positive.
struct RunConfig {
  int x_grid = 4001;
  int xi_grid = 2001;
  int value_grid = 1025;
  int eta_depth = 21;
  int split_grid = 129;
  Interval xi_window = Interval::closed(-50, 50);
  Interval sens_window = Interval::closed(-8, 8);
  std::string format = "csv";  // csv | text
  std::string plot_path;
};

// Dispatch one command line (without the program name).  Returns the exit
// code: 0 success, 1 domain errors, 2 parse/validation/usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nearconvex
