#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwalk::cli {

/// Options shared by the qwalk subcommands, after flag parsing.
struct run_config {
  std::string expr_text;          // DSL expression or @file for a 0/1 matrix
  int start = 0;                  // start vertex
  double class_tol = 0;           // eigenvalue grouping tolerance; 0 = auto
  double horizon = 0;             // oracle averaging horizon T; 0 = auto
  std::string oracle = "analytic";  // analytic | quadrature
  std::string format = "json";      // json | csv | table
  double threshold = 4.0;         // classify: bounded-ratio threshold
  bool require_connected = false;
  int size_cap = 4096;            // dense-size guard, env QWALK_SIZE_CAP
  std::string range;              // classify: first:last[:step] for the n sweep
};

/// Parse argv and dispatch to a subcommand, writing results to `out` and
/// errors to `err`.  Exit codes: 0 success, 1 error, 2 closed-form fallback
/// (verify only: a formula's preconditions failed and the projector engine
/// carried the check).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
