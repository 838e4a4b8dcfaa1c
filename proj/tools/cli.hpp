#pragma once

#include <iosfwd>

namespace zerotherm {

// Full command-line entry point (argv[0] included); returns the process exit
// code: 0 ok, 1 self-check failure, 2 config error, 3 numerical non-convergence.
int run_cli(int argc, const char* const* argv);

// The `check` subcommand body: prints one pass/fail line per named invariant.
bool run_invariant_suite(std::ostream& out);

}  // namespace zerotherm
