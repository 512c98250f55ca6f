#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rootpack {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_negative = 1, // infeasible, invalid packing or oracle disagreement
    exit_usage = 2,    // usage, parse or spec errors
    exit_cap = 3,      // an enumeration or search cap was exceeded
    exit_internal = 4, // an internal consistency assertion failed
};

/// Runs the CLI on `args` (without the program name). Reports go to `out` unless
/// --json-out is given; messages go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rootpack
