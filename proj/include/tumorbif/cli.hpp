#pragma once

#include <iosfwd>

namespace tumorbif {

enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitConfig = 2,
    kExitPositivity = 3,
    kExitRegime = 4,
    kExitNotBifurcation = 5,
};

/// Entry point of the command-line tool. Subcommands: classify, periodic,
/// gamma-table, branches, surface, validate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tumorbif
