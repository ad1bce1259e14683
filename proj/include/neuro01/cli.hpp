#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace neuro01::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kBadFlags = 2,
    kDataError = 3,
    kConfigError = 4,
};

/// Runs the command line `args` (args[0] is the program name). Regular output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

} // namespace neuro01::cli
