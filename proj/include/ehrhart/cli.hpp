#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ehrhart::cli {

/// Process exit codes.
enum ExitCode : int {
    Success = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    BudgetRefused = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ehrhart::cli
