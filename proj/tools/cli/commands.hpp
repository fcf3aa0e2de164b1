#pragma once

// The bregproj command line, callable in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace bregproj::cli {

enum ExitCode : int { ok = 0, assertion_failed = 1, usage_error = 2, infeasible = 3 };

/// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bregproj::cli
