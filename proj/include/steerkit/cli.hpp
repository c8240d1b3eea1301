#pragma once

#include <iosfwd>

namespace steerkit::cli {

enum ExitCode : int { kOk = 0, kConfig = 2, kSolver = 3, kDomain = 4 };

/// Runs the command line tool with stdout/stderr replaced by `out`/`err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace steerkit::cli
