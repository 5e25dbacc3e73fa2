#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace pms::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line (without the program name). Output documents go to
/// `out` or the --out file, diagnostics and witnesses to `err`.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pms::cli
