#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zipstrata::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kCheckFailed = 4 };

/// Runs one command. args excludes the program name. Results go to out (or to
/// the --out file, written atomically); diagnostics and progress go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes text to path through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& text);

}  // namespace zipstrata::cli
