#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zetaforge::cli {

/// Exit codes of `run`.
enum Exit { OK = 0, MISMATCH = 1, USAGE = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetaforge::cli
