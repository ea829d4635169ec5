#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smcalg_cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kParseError = 2, kBudget = 3 };

/// Runs one command line. `in` feeds `check` when no input file is named.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace smcalg_cli
