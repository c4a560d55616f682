#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace peqlab {

enum ExitCode { kOk = 0, kConfigError = 1, kNumericalFailure = 2, kCheckFailure = 3 };

// argv[0] is the program name. Output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peqlab
