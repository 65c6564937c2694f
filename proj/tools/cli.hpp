#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exmax::cli {

enum ExitCode { kOk = 0, kUsage = 2, kInconsistent = 3 };

/// args excludes the program name. Exit codes: 0 ok, 2 usage, 3 inconsistency.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exmax::cli
