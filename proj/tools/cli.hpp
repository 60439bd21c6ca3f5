#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace endsym::cli {

enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2, verification_failure = 3 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endsym::cli
