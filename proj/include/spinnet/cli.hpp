#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinnet::cli {

enum exit_code : int { ok = 0, domain = 1, schema = 2, resource = 3 };

// Runs one command line (without the program name). Results go to out,
// diagnostics and --timings to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace spinnet::cli
