#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nopx {

// Runs one CLI invocation (args excludes the program name) against the given
// output/error streams. Returns the process exit code: 0 on success, 1 on
// usage/config/validation problems, 2 on I/O failures.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nopx
