#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evcalc {

// Runs one evcalc command (args exclude the program name) writing to the
// given streams.  Returns the process exit code: 0 success (including law
// violations found by `verify` -- those are findings, not failures), 1
// validation/conflict errors, 2 parse errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evcalc
