#ifndef SETWL_CLI_HPP
#define SETWL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace setwl {

// Runs one CLI invocation. Returns 0 on success, 2 on usage errors, 1 on
// runtime errors; the distinguish verdict is reported in the JSON only,
// never in the exit status.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace setwl

#endif
