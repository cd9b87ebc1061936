#ifndef PATHCODE_TOOLS_CLI_H_
#define PATHCODE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace pathcode {

// Runs the command line `args` (without the program name). Returns the
// process exit code: 0 success, 2 input error, 3 internal invariant failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace pathcode

#endif  // PATHCODE_TOOLS_CLI_H_
