#ifndef FOLFORGE_COMMANDS_HPP
#define FOLFORGE_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace folforge {

// Runs one CLI invocation (without the program name) and writes the JSON
// report to `out`.  Returns the process exit code: 0 success, 2 failed
// verification, 3 input error.
int run_command(const std::vector<std::string>& args, std::ostream& out);

} // namespace folforge

#endif
