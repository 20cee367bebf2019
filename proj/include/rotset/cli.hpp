#ifndef ROTSET_CLI_HPP
#define ROTSET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rotset {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitAbsent = 1, kExitBadInput = 2 };

/// Runs the command line `args` (without the program name), writing the
/// report to `out` or to --json FILE, and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotset

#endif  // ROTSET_CLI_HPP
