#ifndef IUG_TOOLS_CLI_HPP
#define IUG_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace iug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPropertyFailure = 2;

/// Runs the command line `args` (args[0] is the program name). Reports go
/// to `out` (or --output), JSON diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iug::cli

#endif  // IUG_TOOLS_CLI_HPP
