#ifndef DEPCAM_CLI_HPP
#define DEPCAM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace depcam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point for the `depcam` tool. args[0] is the program name. Data goes
// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace depcam::cli

#endif  // DEPCAM_CLI_HPP
