#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logdec::cli {

// Exit codes of the ld tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // an explicitly requested check failed
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitSemantic = 4;
inline constexpr int kExitCapExceeded = 5;

/// Runs one ld invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics and warnings to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace logdec::cli
