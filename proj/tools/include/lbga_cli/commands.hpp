#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lbga::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point behind the `lbga` binary. `args` excludes the program name.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lbga::cli
