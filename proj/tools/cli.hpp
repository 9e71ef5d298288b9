#pragma once

#include <string>
#include <vector>

namespace polsim::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAboveThreshold = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitNumeric = 4;

/// Run the polsim command line. `args` excludes the program name. Output
/// files are deterministic for a fixed config: provenance headers carry the
/// config hash and defaulted keys, never wall-clock content.
int run(const std::vector<std::string>& args);

}  // namespace polsim::cli
