#pragma once

// Command-line front end. Every run produces a JSON report (command echo,
// tool version, hashed inputs, outputs, verification summary, wall time).

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace succinct {

inline constexpr const char* kToolVersion = "0.1.0";
/// Default for --budget when the flag is absent.
inline constexpr const char* kBudgetEnv = "SUCCINCT_BUDGET";
/// Directory searched for machine names that are not existing paths.
inline constexpr const char* kZooEnv = "SUCCINCT_ZOO";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;  // bad arguments or parameters outside a domain
inline constexpr int kExitParse = 3;  // unreadable or malformed input file
inline constexpr int kExitFailed = 4; // some verification failed or gave up

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
};

/// `args` excludes the program name. Human-readable output (or the report
/// with --format json) goes to `out`, diagnostics to `err`.
CommandResult run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace succinct
