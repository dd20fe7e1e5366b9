#pragma once

#include <cstdint>
#include <iosfwd>

namespace sks::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitUsage = 2,
};

/// Runs the skellam-stein command line. Output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sks::cli
