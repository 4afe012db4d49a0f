#pragma once

#include <ostream>
#include <stdexcept>

namespace tdho::cli {

/// Bad flags, grids or config files. Exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Parses argv, runs one subcommand and writes its table to --output or
/// `out`. Errors go to `err` as a single JSON line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdho::cli
