#pragma once

// Randomized invariant checks shared by the CLI `verify` command.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tdho {

struct CheckResult {
  std::string name;
  int checked = 0;
  int failed = 0;
  /// Largest violation measure seen, in the check's own units.
  double worst = 0.0;
  double tolerance = 0.0;
  /// First failure, if any.
  std::string detail;

  bool ok() const { return failed == 0 && checked > 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int cycles = 1000;
  int oracle_samples = 60;
  int symplectic = 1000;
  int multimode = 100;
  int forced = 100;
  int inequality_power = 8;
  int inequality_levels = 30;
  unsigned workers = 1;
};

/// One generator per (seed, check, index), so results never depend on the
/// worker count or on which checks run.
std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t check, std::uint64_t index);

CheckResult check_gain_bound(const VerifyOptions& opt);
CheckResult check_closed_form_oracle(const VerifyOptions& opt);
CheckResult check_bogoliubov(const VerifyOptions& opt);
CheckResult check_multimode(const VerifyOptions& opt);
CheckResult check_forced(const VerifyOptions& opt);
CheckResult check_matrix_inequality(const VerifyOptions& opt);

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

}  // namespace tdho
