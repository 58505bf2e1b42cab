#pragma once

// The project's acceptance criteria as runnable checks. Shared by the
// `acceptance` test binary and `primebias verify`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "primebias/bias_constants.hpp"

namespace primebias {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  /// Also run the full-scale census over the first 2e7 primes.
  bool include_extended = false;
  /// Run only the full-scale census.
  bool extended_only = false;
  int threads = 1;
  std::uint64_t r_cutoff = default_r_cutoff;
  std::uint64_t euler_cutoff = default_euler_cutoff;
  /// Per-criterion lines are written here as they finish, when set.
  std::ostream* log = nullptr;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS [3] name (1.2 s): detail"
std::string format_result(const CriterionResult& result);

}  // namespace primebias
