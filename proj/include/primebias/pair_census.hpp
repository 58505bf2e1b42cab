#pragma once

// Prime pairs p, p + k and the signs of
//   T(p) = phi(p - 1) - phi(p + k - 1)
//   S(p) = phi(p - 1) / (p - 1) - phi(p + k - 1) / (p + k - 1).
//
// Every sign is decided in integers. The scans are split into windows of p
// that are processed in parallel; per-window tallies are merged in window
// order, so results do not depend on the thread count or the window length.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primebias/prime_engine.hpp"

namespace primebias {

enum class ScopeMode { up_to_x, first_n_primes };

struct CensusScope {
  ScopeMode mode = ScopeMode::up_to_x;
  std::uint64_t bound = 3;

  static CensusScope up_to(std::uint64_t x) { return {ScopeMode::up_to_x, x}; }
  static CensusScope first_primes(std::uint64_t n) { return {ScopeMode::first_n_primes, n}; }

  void validate() const;
  /// Largest p admitted by the scope (x itself, or the bound-th prime).
  std::uint64_t largest_p() const;

  friend bool operator==(const CensusScope&, const CensusScope&) = default;
};

const char* to_string(ScopeMode mode);

/// Throws DomainError unless k is even and positive.
void validate_pair_gap(std::int64_t k);

inline int sign(std::int64_t v) { return (v > 0) - (v < 0); }

/// Sign of S(p) from cross-multiplied 128-bit products.
int s_sign(std::uint64_t p, std::uint64_t k, std::uint64_t phi_lower, std::uint64_t phi_upper);

struct CensusResult {
  std::int64_t k = 2;
  CensusScope scope;
  std::uint64_t pair_count = 0;
  std::uint64_t t_neg = 0, t_zero = 0, t_pos = 0;
  std::uint64_t s_neg = 0, s_zero = 0, s_pos = 0;
  std::uint64_t st_agree = 0;

  static CensusResult empty(std::int64_t k, const CensusScope& scope) {
    CensusResult r;
    r.k = k;
    r.scope = scope;
    return r;
  }

  /// Tallies one pair given phi(p - 1) and phi(p + k - 1).
  void record(std::uint64_t p, std::uint64_t phi_lower, std::uint64_t phi_upper);

  /// Componentwise sum; k and scope must match.
  CensusResult& operator+=(const CensusResult& other);

  friend bool operator==(const CensusResult&, const CensusResult&) = default;
};

/// Divisibility hypotheses for restricted censuses: every q divides
/// p - 1 + tau_k and r (when present) divides p - 1 + (k - tau_k).
struct ConstraintSpec {
  std::vector<std::uint64_t> q_divisors;
  std::optional<std::uint64_t> r_divisor;
  std::uint64_t tau_k = 0;

  /// Throws ConstraintError naming the first prime that breaks the hypotheses.
  void validate(std::int64_t k) const;
  bool admits(std::uint64_t p, std::uint64_t k) const;
};

struct CensusOptions {
  std::size_t segment_length = default_segment_length;
  int threads = 1;
  /// Called with (windows finished, windows total); may run on any worker.
  std::function<void(std::size_t, std::size_t)> progress;
};

struct DivisibilityCount {
  std::uint64_t divisible = 0;
  std::uint64_t pair_count = 0;

  double fraction() const {
    return pair_count == 0 ? 0.0 : static_cast<double>(divisible) / static_cast<double>(pair_count);
  }
  friend bool operator==(const DivisibilityCount&, const DivisibilityCount&) = default;
};

struct SmoothPairReport {
  /// Pairs with both p - 1 and p + k - 1 free of prime factors above k.
  std::vector<std::uint64_t> candidates;
  /// The subset with S(p) = 0.
  std::vector<std::uint64_t> s_zero;
};

std::vector<std::uint64_t> enumerate_pairs(std::int64_t k, const CensusScope& scope,
                                           const CensusOptions& options = {});

CensusResult census(std::int64_t k, const CensusScope& scope, const CensusOptions& options = {});

/// One pass over the scope for several gaps at once; results follow `ks`.
std::vector<CensusResult> census(std::span<const std::int64_t> ks, const CensusScope& scope,
                                 const CensusOptions& options = {});

CensusResult constrained_census(std::int64_t k, const CensusScope& scope,
                                const ConstraintSpec& constraints,
                                const CensusOptions& options = {});

/// Pairs with 2^ell | T(p) (T(p) = 0 included) against all pairs in scope.
DivisibilityCount divisibility_census(std::int64_t k, const CensusScope& scope, unsigned ell,
                                      const CensusOptions& options = {});

SmoothPairReport smooth_pair_search(std::int64_t k, std::uint64_t search_limit,
                                    const CensusOptions& options = {});

/// First-order Bateman-Horn prediction C_k x / (log x)^2.
long double predicted_count(std::int64_t k, long double x, long double c_k);

std::string census_csv_header();
std::string to_csv_row(const CensusResult& result);

}  // namespace primebias
