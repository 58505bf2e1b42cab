#pragma once

// Serial, whole-range reference implementations. They trade memory for
// simplicity (one table covering [0, limit]) and exist to cross-check the
// windowed OpenMP kernels in tests and benchmarks.

#include <cstdint>
#include <span>
#include <vector>

#include "primebias/pair_census.hpp"

namespace primebias::reference {

/// phi(n) for n in [0, limit] by a linear smallest-prime-factor sieve; entry 0 is 0.
std::vector<std::uint64_t> phi_table(std::uint64_t limit);

/// Unsegmented sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Single-threaded census over a full phi table.
std::vector<CensusResult> census(std::span<const std::int64_t> ks, const CensusScope& scope);

}  // namespace primebias::reference
