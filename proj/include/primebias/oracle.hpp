#pragma once

// Brute-force reference for the pair census. Written independently of the
// sieve code: primality by trial division, totients by counting gcd = 1 or
// by trial-division factorization, signs by direct comparison.

#include <cstdint>
#include <vector>

#include "primebias/pair_census.hpp"

namespace primebias::oracle {

enum class Totient { gcd_count, trial_division };

bool is_prime(std::uint64_t n);
std::uint64_t totient_gcd_count(std::uint64_t n);
std::uint64_t totient_trial_division(std::uint64_t n);
/// Set of distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Primes p <= x with p + k prime.
std::vector<std::uint64_t> pairs_up_to(std::uint64_t k, std::uint64_t x);

/// Census over the given ascending p list (each p and p + k must be prime).
CensusResult census_of(std::int64_t k, const CensusScope& scope,
                       const std::vector<std::uint64_t>& pairs, Totient method);

CensusResult census_up_to(std::int64_t k, std::uint64_t x, Totient method);

}  // namespace primebias::oracle
