#include "primebias/reference.hpp"

#include <algorithm>

#include "primebias/errors.hpp"

namespace primebias::reference {

std::vector<std::uint64_t> phi_table(std::uint64_t limit) {
  std::vector<std::uint64_t> phi(limit + 1, 0);
  std::vector<std::uint64_t> primes;
  if (limit >= 1) phi[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (phi[i] == 0) {
      phi[i] = i - 1;
      primes.push_back(i);
    }
    for (const std::uint64_t p : primes) {
      if (p > limit / i) break;
      if (i % p == 0) {
        phi[i * p] = phi[i] * p;
        break;
      }
      phi[i * p] = phi[i] * (p - 1);
    }
  }
  return phi;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; i <= limit / i && j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<CensusResult> census(std::span<const std::int64_t> ks, const CensusScope& scope) {
  scope.validate();
  std::int64_t k_max = 0;
  for (const std::int64_t k : ks) {
    validate_pair_gap(k);
    k_max = std::max(k_max, k);
  }
  const std::uint64_t p_max = scope.largest_p();
  const auto phi = phi_table(p_max + static_cast<std::uint64_t>(k_max));

  std::vector<CensusResult> results;
  for (const std::int64_t k : ks) results.push_back(CensusResult::empty(k, scope));
  for (std::uint64_t p = 2; p <= p_max; ++p) {
    if (phi[p] != p - 1) continue;
    for (std::size_t j = 0; j < ks.size(); ++j) {
      const auto k = static_cast<std::uint64_t>(ks[j]);
      if (phi[p + k] != p + k - 1) continue;
      results[j].record(p, phi[p - 1], phi[p + k - 1]);
    }
  }
  return results;
}

}  // namespace primebias::reference
