#include "primebias/oracle.hpp"

#include <numeric>

namespace primebias::oracle {

__extension__ typedef unsigned __int128 u128;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t totient_gcd_count(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    if (std::gcd(i, n) == 1) ++count;
  }
  return count;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t totient_trial_division(std::uint64_t n) {
  std::uint64_t result = n;
  for (const std::uint64_t q : prime_divisors(n)) result -= result / q;
  return result;
}

std::vector<std::uint64_t> pairs_up_to(std::uint64_t k, std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (is_prime(p) && is_prime(p + k)) out.push_back(p);
  }
  return out;
}

CensusResult census_of(std::int64_t k, const CensusScope& scope,
                       const std::vector<std::uint64_t>& pairs, Totient method) {
  CensusResult r;
  r.k = k;
  r.scope = scope;
  const auto uk = static_cast<std::uint64_t>(k);
  for (const std::uint64_t p : pairs) {
    const std::uint64_t a = method == Totient::gcd_count ? totient_gcd_count(p - 1)
                                                         : totient_trial_division(p - 1);
    const std::uint64_t b = method == Totient::gcd_count ? totient_gcd_count(p + uk - 1)
                                                         : totient_trial_division(p + uk - 1);
    r.pair_count += 1;
    if (a < b) {
      r.t_neg += 1;
    } else if (a == b) {
      r.t_zero += 1;
    } else {
      r.t_pos += 1;
    }
    // a/(p-1) against b/(p+k-1)
    const auto lhs = static_cast<u128>(a) * (p + uk - 1);
    const auto rhs = static_cast<u128>(b) * (p - 1);
    if (lhs < rhs) {
      r.s_neg += 1;
    } else if (lhs == rhs) {
      r.s_zero += 1;
    } else {
      r.s_pos += 1;
    }
    if ((a < b && lhs < rhs) || (a > b && lhs > rhs)) r.st_agree += 1;
  }
  return r;
}

CensusResult census_up_to(std::int64_t k, std::uint64_t x, Totient method) {
  return census_of(k, CensusScope::up_to(x), pairs_up_to(static_cast<std::uint64_t>(k), x),
                   method);
}

}  // namespace primebias::oracle
