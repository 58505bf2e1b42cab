#include "primebias/prime_engine.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "primebias/errors.hpp"
#include "primebias/kernels.hpp"

namespace primebias {

void SieveConfig::validate() const {
  if (limit < 2) throw DomainError("sieve limit must be at least 2");
  if (segment_length < min_segment_length) {
    throw DomainError("segment length must be at least " + std::to_string(min_segment_length));
  }
  if (segment_length > limit) throw DomainError("segment length exceeds sieve limit");
}

SieveConfig SieveConfig::covering(std::uint64_t limit, std::size_t segment_length) {
  SieveConfig config;
  config.limit = std::max<std::uint64_t>(limit, min_segment_length);
  config.segment_length =
      static_cast<std::size_t>(std::min<std::uint64_t>(segment_length, config.limit));
  config.validate();
  return config;
}

std::uint64_t Factorization::radical() const {
  std::uint64_t r = 1;
  for (const auto& f : factors) r *= f.prime;
  return r;
}

std::uint64_t Factorization::product() const {
  std::uint64_t r = 1;
  for (const auto& f : factors) {
    for (unsigned e = 0; e < f.exponent; ++e) r *= f.prime;
  }
  return r;
}

std::uint64_t PrimeWindow::count() const {
  std::uint64_t total = 0;
  for (const std::uint64_t word : bits_) total += static_cast<std::uint64_t>(std::popcount(word));
  return total;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

namespace detail {

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i) {
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
  }
  return primes;
}

void sieve_segment(std::uint64_t lo, std::span<std::uint8_t> flags,
                   std::span<const std::uint64_t> base_primes) {
  const std::uint64_t hi = lo + flags.size();
  for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n) flags[n - lo] = 0;
  for (const std::uint64_t q : base_primes) {
    if (q > (hi - 1) / q) break;
    std::uint64_t start = std::max(q * q, ((lo + q - 1) / q) * q);
    for (std::uint64_t m = start; m < hi; m += q) flags[m - lo] = 0;
  }
}

}  // namespace detail

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, std::uint64_t max_limit) {
  if (limit < 2) throw EmptyRangeError("no primes below 2");
  if (limit > max_limit) {
    throw CapacityError("prime limit " + std::to_string(limit) + " exceeds configured maximum " +
                        std::to_string(max_limit));
  }
  std::vector<std::uint64_t> primes;
  if (limit >= 100) {
    const auto l = static_cast<double>(limit);
    // pi(x) < 1.26 x / ln x for x > 1.
    primes.reserve(static_cast<std::size_t>(1.26 * l / std::log(l)) + 16);
  }
  for_each_prime(2, limit + 1, [&](std::uint64_t p) { primes.push_back(p); });
  return primes;
}

std::uint64_t nth_prime_upper_bound(std::uint64_t n) {
  static constexpr std::array<std::uint64_t, 6> table{0, 2, 3, 5, 7, 11};
  if (n == 0) throw EmptyRangeError("there is no 0th prime");
  if (n < table.size()) return table[n];
  const auto x = static_cast<long double>(n);
  const long double bound = x * (std::log(x) + std::log(std::log(x)));
  return static_cast<std::uint64_t>(std::ceil(bound));
}

std::uint64_t nth_prime(std::uint64_t n) {
  const std::uint64_t bound = nth_prime_upper_bound(n);
  if (bound > default_max_limit) throw CapacityError("n-th prime beyond supported range");
  std::uint64_t seen = 0;
  std::uint64_t found = 0;
  // The segmented walk has no early exit, so count segment by segment.
  const std::uint64_t step = std::uint64_t{1} << 22;
  for (std::uint64_t lo = 2; lo <= bound && found == 0; lo += step) {
    const std::uint64_t hi = std::min(bound + 1, lo + step);
    for_each_prime(lo, hi, [&](std::uint64_t p) {
      if (++seen == n) found = p;
    });
  }
  return found;
}

std::vector<std::uint64_t> first_n_primes(std::uint64_t n) {
  if (n == 0) throw EmptyRangeError("first_n_primes requires n >= 1");
  auto primes = primes_up_to(nth_prime_upper_bound(n));
  primes.resize(n);
  return primes;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factorize 0");
  Factorization result;
  result.n = n;
  auto strip = [&](std::uint64_t d) {
    if (n % d != 0) return;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    result.factors.push_back({d, e});
  };
  strip(2);
  strip(3);
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (n > 1) result.factors.push_back({n, 1});
  return result;
}

std::uint64_t phi(std::uint64_t n) {
  if (n == 0) throw DomainError("phi(0) is undefined");
  std::uint64_t result = n;
  for (const auto& f : factorize(n).factors) result = result / f.prime * (f.prime - 1);
  return result;
}

namespace {

void check_window(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 1) throw DomainError("window must start at 1 or above");
  if (hi <= lo) throw EmptyRangeError("empty window");
  if (hi - lo > max_window_length) {
    throw CapacityError("window of " + std::to_string(hi - lo) + " integers exceeds capacity " +
                        std::to_string(max_window_length));
  }
  if (hi - 1 > default_max_limit) throw CapacityError("window beyond supported range");
}

}  // namespace

PhiWindow phi_window(std::uint64_t lo, std::uint64_t hi) {
  check_window(lo, hi);
  const auto base = detail::small_primes(isqrt(hi - 1));
  return phi_window(lo, hi, base);
}

PhiWindow phi_window(std::uint64_t lo, std::uint64_t hi,
                     std::span<const std::uint64_t> base_primes) {
  check_window(lo, hi);
  const std::uint64_t root = isqrt(hi - 1);
  // The list is complete iff no prime lies in (back, root]; the scan stops at
  // the first prime found, so it is short either way.
  for (std::uint64_t n = base_primes.empty() ? 2 : base_primes.back() + 1; n <= root; ++n) {
    if (is_prime(n)) throw DomainError("base primes do not reach sqrt(hi - 1)");
  }
  std::vector<std::uint64_t> values(hi - lo);
  std::vector<std::uint64_t> scratch(hi - lo);
  kernels::fill_phi(lo, values, scratch, base_primes);
  return PhiWindow(lo, std::move(values));
}

PrimeWindow prime_window(std::uint64_t lo, std::uint64_t hi) {
  check_window(lo, hi);
  const auto base = detail::small_primes(isqrt(hi - 1));
  std::vector<std::uint8_t> flags(hi - lo, 1);
  detail::sieve_segment(lo, flags, base);
  std::vector<std::uint64_t> bits((flags.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) bits[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return PrimeWindow(lo, hi, std::move(bits));
}

}  // namespace primebias
