#pragma once

// Prime generation, factorization and Euler totient evaluation.
//
// Everything here is exact 64-bit integer arithmetic. The windowed entry
// points (phi_window, prime_window) are the building blocks of the pair
// census; see kernels.hpp for the buffer-reusing form used inside the
// parallel scans.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace primebias {

inline constexpr std::uint64_t default_max_limit = std::uint64_t{1} << 40;
inline constexpr std::size_t default_segment_length = std::size_t{1} << 20;
inline constexpr std::size_t min_segment_length = 64;
/// Largest window a single phi_window / prime_window call will allocate.
inline constexpr std::size_t max_window_length = std::size_t{1} << 24;

struct SieveConfig {
  std::uint64_t limit = 2;
  std::size_t segment_length = default_segment_length;

  /// Throws DomainError unless 2 <= limit, 64 <= segment_length <= limit.
  void validate() const;

  /// Config covering [1, limit] with the requested segment length, shrunk to
  /// fit when limit is small.
  static SieveConfig covering(std::uint64_t limit,
                              std::size_t segment_length = default_segment_length);
};

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes

  std::uint64_t largest_prime() const { return factors.empty() ? 1 : factors.back().prime; }
  std::uint64_t radical() const;
  /// Multiplies the factors back together; used by tests and debug checks.
  std::uint64_t product() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// phi(n) for every n in [lo, hi).
class PhiWindow {
 public:
  PhiWindow(std::uint64_t lo, std::vector<std::uint64_t> values)
      : lo_(lo), values_(std::move(values)) {}

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return lo_ + values_.size(); }
  std::size_t size() const { return values_.size(); }
  bool contains(std::uint64_t n) const { return n >= lo_ && n < hi(); }

  /// phi(n); n must lie in the window.
  std::uint64_t operator()(std::uint64_t n) const { return values_[n - lo_]; }
  std::span<const std::uint64_t> values() const { return values_; }

 private:
  std::uint64_t lo_;
  std::vector<std::uint64_t> values_;
};

/// Primality bitmap for [lo, hi).
class PrimeWindow {
 public:
  PrimeWindow(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> bits)
      : lo_(lo), hi_(hi), bits_(std::move(bits)) {}

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  bool contains(std::uint64_t n) const { return n >= lo_ && n < hi_; }
  bool is_prime(std::uint64_t n) const {
    const std::uint64_t i = n - lo_;
    return (bits_[i >> 6] >> (i & 63)) & 1U;
  }
  std::uint64_t count() const;

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint64_t> bits_;
};

/// All primes <= limit in ascending order.
/// Throws EmptyRangeError for limit < 2 and CapacityError above max_limit.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit,
                                        std::uint64_t max_limit = default_max_limit);

/// Calls fn(p) for every prime p in [lo, hi), ascending. Memory use is one
/// segment regardless of the range length.
template <typename Fn>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn);

/// Upper bound on the n-th prime: table for n < 6, n(ln n + ln ln n) above.
std::uint64_t nth_prime_upper_bound(std::uint64_t n);

/// The n-th prime (p_1 = 2), found by counting rather than storing.
std::uint64_t nth_prime(std::uint64_t n);

/// The first n primes. Throws EmptyRangeError for n = 0.
std::vector<std::uint64_t> first_n_primes(std::uint64_t n);

/// Deterministic trial division.
bool is_prime(std::uint64_t n);

Factorization factorize(std::uint64_t n);

/// Euler's totient via factorize. Throws DomainError for n = 0.
std::uint64_t phi(std::uint64_t n);

/// Exact phi over [lo, hi). Requires 1 <= lo < hi and hi - lo <= max_window_length.
PhiWindow phi_window(std::uint64_t lo, std::uint64_t hi);

/// As above with a caller-supplied list of all primes <= sqrt(hi - 1).
PhiWindow phi_window(std::uint64_t lo, std::uint64_t hi,
                     std::span<const std::uint64_t> base_primes);

PrimeWindow prime_window(std::uint64_t lo, std::uint64_t hi);

/// floor(sqrt(n)) without floating-point rounding surprises.
std::uint64_t isqrt(std::uint64_t n);

namespace detail {
// Marks composites of [lo, lo + flags.size()) in a byte map (1 = prime).
void sieve_segment(std::uint64_t lo, std::span<std::uint8_t> flags,
                   std::span<const std::uint64_t> base_primes);
std::vector<std::uint64_t> small_primes(std::uint64_t limit);
}  // namespace detail

template <typename Fn>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  if (hi <= lo) return;
  if (lo < 2) lo = 2;
  if (hi <= lo) return;
  const auto base = detail::small_primes(isqrt(hi - 1));
  const std::uint64_t span_len = std::uint64_t{1} << 18;
  std::vector<std::uint8_t> flags;
  for (std::uint64_t seg = lo; seg < hi; seg += span_len) {
    const std::uint64_t seg_hi = (hi - seg > span_len) ? seg + span_len : hi;
    flags.assign(seg_hi - seg, 1);
    detail::sieve_segment(seg, flags, base);
    for (std::uint64_t i = 0; i < flags.size(); ++i) {
      if (flags[i]) fn(seg + i);
    }
  }
}

}  // namespace primebias
