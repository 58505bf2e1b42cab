#pragma once

// Bateman-Horn constants for the pair (t, t + k) and the auxiliary prime set
// Q together with the logarithmic product L and the series R that certify
// density lower bounds for each sign class of T(p).
//
// Series and products are accumulated in long double with compensated
// summation. Every truncated series carries an explicit tail bound, and
// the published bounds are evaluated at the upper end of R's enclosure.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace primebias {

using real = long double;

inline constexpr std::uint64_t default_r_cutoff = 10'000'000;
inline constexpr std::uint64_t default_euler_cutoff = 100'000'000;
inline constexpr std::uint64_t min_series_cutoff = 1'000;

enum class Enclosure {
  /// Partial sum of positive terms: true value in [value, value + tail_bound].
  series_upper,
  /// Euler product of factors below 1: true value in [value (1 - tail_bound), value].
  product_relative,
};

struct SeriesValue {
  real value = 0;
  real tail_bound = 0;
  std::uint64_t cutoff = 0;
  Enclosure enclosure = Enclosure::series_upper;

  real lower() const {
    return enclosure == Enclosure::series_upper ? value : value * (1 - tail_bound);
  }
  real upper() const { return enclosure == Enclosure::series_upper ? value + tail_bound : value; }
};

enum class SignMode {
  chi3,   // 3 does not divide k; Q avoids divisors of k(k - chi3(k))
  plus,   // 3 | k, class T(p) > 0; Q avoids divisors of k(k - 1)
  minus,  // 3 | k, class T(p) < 0; Q avoids divisors of k(k + 1)
};

const char* to_string(SignMode mode);

struct QSet {
  std::int64_t k = 2;
  SignMode mode = SignMode::chi3;
  std::vector<std::uint64_t> primes;

  std::size_t m() const { return primes.size(); }
};

/// Primes 5 <= r <= cutoff and their weights log(1 + 1/(r - 1)), computed
/// once and shared by every R-type series at that cutoff.
class PrimeSeries {
 public:
  explicit PrimeSeries(std::uint64_t cutoff = default_r_cutoff);

  std::uint64_t cutoff() const { return cutoff_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::span<const real> weights() const { return weights_; }
  /// sum_{n > cutoff} 1/((n - 2)(n - 1)) = 1/(cutoff - 1), dominating every R tail.
  real tail_bound() const { return real{1} / static_cast<real>(cutoff_ - 1); }

 private:
  std::uint64_t cutoff_;
  std::vector<std::uint64_t> primes_;
  std::vector<real> weights_;
};

/// Theorem data for 3 not dividing k.
struct BiasedBounds {
  QSet q_set;
  real l_k = 0;
  SeriesValue r_k;
  SeriesValue r_k_prime;
  /// Lower density of {sgn T(p) = chi3(k)}.
  real bound_biased = 0;
  /// Lower density of {sgn T(p) = -chi3(k)}.
  real bound_reversed = 0;
};

/// Theorem data for 3 | k, one half per sign of T(p).
struct BalancedBounds {
  QSet q_minus;
  QSet q_plus;
  real l_minus = 0;
  real l_plus = 0;
  SeriesValue r_minus;
  SeriesValue r_plus;
  real bound_neg = 0;
  real bound_pos = 0;
};

struct BiasReport {
  std::int64_t k = 2;
  int chi3 = 0;
  SeriesValue c_k;
  std::variant<BiasedBounds, BalancedBounds> bounds;
};

/// 0, 1, -1 for k = 0, 1, 2 (mod 3).
int chi3(std::int64_t k);

/// 0 when chi3(k) = -1, k when chi3(k) = 1. Requires 3 not dividing k.
std::int64_t tau_k(std::int64_t k);

/// Number of roots of t(t + k) modulo the prime r: 1 if r | k, else 2.
int n_f(std::uint64_t r, std::int64_t k);

/// Truncated Euler product for C_2 = 2 prod_{p >= 3} p(p - 2)/(p - 1)^2.
SeriesValue twin_prime_product(std::uint64_t cutoff = default_euler_cutoff);

/// C_k = C_2 prod_{p | k, p odd} (p - 1)/(p - 2).
SeriesValue c_k(std::int64_t k, std::uint64_t cutoff = default_euler_cutoff);
SeriesValue c_k(std::int64_t k, const SeriesValue& twin_product);

/// The minimal Q with L > R (R taken at its certified upper end).
QSet q_set(std::int64_t k, SignMode mode, const PrimeSeries& series);
QSet q_set(std::int64_t k, SignMode mode, std::uint64_t cutoff = default_r_cutoff);

/// log[(2/3) prod (1 + 1/(q - 1))] in chi3 mode, without the 2/3 otherwise.
real l_k(const QSet& q);

/// R summed over primes r >= 5 not in Q and off the mode's excluded divisor.
SeriesValue r_k(std::int64_t k, const QSet& q, const PrimeSeries& series);
SeriesValue r_k(std::int64_t k, const QSet& q, std::uint64_t cutoff = default_r_cutoff);

/// R' summed over primes r >= 5 with r not dividing k - chi3(k). Requires 3 not dividing k.
SeriesValue r_k_prime(std::int64_t k, const PrimeSeries& series);
SeriesValue r_k_prime(std::int64_t k, std::uint64_t cutoff = default_r_cutoff);

/// prod_{q in Q} (q - 2)^{-1} (1 - R/L).
real density_bound(const QSet& q, real l, const SeriesValue& r);

BiasReport bias_bounds(std::int64_t k, const PrimeSeries& series, const SeriesValue& twin_product);
BiasReport bias_bounds(std::int64_t k, std::uint64_t r_cutoff = default_r_cutoff,
                       std::uint64_t euler_cutoff = default_euler_cutoff);

}  // namespace primebias
