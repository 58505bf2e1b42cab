#include "primebias/bias_constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "primebias/compensated_sum.hpp"
#include "primebias/errors.hpp"
#include "primebias/pair_census.hpp"
#include "primebias/prime_engine.hpp"

namespace primebias {

const char* to_string(SignMode mode) {
  switch (mode) {
    case SignMode::chi3: return "chi3";
    case SignMode::plus: return "plus";
    case SignMode::minus: return "minus";
  }
  return "?";
}

int chi3(std::int64_t k) {
  const std::int64_t r = ((k % 3) + 3) % 3;
  return r == 0 ? 0 : r == 1 ? 1 : -1;
}

std::int64_t tau_k(std::int64_t k) {
  const int c = chi3(k);
  if (c == 0) throw DomainError("tau_k is undefined for k divisible by 3");
  return k * (1 + c) / 2;
}

int n_f(std::uint64_t r, std::int64_t k) {
  validate_pair_gap(k);
  if (!is_prime(r)) throw DomainError(std::to_string(r) + " is not prime");
  return static_cast<std::uint64_t>(k) % r == 0 ? 1 : 2;
}

PrimeSeries::PrimeSeries(std::uint64_t cutoff) : cutoff_(cutoff) {
  if (cutoff < min_series_cutoff) {
    throw DomainError("series cutoff must be at least " + std::to_string(min_series_cutoff));
  }
  for_each_prime(5, cutoff + 1, [this](std::uint64_t r) {
    primes_.push_back(r);
    weights_.push_back(std::log1p(real{1} / static_cast<real>(r - 1)));
  });
}

SeriesValue twin_prime_product(std::uint64_t cutoff) {
  if (cutoff < min_series_cutoff) {
    throw DomainError("Euler product cutoff must be at least " + std::to_string(min_series_cutoff));
  }
  CompensatedSum<real> log_sum;
  for_each_prime(3, cutoff + 1, [&](std::uint64_t p) {
    const auto d = static_cast<real>(p - 1);
    log_sum += std::log1p(-1 / (d * d));
  });
  SeriesValue out;
  out.value = 2 * std::exp(log_sum.value());
  // |log(1 - 1/(p-1)^2)| <= 2/(p-1)^2 for p >= 3, and sum_{m >= z} 2/m^2 <= 2/(z - 1).
  out.tail_bound = real{2} / static_cast<real>(cutoff - 1);
  out.cutoff = cutoff;
  out.enclosure = Enclosure::product_relative;
  return out;
}

SeriesValue c_k(std::int64_t k, const SeriesValue& twin_product) {
  validate_pair_gap(k);
  SeriesValue out = twin_product;
  for (const auto& f : factorize(static_cast<std::uint64_t>(k)).factors) {
    if (f.prime == 2) continue;
    out.value *= static_cast<real>(f.prime - 1) / static_cast<real>(f.prime - 2);
  }
  return out;
}

SeriesValue c_k(std::int64_t k, std::uint64_t cutoff) {
  validate_pair_gap(k);
  return c_k(k, twin_prime_product(cutoff));
}

namespace {

void check_mode(std::int64_t k, SignMode mode) {
  validate_pair_gap(k);
  const bool divisible = chi3(k) == 0;
  if (mode == SignMode::chi3 && divisible) {
    throw DomainError("chi3 mode needs 3 not dividing k; use plus/minus for k = " +
                      std::to_string(k));
  }
  if (mode != SignMode::chi3 && !divisible) {
    throw DomainError("plus/minus modes need 3 | k; use chi3 for k = " + std::to_string(k));
  }
}

// Q candidates must not divide this.
std::uint64_t q_forbidden(std::int64_t k, SignMode mode) {
  const auto uk = static_cast<std::uint64_t>(k);
  switch (mode) {
    case SignMode::chi3: return uk * static_cast<std::uint64_t>(k - chi3(k));
    case SignMode::plus: return uk * (uk - 1);
    case SignMode::minus: return uk * (uk + 1);
  }
  return 0;
}

// R drops primes dividing this. The chi3 form uses k + chi3(k) against Q's
// k - chi3(k); the asymmetry is intended.
std::uint64_t r_excluded(std::int64_t k, SignMode mode) {
  const auto uk = static_cast<std::uint64_t>(k);
  switch (mode) {
    case SignMode::chi3: return static_cast<std::uint64_t>(k + chi3(k));
    case SignMode::plus: return uk + 1;
    case SignMode::minus: return uk - 1;
  }
  return 0;
}

real series_term(const PrimeSeries& series, std::size_t i, std::uint64_t uk) {
  const std::uint64_t r = series.primes()[i];
  const std::uint64_t roots = uk % r == 0 ? 1 : 2;
  return series.weights()[i] / static_cast<real>(r - roots);
}

// Sums term i over indices passing keep(i), smallest terms first.
template <typename Keep>
SeriesValue sum_series(const PrimeSeries& series, std::uint64_t uk, Keep keep) {
  CompensatedSum<real> total;
  for (std::size_t i = series.primes().size(); i-- > 0;) {
    if (keep(i)) total += series_term(series, i, uk);
  }
  return {total.value(), series.tail_bound(), series.cutoff(), Enclosure::series_upper};
}

__extension__ typedef unsigned __int128 u128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Exact rational num/den grown one factor q/(q - 1) at a time, with a
// compensated log-sum fallback once 128 bits no longer suffice.
class LogProduct {
 public:
  LogProduct(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    fallback_ += std::log(static_cast<real>(num)) - std::log(static_cast<real>(den));
  }

  void multiply(std::uint64_t q) {
    fallback_ += std::log1p(real{1} / static_cast<real>(q - 1));
    if (!exact_) return;
    u128 a = q;
    u128 b = q - 1;
    u128 g = gcd128(a, den_);
    a /= g;
    den_ /= g;
    g = gcd128(b, num_);
    b /= g;
    num_ /= g;
    constexpr u128 max = ~u128{0};
    if (num_ > max / a || den_ > max / b) {
      exact_ = false;
      return;
    }
    num_ *= a;
    den_ *= b;
  }

  real log() const {
    if (!exact_) return fallback_.value();
    return std::log(static_cast<real>(num_) / static_cast<real>(den_));
  }

 private:
  u128 num_;
  u128 den_;
  bool exact_ = true;
  CompensatedSum<real> fallback_;
};

}  // namespace

real l_k(const QSet& q) {
  LogProduct product = q.mode == SignMode::chi3 ? LogProduct(2, 3) : LogProduct(1, 1);
  for (const std::uint64_t prime : q.primes) product.multiply(prime);
  return product.log();
}

SeriesValue r_k(std::int64_t k, const QSet& q, const PrimeSeries& series) {
  check_mode(k, q.mode);
  if (q.k != k) throw DomainError("Q was built for a different k");
  const auto uk = static_cast<std::uint64_t>(k);
  const std::uint64_t excluded = r_excluded(k, q.mode);
  std::vector<std::uint64_t> in_q = q.primes;
  std::sort(in_q.begin(), in_q.end());
  return sum_series(series, uk, [&](std::size_t i) {
    const std::uint64_t r = series.primes()[i];
    return excluded % r != 0 && !std::binary_search(in_q.begin(), in_q.end(), r);
  });
}

SeriesValue r_k(std::int64_t k, const QSet& q, std::uint64_t cutoff) {
  return r_k(k, q, PrimeSeries(cutoff));
}

SeriesValue r_k_prime(std::int64_t k, const PrimeSeries& series) {
  validate_pair_gap(k);
  const int c = chi3(k);
  if (c == 0) throw DomainError("R' is only defined for k not divisible by 3");
  const auto uk = static_cast<std::uint64_t>(k);
  const auto excluded = static_cast<std::uint64_t>(k - c);
  return sum_series(series, uk,
                    [&](std::size_t i) { return excluded % series.primes()[i] != 0; });
}

SeriesValue r_k_prime(std::int64_t k, std::uint64_t cutoff) {
  return r_k_prime(k, PrimeSeries(cutoff));
}

QSet q_set(std::int64_t k, SignMode mode, const PrimeSeries& series) {
  check_mode(k, mode);
  const auto uk = static_cast<std::uint64_t>(k);
  const std::uint64_t forbidden = q_forbidden(k, mode);
  const std::uint64_t excluded = r_excluded(k, mode);

  QSet q{k, mode, {}};
  SeriesValue full = sum_series(series, uk, [&](std::size_t i) {
    return excluded % series.primes()[i] != 0;
  });
  CompensatedSum<real> r(full.value);
  LogProduct l = mode == SignMode::chi3 ? LogProduct(2, 3) : LogProduct(1, 1);
  const real tail = series.tail_bound();

  for (std::size_t i = 0; i < series.primes().size(); ++i) {
    const std::uint64_t candidate = series.primes()[i];
    if (forbidden % candidate == 0) continue;
    q.primes.push_back(candidate);
    l.multiply(candidate);
    // Moving a prime into Q removes its term from R.
    if (excluded % candidate != 0) r -= series_term(series, i, uk);
    if (l.log() > r.value() + tail) {
#ifndef NDEBUG
      const real recomputed = r_k(k, q, series).value;
      if (std::fabs(recomputed - r.value()) > 1e-15L) {
        throw std::logic_error("incremental R disagrees with full recomputation");
      }
#endif
      return q;
    }
  }
  throw CapacityError("no Q found below the series cutoff " + std::to_string(series.cutoff()));
}

QSet q_set(std::int64_t k, SignMode mode, std::uint64_t cutoff) {
  return q_set(k, mode, PrimeSeries(cutoff));
}

real density_bound(const QSet& q, real l, const SeriesValue& r) {
  real scale = 1;
  for (const std::uint64_t prime : q.primes) scale /= static_cast<real>(prime - 2);
  return scale * (1 - r.upper() / l);
}

BiasReport bias_bounds(std::int64_t k, const PrimeSeries& series, const SeriesValue& twin_product) {
  validate_pair_gap(k);
  BiasReport report;
  report.k = k;
  report.chi3 = chi3(k);
  report.c_k = c_k(k, twin_product);
  if (report.chi3 != 0) {
    BiasedBounds b;
    b.q_set = q_set(k, SignMode::chi3, series);
    b.l_k = l_k(b.q_set);
    b.r_k = r_k(k, b.q_set, series);
    b.r_k_prime = r_k_prime(k, series);
    b.bound_biased = density_bound(b.q_set, b.l_k, b.r_k);
    b.bound_reversed = 1 - b.r_k_prime.upper() / std::log(real{1.5});
    report.bounds = std::move(b);
  } else {
    BalancedBounds b;
    b.q_minus = q_set(k, SignMode::minus, series);
    b.q_plus = q_set(k, SignMode::plus, series);
    b.l_minus = l_k(b.q_minus);
    b.l_plus = l_k(b.q_plus);
    b.r_minus = r_k(k, b.q_minus, series);
    b.r_plus = r_k(k, b.q_plus, series);
    b.bound_neg = density_bound(b.q_minus, b.l_minus, b.r_minus);
    b.bound_pos = density_bound(b.q_plus, b.l_plus, b.r_plus);
    report.bounds = std::move(b);
  }
  return report;
}

BiasReport bias_bounds(std::int64_t k, std::uint64_t r_cutoff, std::uint64_t euler_cutoff) {
  return bias_bounds(k, PrimeSeries(r_cutoff), twin_prime_product(euler_cutoff));
}

}  // namespace primebias
