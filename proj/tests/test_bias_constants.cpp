#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "primebias/bias_constants.hpp"
#include "primebias/decimal_format.hpp"
#include "primebias/errors.hpp"
#include "primebias/prime_engine.hpp"

using namespace primebias;
using u64 = std::uint64_t;

namespace {

const PrimeSeries& series() {
  static const PrimeSeries s(default_r_cutoff);
  return s;
}

const SeriesValue& twin() {
  static const SeriesValue t = twin_prime_product(default_euler_cutoff);
  return t;
}

bool near(real v, real expected, real tol) { return std::fabs(v - expected) <= tol; }

QSet prefix(const QSet& q, std::size_t m) {
  QSet out = q;
  out.primes.resize(m);
  return out;
}

}  // namespace

TEST_CASE("chi3, tau_k and n_f") {
  CHECK(chi3(2) == -1);
  CHECK(chi3(6) == 0);
  CHECK(chi3(4) == 1);
  CHECK(chi3(1) == 1);
  CHECK(tau_k(2) == 0);
  CHECK(tau_k(4) == 4);
  CHECK(tau_k(70) == 70);
  CHECK_THROWS_AS(tau_k(6), DomainError);
  CHECK(n_f(2, 2) == 1);
  CHECK(n_f(5, 2) == 2);
  CHECK(n_f(7, 14) == 1);
  CHECK_THROWS_AS(n_f(4, 2), DomainError);
  CHECK_THROWS_AS(n_f(5, 3), DomainError);
}

TEST_CASE("twin prime product") {
  const SeriesValue& c2 = twin();
  CHECK(near(c2.value / 2, 0.660162L, 5e-7L));
  CHECK(c2.enclosure == Enclosure::product_relative);
  CHECK(c2.tail_bound < 1e-7L);
  CHECK(c2.lower() < c2.value);
  CHECK(c2.upper() == c2.value);
  // A shorter product overshoots, but stays within its own relative tail.
  const SeriesValue coarse = twin_prime_product(100'000);
  CHECK(coarse.value >= c2.value);
  CHECK(coarse.lower() <= c2.value);
  CHECK_THROWS_AS(twin_prime_product(999), DomainError);
}

TEST_CASE("c_k values") {
  CHECK(near(c_k(2, twin()).value, 1.32032L, 5e-6L));
  CHECK(near(c_k(30, twin()).value, 3.52086L, 1e-5L));
  CHECK(round_fixed(c_k(98, twin()).value, 5) == "1.58439");
  CHECK(c_k(4, 10'000).value == c_k(2, 10'000).value);
  CHECK_THROWS_AS(c_k(3, twin()), DomainError);
  CHECK_THROWS_AS(c_k(0, twin()), DomainError);
}

TEST_CASE("c_k depends only on the prime support of k") {
  const real two = c_k(2, twin()).value;
  for (const std::int64_t k : {4, 8, 16, 32, 64, 1024}) CHECK(c_k(k, twin()).value == two);
  const real six = c_k(6, twin()).value;
  for (const std::int64_t k : {12, 18, 24, 36, 48, 54, 96}) CHECK(c_k(k, twin()).value == six);
  for (std::int64_t k = 2; k <= 400; k += 2) {
    const auto rad2 = static_cast<std::int64_t>(factorize(static_cast<u64>(k)).radical());
    CAPTURE(k);
    CHECK(c_k(k, twin()).value == c_k(rad2, twin()).value);
  }
}

TEST_CASE("q_set examples") {
  CHECK(q_set(2, SignMode::chi3, series()).primes == std::vector<u64>{5, 7, 11});
  CHECK(q_set(32, SignMode::chi3, series()).primes == std::vector<u64>{5, 7, 13});
  CHECK(q_set(6, SignMode::minus, series()).primes == std::vector<u64>{5});
  CHECK(q_set(6, SignMode::plus, series()).primes == std::vector<u64>{7});
  CHECK(q_set(2, SignMode::chi3, series()).m() == 3);
  CHECK_THROWS_AS(q_set(6, SignMode::chi3, series()), DomainError);
  CHECK_THROWS_AS(q_set(2, SignMode::plus, series()), DomainError);
  CHECK_THROWS_AS(q_set(4, SignMode::minus, series()), DomainError);
  CHECK_THROWS_AS(q_set(5, SignMode::chi3, series()), DomainError);
}

TEST_CASE("l_k is the log of an exact rational") {
  CHECK(near(l_k(QSet{2, SignMode::chi3, {5, 7, 11}}), std::log(77.0L / 72.0L), 1e-15L));
  CHECK(near(l_k(QSet{6, SignMode::minus, {5}}), std::log(1.25L), 1e-15L));
  CHECK(near(l_k(QSet{6, SignMode::plus, {7}}), std::log(7.0L / 6.0L), 1e-15L));
  CHECK(round_fixed(l_k(QSet{2, SignMode::chi3, {5, 7, 11}}), 6) == "0.067139");

  // Falls back to a log sum once the rational outgrows 128 bits.
  QSet big{2, SignMode::chi3, {}};
  real expected = std::log(2.0L / 3.0L);
  for_each_prime(5, 2000, [&](u64 q) {
    big.primes.push_back(q);
    expected += std::log1p(1.0L / static_cast<real>(q - 1));
  });
  CHECK(near(l_k(big), expected, 1e-15L));
}

TEST_CASE("r_k and r_k_prime values") {
  const QSet q2 = q_set(2, SignMode::chi3, series());
  CHECK(near(r_k(2, q2, series()).value, 0.025497L, 1e-6L));
  const QSet q14 = q_set(14, SignMode::chi3, series());
  CHECK(near(r_k(14, q14, series()).value, 0.103683L, 1e-6L));
  const QSet q6 = q_set(6, SignMode::minus, series());
  CHECK(near(r_k(6, q6, series()).value, 0.066917L, 1e-6L));

  CHECK(near(r_k_prime(2, series()).value, 0.141298112L, 1e-6L));
  CHECK(near(r_k_prime(14, series()).value, 0.061779L, 1e-6L));
  for (std::int64_t k = 2; k <= 200; k += 2) {
    if (k % 3 == 0) continue;
    CAPTURE(k);
    CHECK(r_k_prime(k, series()).value < 0.1412982L);
  }
  CHECK_THROWS_AS(r_k_prime(6, series()), DomainError);
  CHECK_THROWS_AS(r_k(4, q2, series()), DomainError);
  CHECK_THROWS_AS(PrimeSeries(999), DomainError);

  const SeriesValue r = r_k(2, q2, series());
  CHECK(r.enclosure == Enclosure::series_upper);
  CHECK(r.cutoff == default_r_cutoff);
  CHECK(r.tail_bound == doctest::Approx(1.0 / (default_r_cutoff - 1)));
  CHECK(r.upper() == r.value + r.tail_bound);
}

TEST_CASE("R excludes Q and the mode's divisor") {
  // k = 32: 11 divides k - chi3 = 33 and is skipped in Q; R drops r | k + chi3 = 31.
  const QSet q = q_set(32, SignMode::chi3, series());
  const real with_31 = r_k(32, q, series()).value;
  real term31 = std::log1p(1.0L / 30) / 29;
  const SeriesValue all = r_k_prime(32, series());  // excludes r | 33 only
  // R' covers every r >= 5 except 11; R drops 5, 7, 13 (in Q) and 31.
  real q_terms = 0;
  for (const u64 r : {5, 7, 13}) q_terms += std::log1p(1.0L / (r - 1)) / (r - 2);
  const real r11 = std::log1p(1.0L / 10) / 9;
  CHECK(near(with_31 + q_terms + term31 - r11, all.value, 1e-15L));
}

TEST_CASE("Q is minimal and certified for every even k <= 200") {
  for (std::int64_t k = 2; k <= 200; k += 2) {
    const std::vector<SignMode> modes =
        k % 3 == 0 ? std::vector<SignMode>{SignMode::minus, SignMode::plus}
                   : std::vector<SignMode>{SignMode::chi3};
    for (const SignMode mode : modes) {
      const QSet q = q_set(k, mode, series());
      CAPTURE(k);
      CAPTURE(to_string(mode));
      REQUIRE(q.m() >= 1);
      CHECK(l_k(q) > r_k(k, q, series()).upper());
      if (q.m() >= 2) {
        const QSet shorter = prefix(q, q.m() - 1);
        CHECK(l_k(shorter) <= r_k(k, shorter, series()).upper());
      }
      for (const u64 prime : q.primes) {
        CHECK(prime >= 5);
        const auto uk = static_cast<u64>(k);
        const u64 forbidden = mode == SignMode::chi3 ? uk * static_cast<u64>(k - chi3(k))
                              : mode == SignMode::plus ? uk * (uk - 1)
                                                       : uk * (uk + 1);
        CHECK(forbidden % prime != 0);
      }
    }
  }
}

TEST_CASE("series enclosures nest across cutoffs") {
  const PrimeSeries small(100'000);
  const PrimeSeries large(1'000'000);
  for (const std::int64_t k : {2, 4, 10, 14, 70}) {
    const QSet q = q_set(k, SignMode::chi3, series());
    const SeriesValue a = r_k(k, q, small);
    const SeriesValue b = r_k(k, q, large);
    CAPTURE(k);
    CHECK(a.value <= b.value);
    CHECK(b.value <= a.upper());
    CHECK(b.upper() <= a.upper());
    const SeriesValue pa = r_k_prime(k, small);
    const SeriesValue pb = r_k_prime(k, large);
    CHECK(pa.value <= pb.value);
    CHECK(pb.value <= pa.upper());
  }
}

TEST_CASE("bias_bounds routing and values") {
  const BiasReport two = bias_bounds(2, series(), twin());
  REQUIRE(std::holds_alternative<BiasedBounds>(two.bounds));
  const auto& b = std::get<BiasedBounds>(two.bounds);
  CHECK(two.chi3 == -1);
  CHECK(round_fixed(b.bound_biased, 6) == "0.004594");
  CHECK(round_fixed(b.bound_reversed, 6) == "0.651516");
  CHECK(b.bound_reversed > 0.6515L);
  CHECK(b.bound_reversed < 1);
  CHECK(near(b.bound_reversed, 1 - b.r_k_prime.upper() / std::log(1.5L), 1e-18L));
  CHECK(near(b.bound_biased, (1 - b.r_k.upper() / b.l_k) / (3 * 5 * 9), 1e-18L));

  const BiasReport six = bias_bounds(6, series(), twin());
  REQUIRE(std::holds_alternative<BalancedBounds>(six.bounds));
  const auto& c = std::get<BalancedBounds>(six.bounds);
  CHECK(six.chi3 == 0);
  CHECK(near(c.bound_neg, 0.233372L, 1e-6L));
  CHECK(near(c.bound_pos, 0.056675L, 1e-6L));

  const BiasReport seventy = bias_bounds(70, series(), twin());
  CHECK(round_scientific(std::get<BiasedBounds>(seventy.bounds).bound_biased, 3) == "1.81e-20");

  for (std::int64_t k = 2; k <= 60; k += 2) {
    const BiasReport r = bias_bounds(k, series(), twin());
    CHECK(std::holds_alternative<BalancedBounds>(r.bounds) == (k % 3 == 0));
  }
  CHECK_THROWS_AS(bias_bounds(7, series(), twin()), DomainError);
}

TEST_CASE("bias_bounds cutoff overload matches the shared-series form") {
  const BiasReport a = bias_bounds(10, 100'000, 100'000);
  const BiasReport b = bias_bounds(10, PrimeSeries(100'000), twin_prime_product(100'000));
  const auto& x = std::get<BiasedBounds>(a.bounds);
  const auto& y = std::get<BiasedBounds>(b.bounds);
  CHECK(x.q_set.primes == y.q_set.primes);
  CHECK(x.bound_biased == y.bound_biased);
  CHECK(a.c_k.value == b.c_k.value);
}
