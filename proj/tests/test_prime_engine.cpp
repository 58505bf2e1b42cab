#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "primebias/errors.hpp"
#include "primebias/kernels.hpp"
#include "primebias/oracle.hpp"
#include "primebias/prime_engine.hpp"
#include "primebias/reference.hpp"

using namespace primebias;
using u64 = std::uint64_t;

TEST_CASE("primes_up_to small limits") {
  CHECK(primes_up_to(10) == std::vector<u64>{2, 3, 5, 7});
  CHECK(primes_up_to(2) == std::vector<u64>{2});
  CHECK(primes_up_to(3) == std::vector<u64>{2, 3});
  CHECK_THROWS_AS(primes_up_to(1), EmptyRangeError);
  CHECK_THROWS_AS(primes_up_to(0), EmptyRangeError);
  CHECK_THROWS_AS(primes_up_to(1001, 1000), CapacityError);
  CHECK_THROWS_AS(primes_up_to(default_max_limit + 1), CapacityError);
}

TEST_CASE("pi(1e6)") { CHECK(primes_up_to(1'000'000).size() == 78498); }

TEST_CASE("sieve agrees with trial division up to 1e5") {
  std::vector<u64> expected;
  for (u64 n = 0; n <= 100'000; ++n) {
    if (oracle::is_prime(n)) expected.push_back(n);
  }
  CHECK(primes_up_to(100'000) == expected);
  CHECK(reference::primes_up_to(100'000) == expected);
}

TEST_CASE("for_each_prime over an offset range crossing segments") {
  std::vector<u64> got;
  const u64 lo = 999'000;
  const u64 hi = lo + (u64{1} << 19) + 17;
  for_each_prime(lo, hi, [&](u64 p) { got.push_back(p); });
  std::vector<u64> expected;
  for (u64 p : primes_up_to(hi - 1)) {
    if (p >= lo) expected.push_back(p);
  }
  CHECK(got == expected);

  got.clear();
  for_each_prime(0, 3, [&](u64 p) { got.push_back(p); });
  CHECK(got == std::vector<u64>{2});
  got.clear();
  for_each_prime(10, 10, [&](u64 p) { got.push_back(p); });
  CHECK(got.empty());
}

TEST_CASE("first_n_primes") {
  CHECK(first_n_primes(5) == std::vector<u64>{2, 3, 5, 7, 11});
  CHECK(first_n_primes(1) == std::vector<u64>{2});
  const auto first = first_n_primes(10'000);
  CHECK(first.size() == 10'000);
  CHECK(first.back() == 104729);
  CHECK_THROWS_AS(first_n_primes(0), EmptyRangeError);
}

TEST_CASE("nth_prime and its upper bound") {
  const auto primes = primes_up_to(300'000);
  for (u64 n = 1; n <= primes.size(); n += (n < 100 ? 1 : 97)) {
    CAPTURE(n);
    CHECK(nth_prime_upper_bound(n) >= primes[n - 1]);
    CHECK(nth_prime(n) == primes[n - 1]);
  }
  CHECK(nth_prime(100'000) == 1'299'709);
  CHECK(nth_prime(1'000'000) == 15'485'863);
  CHECK_THROWS_AS(nth_prime_upper_bound(0), EmptyRangeError);
}

TEST_CASE("SieveConfig validation") {
  CHECK_NOTHROW(SieveConfig{1000, 64}.validate());
  CHECK_THROWS_AS((SieveConfig{1, 64}.validate()), DomainError);
  CHECK_THROWS_AS((SieveConfig{1000, 63}.validate()), DomainError);
  CHECK_THROWS_AS((SieveConfig{100, 128}.validate()), DomainError);
  const auto small = SieveConfig::covering(100);
  CHECK_NOTHROW(small.validate());
  CHECK(small.segment_length <= 100);
}

TEST_CASE("factorize") {
  CHECK(factorize(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(1).largest_prime() == 1);
  const auto f = factorize(720720);
  CHECK(f.factors ==
        std::vector<PrimePower>{{2, 4}, {3, 2}, {5, 1}, {7, 1}, {11, 1}, {13, 1}});
  CHECK(f.product() == 720720);
  CHECK(f.radical() == 2 * 3 * 5 * 7 * 11 * 13);
  const auto semiprime = factorize(1'000'003ULL * 1'000'033ULL);
  CHECK(semiprime.factors == std::vector<PrimePower>{{1'000'003, 1}, {1'000'033, 1}});
  CHECK(factorize(u64{1} << 63).factors == std::vector<PrimePower>{{2, 63}});
  CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("factorize round-trips and lists primes") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = 1 + rng() % 10'000'000'000ULL;
    const auto f = factorize(n);
    CAPTURE(n);
    CHECK(f.product() == n);
    for (std::size_t j = 0; j < f.factors.size(); ++j) {
      CHECK(oracle::is_prime(f.factors[j].prime));
      if (j > 0) CHECK(f.factors[j - 1].prime < f.factors[j].prime);
    }
  }
}

TEST_CASE("phi") {
  CHECK(phi(1) == 1);
  CHECK(phi(2) == 1);
  CHECK(phi(10) == 4);
  CHECK(phi(129600) == 34560);
  CHECK(phi(1'000'003) == 1'000'002);
  CHECK_THROWS_AS(phi(0), DomainError);
  for (u64 n = 1; n <= 3000; ++n) {
    CAPTURE(n);
    CHECK(phi(n) == oracle::totient_gcd_count(n));
  }
}

TEST_CASE("phi is multiplicative on coprime pairs") {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 5000) {
    const u64 m = 1 + rng() % 3'000'000;
    const u64 n = 1 + rng() % 3'000'000;
    if (std::gcd(m, n) != 1) continue;
    CAPTURE(m);
    CAPTURE(n);
    CHECK(phi(m) * phi(n) == phi(m * n));
    ++checked;
  }
}

TEST_CASE("phi_window examples") {
  CHECK(phi_window(1, 11).values().size() == 10);
  const auto w = phi_window(1, 11);
  CHECK(std::vector<u64>(w.values().begin(), w.values().end()) ==
        std::vector<u64>{1, 1, 2, 2, 4, 2, 6, 4, 6, 4});
  const auto one = phi_window(2, 3);
  CHECK(one.size() == 1);
  CHECK(one(2) == 1);
  const auto far = phi_window(1'000'000, 1'000'008);
  for (u64 n = far.lo(); n < far.hi(); ++n) CHECK(far(n) == phi(n));
}

TEST_CASE("phi_window errors") {
  CHECK_THROWS_AS(phi_window(0, 10), DomainError);
  CHECK_THROWS_AS(phi_window(10, 10), EmptyRangeError);
  CHECK_THROWS_AS(phi_window(1, 2 + max_window_length), CapacityError);
  const std::vector<u64> short_base{2, 3, 5};
  CHECK_THROWS_AS(phi_window(1, 1000, short_base), DomainError);
  CHECK_NOTHROW(phi_window(1, 49, short_base));
  CHECK_THROWS_AS(phi_window(1, 50, short_base), DomainError);
}

TEST_CASE("phi_window agrees with pointwise phi for n <= 1e5") {
  const auto w = phi_window(1, 100'001);
  const auto table = reference::phi_table(100'000);
  for (u64 n = 1; n <= 100'000; ++n) {
    if (w(n) != phi(n) || w(n) != table[n]) {
      FAIL("mismatch at n = " << n);
    }
  }
  for (u64 n = 1; n <= 100'000; n += 113) CHECK(w(n) == oracle::totient_trial_division(n));
}

TEST_CASE("phi_window partitions concatenate") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const u64 a = 1 + rng() % 5'000'000;
    const u64 b = a + 1 + rng() % 20'000;
    const u64 c = b + 1 + rng() % 20'000;
    const auto whole = phi_window(a, c);
    const auto left = phi_window(a, b);
    const auto right = phi_window(b, c);
    std::vector<u64> joined(left.values().begin(), left.values().end());
    joined.insert(joined.end(), right.values().begin(), right.values().end());
    CAPTURE(a);
    CHECK(joined == std::vector<u64>(whole.values().begin(), whole.values().end()));
  }
}

TEST_CASE("fill_phi reports largest prime factors") {
  const u64 lo = 3'000'000;
  const std::size_t len = 5000;
  const auto base = primes_up_to(isqrt(lo + len) + 1);
  std::vector<u64> values(len), scratch(len), largest(len);
  kernels::fill_phi(lo, values, scratch, base, largest);
  for (std::size_t i = 0; i < len; ++i) {
    const auto f = factorize(lo + i);
    CAPTURE(lo + i);
    CHECK(largest[i] == f.largest_prime());
    CHECK(values[i] == phi(lo + i));
  }
  std::vector<u64> head(4), head_scratch(4), head_largest(4);
  kernels::fill_phi(1, head, head_scratch, base, head_largest);
  CHECK(head_largest == std::vector<u64>{1, 2, 3, 2});
}

TEST_CASE("prime_window agrees with trial division up to 1e6") {
  const auto w = prime_window(1, 1'000'001);
  u64 mismatches = 0;
  for (u64 n = 1; n <= 1'000'000; ++n) mismatches += w.is_prime(n) != oracle::is_prime(n);
  CHECK(mismatches == 0);
  CHECK(w.count() == 78498);
  const auto offset = prime_window(999'983, 1'000'004);
  CHECK(offset.count() == 2);
  CHECK(offset.is_prime(999'983));
  CHECK(offset.is_prime(1'000'003));
}

TEST_CASE("is_prime and isqrt edge cases") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(4'294'967'291ULL));
  CHECK_FALSE(is_prime(4'294'967'297ULL));  // 641 * 6700417
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(15) == 3);
  CHECK(isqrt(16) == 4);
  CHECK(isqrt(~u64{0}) == 4'294'967'295ULL);
  CHECK(isqrt(4'294'967'295ULL * 4'294'967'295ULL) == 4'294'967'295ULL);
  CHECK(isqrt(4'294'967'295ULL * 4'294'967'295ULL - 1) == 4'294'967'294ULL);
}
