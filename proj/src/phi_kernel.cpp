#include "primebias/kernels.hpp"

#include <algorithm>
#include <cassert>

namespace primebias::kernels {

void fill_phi(std::uint64_t lo, std::span<std::uint64_t> phi_out,
              std::span<std::uint64_t> scratch, std::span<const std::uint64_t> base_primes,
              std::span<std::uint64_t> largest_factor) {
  const std::size_t len = phi_out.size();
  if (len == 0) return;
  assert(lo >= 1);
  assert(scratch.size() >= len);
  const std::uint64_t hi = lo + len;
  const std::uint64_t last = hi - 1;
  const bool track_largest = !largest_factor.empty();

  std::uint64_t* const acc = phi_out.data();
  std::uint64_t* const factored = scratch.data();
  std::fill_n(acc, len, std::uint64_t{1});
  std::fill_n(factored, len, std::uint64_t{1});
  if (track_largest) std::fill_n(largest_factor.data(), len, std::uint64_t{1});

  for (const std::uint64_t q : base_primes) {
    if (q > last / q) break;  // q * q > last
    std::uint64_t first = ((lo + q - 1) / q) * q;
    for (std::uint64_t m = first - lo; m < len; m += q) {
      acc[m] *= q - 1;
      factored[m] *= q;
    }
    if (track_largest) {
      for (std::uint64_t m = first - lo; m < len; m += q) largest_factor[m] = q;
    }
    // Higher powers contribute a further factor q each.
    for (std::uint64_t power = q * q;; power *= q) {
      first = ((lo + power - 1) / power) * power;
      for (std::uint64_t m = first - lo; m < len; m += power) {
        acc[m] *= q;
        factored[m] *= q;
      }
      if (power > last / q) break;
    }
  }

  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t n = lo + i;
    if (factored[i] != n) {
      // At most one prime above sqrt(hi) divides n.
      const std::uint64_t cofactor = n / factored[i];
      acc[i] *= cofactor - 1;
      if (track_largest) largest_factor[i] = cofactor;
    }
  }
}

}  // namespace primebias::kernels
