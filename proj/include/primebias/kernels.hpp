#pragma once

// Window kernels shared by the prime engine and the pair census.

#include <cstdint>
#include <span>

namespace primebias::kernels {

/// Fills phi_out[i] = phi(lo + i) for the window [lo, lo + phi_out.size()).
///
/// base_primes must contain every prime <= sqrt(hi - 1), ascending; larger
/// entries are ignored. `scratch` must be at least as long as `phi_out`; it
/// holds the part of each n already factored. When `largest_factor` is
/// non-empty it receives the largest prime factor of each n (1 for n = 1).
///
/// Only multiplications run in the inner loops: phi is assembled as
/// prod (q - 1) q^(e-1) over sieved q, and the single cofactor left above
/// sqrt(hi) is recovered with one division per slot. Every intermediate is
/// bounded by n.
void fill_phi(std::uint64_t lo, std::span<std::uint64_t> phi_out,
              std::span<std::uint64_t> scratch, std::span<const std::uint64_t> base_primes,
              std::span<std::uint64_t> largest_factor = {});

}  // namespace primebias::kernels
