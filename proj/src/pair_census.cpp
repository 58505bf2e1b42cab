#include "primebias/pair_census.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "primebias/errors.hpp"
#include "primebias/kernels.hpp"

namespace primebias {

const char* to_string(ScopeMode mode) {
  return mode == ScopeMode::up_to_x ? "up_to_x" : "first_n_primes";
}

void CensusScope::validate() const {
  if (mode == ScopeMode::up_to_x && bound < 3) {
    throw DomainError("census bound x must be at least 3");
  }
  if (mode == ScopeMode::first_n_primes && bound < 1) {
    throw DomainError("census needs at least one prime");
  }
}

std::uint64_t CensusScope::largest_p() const {
  validate();
  if (mode == ScopeMode::up_to_x) return bound;
  return nth_prime(bound);
}

void validate_pair_gap(std::int64_t k) {
  if (k <= 0 || k % 2 != 0) {
    throw DomainError("pair gap k must be even and positive, got " + std::to_string(k));
  }
}

int s_sign(std::uint64_t p, std::uint64_t k, std::uint64_t phi_lower, std::uint64_t phi_upper) {
  __extension__ typedef unsigned __int128 u128;
  const u128 lhs = static_cast<u128>(phi_lower) * (p + k - 1);
  const u128 rhs = static_cast<u128>(phi_upper) * (p - 1);
  return (lhs > rhs) - (lhs < rhs);
}

void CensusResult::record(std::uint64_t p, std::uint64_t phi_lower, std::uint64_t phi_upper) {
  const auto uk = static_cast<std::uint64_t>(k);
  const int t = sign(static_cast<std::int64_t>(phi_lower) - static_cast<std::int64_t>(phi_upper));
  const int s = s_sign(p, uk, phi_lower, phi_upper);
  ++pair_count;
  (t < 0 ? t_neg : t == 0 ? t_zero : t_pos) += 1;
  (s < 0 ? s_neg : s == 0 ? s_zero : s_pos) += 1;
  if (s * t > 0) ++st_agree;
}

CensusResult& CensusResult::operator+=(const CensusResult& other) {
  if (other.k != k || !(other.scope == scope)) {
    throw DomainError("cannot merge census results for different k or scope");
  }
  pair_count += other.pair_count;
  t_neg += other.t_neg;
  t_zero += other.t_zero;
  t_pos += other.t_pos;
  s_neg += other.s_neg;
  s_zero += other.s_zero;
  s_pos += other.s_pos;
  st_agree += other.st_agree;
  return *this;
}

void ConstraintSpec::validate(std::int64_t k) const {
  validate_pair_gap(k);
  const auto uk = static_cast<std::uint64_t>(k);
  if (tau_k != 0 && tau_k != uk) {
    throw ConstraintError("tau_k must be 0 or k", tau_k);
  }
  // tau = 0 puts Q on p - 1, which needs q not dividing k(k + 1); tau = k
  // puts Q on p + k - 1, which needs q not dividing k(k - 1). The r prime
  // sits on the other side with the mirrored condition.
  const std::uint64_t q_forbidden = tau_k == 0 ? uk * (uk + 1) : uk * (uk - 1);
  const std::uint64_t r_forbidden = tau_k == 0 ? uk * (uk - 1) : uk * (uk + 1);
  for (std::size_t i = 0; i < q_divisors.size(); ++i) {
    const std::uint64_t q = q_divisors[i];
    if (q < 5 || !is_prime(q)) throw ConstraintError("q must be a prime >= 5", q);
    if (std::count(q_divisors.begin(), q_divisors.end(), q) > 1) {
      throw ConstraintError("q divisors must be distinct", q);
    }
    if (q_forbidden % q == 0) {
      throw ConstraintError(tau_k == 0 ? "q divides k(k+1)" : "q divides k(k-1)", q);
    }
  }
  if (r_divisor) {
    const std::uint64_t r = *r_divisor;
    if (r < 5 || !is_prime(r)) throw ConstraintError("r must be a prime >= 5", r);
    if (std::find(q_divisors.begin(), q_divisors.end(), r) != q_divisors.end()) {
      throw ConstraintError("r must not belong to the q divisors", r);
    }
    if (r_forbidden % r == 0) {
      throw ConstraintError(tau_k == 0 ? "r divides k(k-1)" : "r divides k(k+1)", r);
    }
  }
}

bool ConstraintSpec::admits(std::uint64_t p, std::uint64_t k) const {
  const std::uint64_t q_side = p - 1 + tau_k;
  for (const std::uint64_t q : q_divisors) {
    if (q_side % q != 0) return false;
  }
  if (r_divisor && (p - 1 + (k - tau_k)) % *r_divisor != 0) return false;
  return true;
}

namespace {

// Per-thread window buffers. The phi window for p in [p_lo, p_hi) covers
// n in [p_lo - 1, p_hi + k_max) so that p - 1, p, p + k - 1 and p + k all
// fall inside it; the k_max-wide overlap with the next window is recomputed
// rather than shared, which keeps windows independent.
struct WindowBuffers {
  std::vector<std::uint64_t> phi;
  std::vector<std::uint64_t> scratch;
  std::vector<std::uint64_t> largest;

  void fill(std::uint64_t n_lo, std::size_t len, std::span<const std::uint64_t> base,
            bool want_largest) {
    phi.resize(len);
    scratch.resize(len);
    largest.resize(want_largest ? len : 0);
    kernels::fill_phi(n_lo, phi, scratch, base, largest);
  }
};

// Indexes a window buffer by the integer n rather than by offset.
struct WindowView {
  const std::uint64_t* data;
  std::uint64_t lo;
  std::uint64_t operator[](std::uint64_t n) const { return data[n - lo]; }
};

struct ScanPlan {
  std::uint64_t p_max = 0;
  std::uint64_t k_max = 0;
  std::uint64_t window = 0;
  std::size_t windows = 0;
  std::vector<std::uint64_t> base_primes;
};

ScanPlan plan_scan(std::uint64_t p_max, std::uint64_t k_max, const CensusOptions& options) {
  if (options.threads < 1) throw DomainError("thread count must be at least 1");
  ScanPlan plan;
  plan.p_max = p_max;
  plan.k_max = k_max;
  if (p_max + k_max > default_max_limit) {
    throw CapacityError("census range " + std::to_string(p_max + k_max) +
                        " exceeds the supported limit");
  }
  const SieveConfig config = SieveConfig::covering(p_max + k_max, options.segment_length);
  plan.window = config.segment_length;
  if (plan.window + k_max + 1 > max_window_length) {
    throw CapacityError("segment length too large for a phi window");
  }
  plan.windows = p_max < 2 ? 0 : static_cast<std::size_t>((p_max - 1 + plan.window - 1) / plan.window);
  plan.base_primes = detail::small_primes(isqrt(p_max + k_max));
  return plan;
}

// Runs visit(acc, p, phi_window_view) for every prime p <= p_max and folds
// the per-window accumulators in window order.
template <typename Acc, typename MakeAcc, typename Visit, typename Merge>
Acc scan_primes(const ScanPlan& plan, const CensusOptions& options, bool want_largest,
                MakeAcc make_acc, Visit visit, Merge merge) {
  std::vector<Acc> partial;
  partial.reserve(plan.windows);
  for (std::size_t w = 0; w < plan.windows; ++w) partial.push_back(make_acc());
  std::size_t finished = 0;

#pragma omp parallel num_threads(options.threads)
  {
    WindowBuffers buffers;
#pragma omp for schedule(dynamic, 1)
    for (std::size_t w = 0; w < plan.windows; ++w) {
      const std::uint64_t p_lo = 2 + w * plan.window;
      const std::uint64_t p_hi = std::min(plan.p_max + 1, p_lo + plan.window);
      const std::uint64_t n_lo = p_lo - 1;
      const std::size_t len = static_cast<std::size_t>(p_hi + plan.k_max - n_lo);
      buffers.fill(n_lo, len, plan.base_primes, want_largest);
      const WindowView phi{buffers.phi.data(), n_lo};
      const WindowView largest{buffers.largest.data(), n_lo};
      Acc& acc = partial[w];
      for (std::uint64_t p = p_lo; p < p_hi; ++p) {
        if (phi[p] != p - 1) continue;
        visit(acc, p, phi, largest);
      }
      if (options.progress) {
#pragma omp critical(primebias_progress)
        options.progress(++finished, plan.windows);
      }
    }
  }

  Acc total = make_acc();
  for (auto& acc : partial) merge(total, acc);
  return total;
}

std::uint64_t max_gap(std::span<const std::int64_t> ks) {
  std::int64_t k_max = 0;
  for (const std::int64_t k : ks) {
    validate_pair_gap(k);
    k_max = std::max(k_max, k);
  }
  if (ks.empty()) throw DomainError("no pair gaps given");
  return static_cast<std::uint64_t>(k_max);
}

}  // namespace

std::vector<std::uint64_t> enumerate_pairs(std::int64_t k, const CensusScope& scope,
                                           const CensusOptions& options) {
  validate_pair_gap(k);
  const auto uk = static_cast<std::uint64_t>(k);
  const ScanPlan plan = plan_scan(scope.largest_p(), uk, options);
  using Acc = std::vector<std::uint64_t>;
  return scan_primes<Acc>(
      plan, options, false, [] { return Acc{}; },
      [uk](Acc& acc, std::uint64_t p, const WindowView& phi, const WindowView&) {
        if (phi[p + uk] == p + uk - 1) acc.push_back(p);
      },
      [](Acc& total, Acc& part) { total.insert(total.end(), part.begin(), part.end()); });
}

std::vector<CensusResult> census(std::span<const std::int64_t> ks, const CensusScope& scope,
                                 const CensusOptions& options) {
  const std::uint64_t k_max = max_gap(ks);
  const ScanPlan plan = plan_scan(scope.largest_p(), k_max, options);
  using Acc = std::vector<CensusResult>;
  const std::vector<std::int64_t> gaps(ks.begin(), ks.end());
  auto make = [&] {
    Acc acc;
    acc.reserve(gaps.size());
    for (const std::int64_t k : gaps) acc.push_back(CensusResult::empty(k, scope));
    return acc;
  };
  return scan_primes<Acc>(
      plan, options, false, make,
      [&gaps](Acc& acc, std::uint64_t p, const WindowView& phi, const WindowView&) {
        for (std::size_t j = 0; j < gaps.size(); ++j) {
          const auto k = static_cast<std::uint64_t>(gaps[j]);
          if (phi[p + k] == p + k - 1) acc[j].record(p, phi[p - 1], phi[p + k - 1]);
        }
      },
      [](Acc& total, Acc& part) {
        for (std::size_t j = 0; j < total.size(); ++j) total[j] += part[j];
      });
}

CensusResult census(std::int64_t k, const CensusScope& scope, const CensusOptions& options) {
  const std::int64_t ks[] = {k};
  return census(std::span<const std::int64_t>(ks), scope, options).front();
}

CensusResult constrained_census(std::int64_t k, const CensusScope& scope,
                                const ConstraintSpec& constraints, const CensusOptions& options) {
  constraints.validate(k);
  const auto uk = static_cast<std::uint64_t>(k);
  const ScanPlan plan = plan_scan(scope.largest_p(), uk, options);
  return scan_primes<CensusResult>(
      plan, options, false, [&] { return CensusResult::empty(k, scope); },
      [&](CensusResult& acc, std::uint64_t p, const WindowView& phi, const WindowView&) {
        if (phi[p + uk] != p + uk - 1 || !constraints.admits(p, uk)) return;
        acc.record(p, phi[p - 1], phi[p + uk - 1]);
      },
      [](CensusResult& total, const CensusResult& part) { total += part; });
}

DivisibilityCount divisibility_census(std::int64_t k, const CensusScope& scope, unsigned ell,
                                      const CensusOptions& options) {
  validate_pair_gap(k);
  if (ell < 1 || ell > 62) throw DomainError("ell must lie in [1, 62]");
  const auto uk = static_cast<std::uint64_t>(k);
  const auto modulus = std::int64_t{1} << ell;
  const ScanPlan plan = plan_scan(scope.largest_p(), uk, options);
  return scan_primes<DivisibilityCount>(
      plan, options, false, [] { return DivisibilityCount{}; },
      [&](DivisibilityCount& acc, std::uint64_t p, const WindowView& phi,
          const WindowView&) {
        if (phi[p + uk] != p + uk - 1) return;
        const std::int64_t t =
            static_cast<std::int64_t>(phi[p - 1]) - static_cast<std::int64_t>(phi[p + uk - 1]);
        ++acc.pair_count;
        if (t % modulus == 0) ++acc.divisible;
      },
      [](DivisibilityCount& total, const DivisibilityCount& part) {
        total.divisible += part.divisible;
        total.pair_count += part.pair_count;
      });
}

SmoothPairReport smooth_pair_search(std::int64_t k, std::uint64_t search_limit,
                                    const CensusOptions& options) {
  validate_pair_gap(k);
  if (search_limit < 3) return {};
  const auto uk = static_cast<std::uint64_t>(k);
  const ScanPlan plan = plan_scan(search_limit, uk, options);
  return scan_primes<SmoothPairReport>(
      plan, options, true, [] { return SmoothPairReport{}; },
      [uk](SmoothPairReport& acc, std::uint64_t p, const WindowView& phi,
           const WindowView& largest) {
        if (phi[p + uk] != p + uk - 1) return;
        if (largest[p - 1] > uk || largest[p + uk - 1] > uk) return;
        acc.candidates.push_back(p);
        if (s_sign(p, uk, phi[p - 1], phi[p + uk - 1]) == 0) acc.s_zero.push_back(p);
      },
      [](SmoothPairReport& total, SmoothPairReport& part) {
        total.candidates.insert(total.candidates.end(), part.candidates.begin(),
                                part.candidates.end());
        total.s_zero.insert(total.s_zero.end(), part.s_zero.begin(), part.s_zero.end());
      });
}

long double predicted_count(std::int64_t k, long double x, long double c_k) {
  validate_pair_gap(k);
  if (!(x >= 3)) throw DomainError("predicted_count requires x >= 3");
  if (!(c_k > 0)) throw DomainError("predicted_count requires C_k > 0");
  const long double log_x = std::log(x);
  return c_k * x / (log_x * log_x);
}

std::string census_csv_header() {
  return "k,mode,bound,pair_count,t_neg,t_zero,t_pos,s_neg,s_zero,s_pos,st_agree\n";
}

std::string to_csv_row(const CensusResult& r) {
  std::string row = std::to_string(r.k);
  row += ',';
  row += to_string(r.scope.mode);
  for (const std::uint64_t v : {r.scope.bound, r.pair_count, r.t_neg, r.t_zero, r.t_pos, r.s_neg,
                                r.s_zero, r.s_pos, r.st_agree}) {
    row += ',';
    row += std::to_string(v);
  }
  row += '\n';
  return row;
}

}  // namespace primebias
