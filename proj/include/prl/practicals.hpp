#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "prl/arith.hpp"
#include "prl/errors.hpp"

namespace prl {

struct PracticalConfig {
  int64_t bound = 100'000'000;  // largest value enumerations may reach
};

// Structural recognition (Stewart's condition): n = 1 is practical;
// otherwise n is practical iff its smallest prime factor is 2 and, writing
// n = p_1^{a_1} ... p_r^{a_r} with increasing primes, each p_{i+1} is at
// most 1 + divisor_sum(p_1^{a_1} ... p_i^{a_i}).
bool is_practical(int64_t n);

// Authoritative cross-check at small scale: subset-sum reachability over
// the divisors of n. Quadratic-ish in n; intended for n up to a few
// thousand.
bool is_practical_by_subset_sum(int64_t n);

// Exact count of practical numbers <= x.
int64_t practical_count(int64_t x, const PracticalConfig& cfg = {});

// The k-th practical number (q_1 = 1).
int64_t kth_practical(int64_t k, const PracticalConfig& cfg = {});

// Calls fn(k, q_k) for practical numbers in [lo, hi) ascending, where k is
// the global 1-based index; fn returns false to stop. Requires lo >= 1.
template <typename Fn>
void for_each_practical(int64_t lo, int64_t hi, Fn&& fn) {
  // Candidates are 1 and the even numbers; every odd practical number
  // except 1 would violate the structural criterion.
  int64_t k = 0;
  if (lo <= 1 && 1 < hi) {
    k = 1;
    if (!fn(int64_t{1}, int64_t{1})) return;
  } else if (lo > 1) {
    k = practical_count(lo - 1, PracticalConfig{hi});
  }
  for (int64_t n = std::max<int64_t>(2, (lo + 1) & ~int64_t{1}); n < hi;
       n += 2) {
    if (is_practical(n) && !fn(++k, n)) return;
  }
}

// T(m) = max over k >= 1 of k*m - q_k, with every maximizing k.
// The scan has no proven cutoff; it stops once the running maximum has
// provably-heuristically stabilized (see compute_T) and reports the
// cutoff it used.
struct TFunctionResult {
  int64_t m = 0;
  int64_t t_value = 0;
  std::vector<int64_t> argmax_ks;
  int64_t cutoff_used = 0;   // last k scanned
  int64_t q_at_cutoff = 0;   // q at that k
};

// Throws CutoffNotReachedError if cfg.bound is hit before stabilization.
TFunctionResult compute_T(int64_t m, const PracticalConfig& cfg = {});

// CSV export of (k, q_k) pairs for k = 1..k_max, header "k,q", written
// atomically like checkpoint files.
void write_practicals_csv(const std::filesystem::path& path, int64_t k_max,
                          const PracticalConfig& cfg = {});

}  // namespace prl
