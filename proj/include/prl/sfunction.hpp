#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prl/primes.hpp"

namespace prl {

// S(m) = max over k >= 1 of k*m - p_k. The max is provably attained for
// some k <= floor(e^{m+1}).
struct SFunctionResult {
  int64_t m = 0;
  int64_t s_value = 0;
  std::vector<int64_t> argmax_ks;  // every k attaining the max, ascending
  int64_t cutoff_used = 0;         // last k scanned
  bool early_terminated = false;
};

struct SFunctionOptions {
  // When true the scan stops as soon as the Dusart lower bound proves no
  // later k can improve the running max; otherwise it runs to the full
  // floor(e^{m+1}) cutoff.
  bool early_termination = true;
};

SFunctionResult compute_S(const Sieve& sieve, int64_t m,
                          const SFunctionOptions& opts = {});

// floor(e^exponent), computed in extended precision with a verified
// neighborhood check so the floor cannot sit on a rounding boundary.
int64_t exp_floor(int exponent);

struct GrowthCheck {
  int64_t m = 0;
  bool pass = false;
  std::string detail;
};

struct GrowthReport {
  int64_t m_max = 0;
  std::vector<GrowthCheck> recurrence;     // (m-1)S(m+1) > mS(m), m = 1..m_max-1
  std::vector<GrowthCheck> envelope;       // e^{m-1}/(m-1) < S(m) < (m-1)e^{m+1}, m = 3..m_max
  std::vector<GrowthCheck> least_argmax;   // least maximizing k > e^{m-1}/(m-1)^2, m = 3..m_max
  std::vector<GrowthCheck> root_monotone;  // S(m)^{1/m} < S(m+1)^{1/(m+1)}, sampled, reported only

  bool required_pass() const;  // recurrence + envelope + least_argmax
  bool all_pass() const;
};

// Evaluates the growth inequalities for every m <= m_max. Real-valued
// endpoints are rounded conservatively: lower bounds up, upper bounds
// down, so a pass is never an artifact of rounding.
GrowthReport verify_growth(const Sieve& sieve, int64_t m_max);

// Mechanical check of the covering identity behind the S_m
// characterization: the intervals
//   I_k = {k*m - p_{k+1} + 1, ..., k*m - p_{k+1} + m},  k = 0, 1, 2, ...
// together with directly-found witnesses of pi(n) = (n+a)/m must cover
// every integer a in [a_lo, S(m)].
struct IntervalCoverResult {
  bool covered = false;
  int64_t m = 0;
  int64_t window_lo = 0;
  int64_t window_hi = 0;      // = S(m)
  int64_t via_intervals = 0;  // integers covered by some I_k
  int64_t via_witness = 0;    // gap integers resolved by direct search
  std::vector<int64_t> uncovered;
};

IntervalCoverResult interval_cover_check(const Sieve& sieve, int64_t m,
                                         int64_t a_lo);

}  // namespace prl
