#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prl/primes.hpp"

namespace prl {

enum class PredicateId {
  ratio,             // pi(n) = (n + a)/m, n > 1
  mn_eq_m_plus_n,    // pi(m*n) = m + n
  mn_eq_fib,         // pi(m*n) = F_m + n
  phi_n,             // pi(m*n) = phi(n)
  phi_sum,           // pi(m*n) = phi(m) + phi(n)
  phi_of_sum,        // pi(m*n) = phi(m + n)
  sigma_n,           // pi(m*n) = sigma(n)         (sigma = divisor sum)
  sigma_sum,         // pi(m*n) = sigma(m) + sigma(n)
  sigma_of_sum,      // pi(m*n) = sigma(m + n)
  divides_pm_pn,     // (m + n) | (p_m + p_n)
  pi_divides_pm_pn,  // pi(m*n) | (p_m + p_n)
  // least k forms behind conj41_witnesses:
  km_minus_pk_square,
  pk_minus_km_square,
  km_minus_pk_prime,
  pk_minus_km_prime,
};

std::string_view to_string(PredicateId id);
std::optional<PredicateId> predicate_from_string(std::string_view name);

struct PredicateSpec {
  PredicateId id = PredicateId::ratio;
  int64_t m = 1;
  std::optional<int64_t> a;  // ratio form only
  int64_t n_start = 1;
  int64_t n_limit = 0;  // 0 = per-predicate default
};

struct SearchOutcome {
  PredicateSpec spec;
  std::optional<int64_t> witness_n;  // least witness, absent if none found
  int64_t left_value = 0;            // both sides at the witness
  int64_t right_value = 0;
  int64_t scanned_up_to = 0;  // all n in [n_start, scanned_up_to] resolved
  double elapsed_ms = 0.0;
  std::string note;  // e.g. counterexample-candidate flag
};

// pi(n) = (n + a)/m for n > 1. Guaranteed to find a witness when
// a <= S(m); otherwise terminates once the Dusart bound rules out every
// remaining prime index and reports absence.
SearchOutcome least_n_ratio(const Sieve& sieve, int64_t m, int64_t a,
                            int64_t n_limit = 0);

// pi(m*n) = m + n, n >= 1. A witness exists for every m >= 5; for
// m <= 4 the scan terminates with a provable absence report.
SearchOutcome least_s(const Sieve& sieve, int64_t m, int64_t n_limit = 0);

// pi(m*n) = F_m + n, n >= 1, for m >= 4.
SearchOutcome least_f(const Sieve& sieve, int64_t m, int64_t n_limit = 0);

// variant must be one of phi_n, phi_sum, phi_of_sum.
SearchOutcome least_phi(const Sieve& sieve, int64_t m, PredicateId variant,
                        int64_t n_limit = 0);

// variant must be one of sigma_n, sigma_sum, sigma_of_sum. Preconditions
// per the underlying conjecture: m >= 2 for sigma_n, m >= 5 otherwise.
SearchOutcome least_sigma(const Sieve& sieve, int64_t m, PredicateId variant,
                          int64_t n_limit = 0);

// variant must be divides_pm_pn or pi_divides_pm_pn. For divides_pm_pn
// with m > 2 the default n_limit is m*(m-1) - 1; absence within that
// window is flagged as a counterexample candidate in the note.
SearchOutcome least_divisor_witness(const Sieve& sieve, int64_t m,
                                    PredicateId variant, int64_t n_limit = 0);

// The four least-k searches: k*m - p_k a square, p_k - k*m a square,
// k*m - p_k prime, p_k - k*m prime. The first and third terminate with a
// provable absence once k*m - p_k is permanently negative (resp. below 2);
// the others are bounded by k_limit.
struct Conj41Witnesses {
  SearchOutcome km_minus_pk_square;
  SearchOutcome pk_minus_km_square;
  SearchOutcome km_minus_pk_prime;
  SearchOutcome pk_minus_km_prime;
};

Conj41Witnesses conj41_witnesses(const Sieve& sieve, int64_t m,
                                 int64_t k_limit = 1'000'000);

// Re-evaluates a found witness from scratch: fresh pi() recount through
// the sieve plus fresh phi/tau/Fibonacci/divisibility evaluation. Returns
// true when both sides agree and equal the recorded values. Outcomes
// without a witness validate trivially.
bool revalidate(const Sieve& sieve, const SearchOutcome& outcome);

// Dispatch used by the reproduction harness and the CLI.
SearchOutcome run_predicate(const Sieve& sieve, const PredicateSpec& spec);

// Desk-scale verification that every m <= m_max admits n with
// (m + n) | (p_m + p_n), and with n < m*(m-1) when m > 2.
struct Conj44Result {
  int64_t m_max = 0;
  int64_t checked = 0;
  std::vector<int64_t> misses;       // m with no witness in window
  int64_t max_witness = 0;
  int64_t max_witness_m = 0;
  bool pass() const { return misses.empty(); }
};

Conj44Result verify_conj44(const Sieve& sieve, int64_t m_max);

}  // namespace prl
