#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prl/errors.hpp"

namespace prl {

struct PrimePower {
  int64_t prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

// Canonical factorization: strictly increasing primes, exponents >= 1,
// empty for value 1.
struct Factorization {
  int64_t value = 1;
  std::vector<PrimePower> factors;
};

// Trial division against a fixed table of small primes. Exact for any
// n >= 1 whose second-largest prime factor is below 2^16 (in particular
// for all n < 2^32).
Factorization factorize(int64_t n);

// Count of 1 <= j <= n coprime to n.
int64_t euler_phi(int64_t n);

// Number of positive divisors.
int64_t divisor_count(int64_t n);

// Sum of all positive divisors.
int64_t divisor_sum(int64_t n);

// F_0 = 0, F_1 = 1, F_{k+1} = F_k + F_{k-1}. Throws OverflowError for
// k > 92 (F_93 does not fit in int64).
int64_t fibonacci(int64_t k);

// True iff n = t*t for some integer t >= 0; false for negative n.
bool is_square(int64_t n);

// Largest r with r*r <= n. Requires n >= 0.
int64_t isqrt(int64_t n);

// Batch evaluation over a contiguous range: out[i] = f(lo + i).
// Far cheaper than per-point factorization when scanning millions of
// consecutive arguments. Requires lo >= 1 and lo + out.size() <= 2^32.
void phi_range(int64_t lo, std::span<int64_t> out);    // Euler phi
void sigma_range(int64_t lo, std::span<int64_t> out);  // divisor sum

}  // namespace prl
