// Independent brute-force oracles used only by tests. These deliberately
// avoid the library's sieve/factorization paths so the two never share a
// bug.
#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<int64_t> primes_up_to(int64_t limit) {
  std::vector<int64_t> ps;
  for (int64_t n = 2; n <= limit; ++n) {
    if (is_prime(n)) ps.push_back(n);
  }
  return ps;
}

// pi_table[x] = pi(x) for 0 <= x <= limit, by direct count.
inline std::vector<int64_t> pi_table(int64_t limit) {
  std::vector<int64_t> table(size_t(limit) + 1, 0);
  int64_t count = 0;
  for (int64_t x = 0; x <= limit; ++x) {
    if (is_prime(x)) ++count;
    table[size_t(x)] = count;
  }
  return table;
}

inline std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> divs;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    divs.push_back(d);
    if (d != n / d) divs.push_back(n / d);
  }
  return divs;
}

inline int64_t divisor_count(int64_t n) {
  return int64_t(divisors(n).size());
}

inline int64_t divisor_sum(int64_t n) {
  int64_t sum = 0;
  for (int64_t d : divisors(n)) sum += d;
  return sum;
}

inline int64_t gcd(int64_t a, int64_t b) { return b == 0 ? a : gcd(b, a % b); }

inline int64_t euler_phi(int64_t n) {
  int64_t count = 0;
  for (int64_t j = 1; j <= n; ++j) {
    if (gcd(j, n) == 1) ++count;
  }
  return count;
}

// Subset-sum practicality straight from the definition.
inline bool is_practical(int64_t n) {
  if (n == 1) return true;
  std::vector<uint8_t> reach(size_t(n) + 1, 0);
  reach[0] = 1;
  for (int64_t d : divisors(n)) {
    if (d > n) continue;
    for (int64_t s = n; s >= d; --s) {
      if (reach[size_t(s - d)]) reach[size_t(s)] = 1;
    }
  }
  for (int64_t s = 1; s <= n; ++s) {
    if (!reach[size_t(s)]) return false;
  }
  return true;
}

}  // namespace oracle
