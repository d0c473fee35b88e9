#include "prl/arith.hpp"

#include <cmath>

namespace prl {

namespace {

// Primes up to 2^16, enough to factor anything below 2^32 and to leave at
// most one prime cofactor for larger inputs.
const std::vector<int32_t>& small_primes() {
  static const std::vector<int32_t> primes = [] {
    constexpr int64_t limit = 1 << 16;
    std::vector<uint8_t> composite(limit + 1, 0);
    std::vector<int32_t> ps;
    for (int64_t i = 2; i <= limit; ++i) {
      if (composite[size_t(i)]) continue;
      ps.push_back(int32_t(i));
      for (int64_t j = i * i; j <= limit; j += i) composite[size_t(j)] = 1;
    }
    return ps;
  }();
  return primes;
}

}  // namespace

Factorization factorize(int64_t n) {
  if (n < 1) throw ConfigError("factorize requires n >= 1");
  Factorization f;
  f.value = n;
  int64_t rest = n;
  for (int32_t p32 : small_primes()) {
    int64_t p = p32;
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (rest >= (int64_t{1} << 32)) {
    // Above the table's reach; continue trial division by odd candidates.
    for (int64_t p = (int64_t{1} << 16) + 1; p * p <= rest; p += 2) {
      if (rest % p != 0) continue;
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      f.factors.push_back({p, e});
    }
  }
  if (rest > 1) f.factors.push_back({rest, 1});
  return f;
}

int64_t euler_phi(int64_t n) {
  Factorization f = factorize(n);
  int64_t phi = n;
  for (const PrimePower& pp : f.factors) phi -= phi / pp.prime;
  return phi;
}

int64_t divisor_count(int64_t n) {
  Factorization f = factorize(n);
  int64_t count = 1;
  for (const PrimePower& pp : f.factors) count *= pp.exponent + 1;
  return count;
}

int64_t divisor_sum(int64_t n) {
  Factorization f = factorize(n);
  int64_t sum = 1;
  for (const PrimePower& pp : f.factors) {
    int64_t term = 1;
    int64_t power = 1;
    for (int e = 0; e < pp.exponent; ++e) {
      power *= pp.prime;
      term += power;
    }
    sum *= term;
  }
  return sum;
}

int64_t fibonacci(int64_t k) {
  if (k < 0) throw ConfigError("fibonacci requires k >= 0");
  if (k > 92) throw OverflowError("fibonacci(k) exceeds int64 for k > 92");
  int64_t a = 0, b = 1;
  for (int64_t i = 0; i < k; ++i) {
    int64_t next = a + b;
    a = b;
    b = next;
  }
  return a;
}

int64_t isqrt(int64_t n) {
  if (n < 0) throw ConfigError("isqrt requires n >= 0");
  int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  // 128-bit squares: near 2^63 the candidates overflow int64.
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(int64_t n) {
  if (n < 0) return false;
  int64_t r = isqrt(n);
  return r * r == n;
}

namespace {

template <bool Phi>
void multiplicative_range(int64_t lo, std::span<int64_t> out) {
  if (lo < 1) throw ConfigError("range evaluation requires lo >= 1");
  if (out.empty()) return;
  int64_t hi = lo + int64_t(out.size());  // exclusive
  if (hi > (int64_t{1} << 32)) {
    throw ConfigError("range evaluation supports arguments below 2^32");
  }
  std::vector<int64_t> rest(out.size());
  for (size_t i = 0; i < out.size(); ++i) {
    rest[i] = lo + int64_t(i);
    out[i] = Phi ? lo + int64_t(i) : 1;
  }
  for (int32_t p32 : small_primes()) {
    int64_t p = p32;
    if (p * p >= hi) break;
    for (int64_t x = (lo + p - 1) / p * p; x < hi; x += p) {
      size_t i = size_t(x - lo);
      if constexpr (Phi) {
        out[i] -= out[i] / p;
        do {
          rest[i] /= p;
        } while (rest[i] % p == 0);
      } else {
        int64_t term = 1;
        int64_t power = 1;
        do {
          rest[i] /= p;
          power *= p;
          term += power;
        } while (rest[i] % p == 0);
        out[i] *= term;
      }
    }
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (rest[i] > 1) {
      if constexpr (Phi) {
        out[i] -= out[i] / rest[i];
      } else {
        out[i] *= 1 + rest[i];
      }
    }
  }
}

}  // namespace

void phi_range(int64_t lo, std::span<int64_t> out) {
  multiplicative_range<true>(lo, out);
}

void sigma_range(int64_t lo, std::span<int64_t> out) {
  multiplicative_range<false>(lo, out);
}

}  // namespace prl
