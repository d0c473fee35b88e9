#include "prl/practicals.hpp"

#include <cmath>
#include <fstream>
#include <system_error>

namespace prl {

bool is_practical(int64_t n) {
  if (n < 1) throw ConfigError("is_practical requires n >= 1");
  if (n == 1) return true;
  if (n % 2 != 0) return false;
  Factorization f = factorize(n);
  // f.factors.front() is 2 since n is even.
  int64_t sigma_partial = 0;
  for (size_t i = 0; i < f.factors.size(); ++i) {
    const PrimePower& pp = f.factors[i];
    if (i > 0 && pp.prime > sigma_partial + 1) return false;
    int64_t term = 1;
    int64_t power = 1;
    for (int e = 0; e < pp.exponent; ++e) {
      power *= pp.prime;
      term += power;
    }
    sigma_partial = (i == 0) ? term : sigma_partial * term;
  }
  return true;
}

bool is_practical_by_subset_sum(int64_t n) {
  if (n < 1) throw ConfigError("subset-sum oracle requires n >= 1");
  if (n == 1) return true;
  std::vector<int64_t> divs;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    divs.push_back(d);
    if (d != n / d) divs.push_back(n / d);
  }
  // reach[s] = some subset of distinct divisors sums to s, for s <= n.
  size_t words = size_t(n / 64) + 1;
  std::vector<uint64_t> reach(words, 0);
  reach[0] = 1;
  for (int64_t d : divs) {
    if (d > n) continue;
    // reach |= reach << d, clipped to bit n.
    size_t word_shift = size_t(d / 64);
    int bit_shift = int(d % 64);
    for (size_t w = words; w-- > word_shift; ) {
      uint64_t v = reach[w - word_shift] << bit_shift;
      if (bit_shift != 0 && w > word_shift) {
        v |= reach[w - word_shift - 1] >> (64 - bit_shift);
      }
      reach[w] |= v;
    }
  }
  for (int64_t s = 1; s <= n; ++s) {
    if (((reach[size_t(s / 64)] >> (s % 64)) & 1) == 0) return false;
  }
  return true;
}

int64_t practical_count(int64_t x, const PracticalConfig& cfg) {
  if (x < 1) throw ConfigError("practical_count requires x >= 1");
  if (x > cfg.bound) {
    throw BoundExceededError("practical_count beyond configured bound");
  }
  int64_t count = 1;  // q_1 = 1
  for (int64_t n = 2; n <= x; n += 2) {
    if (is_practical(n)) ++count;
  }
  return count;
}

int64_t kth_practical(int64_t k, const PracticalConfig& cfg) {
  if (k < 1) throw ConfigError("kth_practical requires k >= 1");
  if (k == 1) return 1;
  int64_t seen = 1;
  for (int64_t n = 2; n <= cfg.bound; n += 2) {
    if (is_practical(n) && ++seen == k) return n;
  }
  throw BoundExceededError("q_k beyond configured practical bound");
}

TFunctionResult compute_T(int64_t m, const PracticalConfig& cfg) {
  if (m < 1) throw ConfigError("compute_T requires m >= 1");
  // No analogue of the prime-side cutoff is proven for practical numbers,
  // so stabilization is heuristic: the scan continues while
  //   q_k <= scan_mult * m * log(q_k) + scan_add
  // and, independently, until k*m - q_k has stayed negative for a full
  // decade of k beyond the last non-negative term.
  constexpr long double scan_mult = 8.0L;
  constexpr long double scan_add = 64.0L;
  TFunctionResult result;
  result.m = m;
  result.t_value = m - 1;  // k = 1, q_1 = 1
  result.argmax_ks = {1};
  result.cutoff_used = 1;
  result.q_at_cutoff = 1;
  int64_t last_nonneg_k = 1;
  bool settled = false;
  for_each_practical(2, cfg.bound + 1, [&](int64_t k, int64_t q) {
    int64_t v = k * m - q;
    if (v > result.t_value) {
      result.t_value = v;
      result.argmax_ks.assign(1, k);
    } else if (v == result.t_value) {
      result.argmax_ks.push_back(k);
    }
    if (v >= 0) last_nonneg_k = k;
    result.cutoff_used = k;
    result.q_at_cutoff = q;
    bool past_window =
        static_cast<long double>(q) >
        scan_mult * static_cast<long double>(m) *
                std::log(static_cast<long double>(q)) +
            scan_add;
    if (past_window && k >= 10 * last_nonneg_k) {
      settled = true;
      return false;
    }
    return true;
  });
  if (!settled) {
    throw CutoffNotReachedError(
        "T(" + std::to_string(m) +
        ") did not stabilize within the practical bound " +
        std::to_string(cfg.bound));
  }
  return result;
}

void write_practicals_csv(const std::filesystem::path& path, int64_t k_max,
                          const PracticalConfig& cfg) {
  if (k_max < 1) throw ConfigError("csv export requires k_max >= 1");
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << "k,q\n";
    int64_t written = 0;
    for_each_practical(1, cfg.bound + 1, [&](int64_t k, int64_t q) {
      out << k << ',' << q << '\n';
      written = k;
      return k < k_max;
    });
    if (written < k_max) {
      throw BoundExceededError("q_k beyond configured practical bound");
    }
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error("rename failed for " + path.string() + ": " + ec.message());
  }
}

}  // namespace prl
