#include "prl/sfunction.hpp"

#include <cmath>

#include "prl/search.hpp"

namespace prl {

int64_t exp_floor(int exponent) {
  if (exponent < 1 || exponent > 43) {
    throw ConfigError("exp_floor supports exponents 1..43");
  }
  long double v = std::exp(static_cast<long double>(exponent));
  int64_t c = static_cast<int64_t>(std::floor(v));
  while (static_cast<long double>(c) > v) --c;
  while (static_cast<long double>(c + 1) <= v) ++c;
  // e^exponent is irrational; reject if the value sits too close to an
  // integer for extended precision to decide the floor.
  long double frac = v - static_cast<long double>(c);
  long double tol = v * 1e-15L;
  if (frac < tol || (1.0L - frac) < tol) {
    throw Error("exp_floor cannot certify the floor boundary");
  }
  return c;
}

SFunctionResult compute_S(const Sieve& sieve, int64_t m,
                          const SFunctionOptions& opts) {
  if (m < 1) throw ConfigError("compute_S requires m >= 1");
  SFunctionResult result;
  result.m = m;
  const int64_t cutoff = exp_floor(int(m + 1));
  bool have_first = false;
  bool finished = false;
  sieve.for_each_prime_indexed([&](int64_t k, int64_t p) {
    int64_t v = k * m - p;
    if (!have_first || v > result.s_value) {
      result.s_value = v;
      result.argmax_ks.assign(1, k);
      have_first = true;
    } else if (v == result.s_value) {
      result.argmax_ks.push_back(k);
    }
    result.cutoff_used = k;
    if (k >= cutoff) {
      finished = true;
      return false;
    }
    if (opts.early_termination && kscan_settled(k, m, result.s_value)) {
      result.early_terminated = true;
      finished = true;
      return false;
    }
    return true;
  });
  if (!finished) {
    throw BoundExceededError("S(" + std::to_string(m) +
                             ") scan exceeds the sieve bound");
  }
  return result;
}

namespace {

// Conservative real comparisons: lower endpoints rounded up, upper
// endpoints rounded down by a relative margin well above long-double
// rounding error.
constexpr long double kRelMargin = 1e-15L;

long double round_up(long double v) { return v + std::abs(v) * kRelMargin; }
long double round_down(long double v) { return v - std::abs(v) * kRelMargin; }

}  // namespace

bool GrowthReport::required_pass() const {
  auto ok = [](const std::vector<GrowthCheck>& cs) {
    for (const GrowthCheck& c : cs) {
      if (!c.pass) return false;
    }
    return true;
  };
  return ok(recurrence) && ok(envelope) && ok(least_argmax);
}

bool GrowthReport::all_pass() const {
  for (const GrowthCheck& c : root_monotone) {
    if (!c.pass) return false;
  }
  return required_pass();
}

GrowthReport verify_growth(const Sieve& sieve, int64_t m_max) {
  if (m_max < 2) throw ConfigError("verify_growth requires m_max >= 2");
  GrowthReport report;
  report.m_max = m_max;
  std::vector<SFunctionResult> s(size_t(m_max) + 1);
  for (int64_t m = 1; m <= m_max; ++m) s[size_t(m)] = compute_S(sieve, m);

  for (int64_t m = 1; m + 1 <= m_max; ++m) {
    int64_t lhs = (m - 1) * s[size_t(m + 1)].s_value;
    int64_t rhs = m * s[size_t(m)].s_value;
    report.recurrence.push_back(
        {m, lhs > rhs,
         std::to_string(m - 1) + "*S(" + std::to_string(m + 1) + ") = " +
             std::to_string(lhs) + " > " + std::to_string(m) + "*S(" +
             std::to_string(m) + ") = " + std::to_string(rhs)});
  }

  for (int64_t m = 3; m <= m_max; ++m) {
    long double em1 = std::exp(static_cast<long double>(m - 1));
    long double ep1 = std::exp(static_cast<long double>(m + 1));
    long double lower = round_up(em1 / (m - 1));
    long double upper = round_down((m - 1) * ep1);
    long double sv = static_cast<long double>(s[size_t(m)].s_value);
    report.envelope.push_back(
        {m, lower < sv && sv < upper,
         "e^" + std::to_string(m - 1) + "/" + std::to_string(m - 1) + " ~ " +
             std::to_string(double(lower)) + " < S(" + std::to_string(m) +
             ") = " + std::to_string(s[size_t(m)].s_value) + " < " +
             std::to_string(double(upper))});

    long double k_bound = round_up(em1 / ((m - 1) * (m - 1)));
    int64_t least_k = s[size_t(m)].argmax_ks.front();
    report.least_argmax.push_back(
        {m, static_cast<long double>(least_k) > k_bound,
         "least maximizing k = " + std::to_string(least_k) + " > " +
             std::to_string(double(k_bound))});
  }

  for (int64_t m = 1; m + 1 <= m_max; ++m) {
    // S(1) = -1 is the only non-positive value; any later root beats it.
    long double a = s[size_t(m)].s_value <= 0
                        ? -1.0L
                        : std::pow(static_cast<long double>(s[size_t(m)].s_value),
                                   1.0L / m);
    long double b = std::pow(static_cast<long double>(s[size_t(m + 1)].s_value),
                             1.0L / (m + 1));
    report.root_monotone.push_back(
        {m, a < b,
         "S(" + std::to_string(m) + ")^(1/" + std::to_string(m) + ") ~ " +
             std::to_string(double(a)) + " < S(" + std::to_string(m + 1) +
             ")^(1/" + std::to_string(m + 1) + ") ~ " +
             std::to_string(double(b))});
  }
  return report;
}

IntervalCoverResult interval_cover_check(const Sieve& sieve, int64_t m,
                                         int64_t a_lo) {
  if (m < 1) throw ConfigError("interval_cover_check requires m >= 1");
  SFunctionResult s = compute_S(sieve, m);
  IntervalCoverResult result;
  result.m = m;
  result.window_lo = a_lo;
  result.window_hi = s.s_value;
  if (a_lo > s.s_value) {
    result.covered = true;
    return result;
  }
  std::vector<uint8_t> covered(size_t(s.s_value - a_lo + 1), 0);

  // I_k needs p_{k+1}: with the iterator one step ahead, prev_p is p_{k+1}
  // for the k about to be evaluated.
  PrimeIterator it(sieve);
  int64_t p_next = it.next();  // p_1
  for (int64_t k = 0;; ++k) {
    // I_k = [k*m - p_{k+1} + 1, k*m - p_{k+1} + m]
    int64_t lo = k * m - p_next + 1;
    int64_t hi = lo + m - 1;
    if (hi > s.s_value) {
      result.covered = false;
      result.uncovered.push_back(hi);  // interval escapes the window
      return result;
    }
    for (int64_t a = std::max(lo, a_lo); a <= hi; ++a) {
      covered[size_t(a - a_lo)] = 1;
    }
    // All later intervals sit strictly below a_lo once the Dusart bound
    // seals k*m - p_{k+1} + m below the window.
    if (kscan_settled(k + 1, m, a_lo - m)) break;
    p_next = it.next();
  }
  for (uint8_t c : covered) result.via_intervals += c;

  for (int64_t a = a_lo; a <= s.s_value; ++a) {
    if (covered[size_t(a - a_lo)]) continue;
    SearchOutcome found = least_n_ratio(sieve, m, a);
    if (!found.witness_n.has_value()) {
      result.uncovered.push_back(a);
    } else {
      ++result.via_witness;
    }
  }
  result.covered = result.uncovered.empty();
  return result;
}

}  // namespace prl
