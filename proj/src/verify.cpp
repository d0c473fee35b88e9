#include "prl/verify.hpp"

#include <sstream>

#include "prl/practicals.hpp"
#include "prl/search.hpp"
#include "prl/sfunction.hpp"

namespace prl {

namespace {

std::string str(int64_t v) { return std::to_string(v); }

}  // namespace

SuiteResult verify_dusart_suite(const Sieve& sieve, int64_t k_max) {
  if (k_max < 6) throw ConfigError("dusart suite requires k_max >= 6");
  SuiteResult result{"dusart", {}};
  int64_t lower_violations = 0;
  int64_t upper_violations = 0;
  int64_t first_lower = 0;
  int64_t first_upper = 0;
  sieve.for_each_prime_indexed([&](int64_t k, int64_t p) {
    // Conservative float margins: a pass must survive rounding the bound
    // against it.
    if (k >= 2 &&
        static_cast<long double>(p) < dusart_lower(k) * (1.0L - 1e-15L)) {
      if (lower_violations++ == 0) first_lower = k;
    }
    if (k >= 6 &&
        static_cast<long double>(p) > rosser_upper(k) * (1.0L + 1e-15L)) {
      if (upper_violations++ == 0) first_upper = k;
    }
    return k < k_max;
  });
  result.checks.push_back(
      {"lower bound p_k >= k(log k + log log k - 1), k in [2, " + str(k_max) +
           "]",
       lower_violations == 0,
       lower_violations == 0
           ? "zero violations"
           : str(lower_violations) + " violations, first at k = " +
                 str(first_lower)});
  result.checks.push_back(
      {"upper bound p_k <= k(log k + log log k), k in [6, " + str(k_max) + "]",
       upper_violations == 0,
       upper_violations == 0
           ? "zero violations"
           : str(upper_violations) + " violations, first at k = " +
                 str(first_upper)});
  return result;
}

SuiteResult verify_remarks_suite(const Sieve& sieve, int64_t m_max,
                                 int64_t n_max) {
  if (m_max < 1 || n_max < 44) {
    throw ConfigError("remarks suite requires m_max >= 1, n_max >= 44");
  }
  SuiteResult result{"remarks", {}};

  // One pass collects the first m_max composites and pi up to the last of
  // them; a second builds pi up to 4*n_max for the inequality family.
  std::vector<int64_t> composites;
  composites.reserve(size_t(m_max));
  std::vector<int32_t> pi_small{0};  // pi_small[n] = pi(n)
  int64_t prev_pi = 0;
  sieve.scan_pi({0, 0, 1}, [&](int64_t n, int64_t pi_n) {
    pi_small.push_back(int32_t(pi_n));
    if (n >= 4 && pi_n == prev_pi) composites.push_back(n);
    prev_pi = pi_n;
    return int64_t(composites.size()) < m_max;
  });

  int64_t r12_violations = 0;
  int64_t first12 = 0;
  for (int64_t m = 1; m <= m_max; ++m) {
    int64_t n = pi_small[size_t(composites[size_t(m - 1)])];
    if (pi_small[size_t(m + n)] != n) {
      if (r12_violations++ == 0) first12 = m;
    }
  }
  result.checks.push_back(
      {"pi(m + pi(c_m)) = pi(c_m) for m in [1, " + str(m_max) + "]",
       r12_violations == 0,
       r12_violations == 0 ? "zero violations"
                           : str(r12_violations) +
                                 " violations, first at m = " + str(first12)});

  std::vector<int32_t> pi4(size_t(4 * n_max) + 1, 0);
  ScanOptions to_4n;
  to_4n.limit = 4 * n_max;
  sieve.scan_pi({0, 0, 1},
                [&](int64_t n, int64_t pi_n) {
                  pi4[size_t(n)] = int32_t(pi_n);
                  return true;
                },
                to_4n);
  int64_t r13_violations = 0;
  int64_t first13 = 0;
  for (int64_t n = 1; n <= n_max; ++n) {
    bool ok = pi4[size_t(n)] < n + 1 && pi4[size_t(2 * n)] <= n &&
              pi4[size_t(3 * n)] <= n + 1 && pi4[size_t(4 * n)] < n + 4;
    if (!ok && r13_violations++ == 0) first13 = n;
  }
  result.checks.push_back(
      {"pi(n) < n+1, pi(2n) <= n, pi(3n) <= n+1, pi(4n) < n+4 for n in [1, " +
           str(n_max) + "]",
       r13_violations == 0,
       r13_violations == 0 ? "zero violations"
                           : str(r13_violations) +
                                 " violations, first at n = " + str(first13)});

  bool small44 = true;
  for (int64_t n = 1; n <= 44; ++n) {
    if (!(pi4[size_t(4 * n)] < n + 4)) small44 = false;
  }
  result.checks.push_back({"pi(4n) < n+4 individually for n in [1, 44]",
                           small44,
                           small44 ? "all 44 cases hold" : "violation"});
  return result;
}

SuiteResult verify_growth_suite(const Sieve& sieve, int64_t m_max) {
  GrowthReport growth = verify_growth(sieve, m_max);
  SuiteResult result{"growth", {}};
  auto flatten = [&](const std::vector<GrowthCheck>& checks,
                     const std::string& family) {
    bool all = true;
    std::string first;
    for (const GrowthCheck& c : checks) {
      if (!c.pass && all) {
        all = false;
        first = "m = " + str(c.m) + ": " + c.detail;
      }
    }
    result.checks.push_back({family, all,
                             all ? str(int64_t(checks.size())) + " cases hold"
                                 : "first failure " + first});
  };
  flatten(growth.recurrence, "(m-1)S(m+1) > mS(m)");
  flatten(growth.envelope, "e^{m-1}/(m-1) < S(m) < (m-1)e^{m+1}");
  flatten(growth.least_argmax, "least maximizing k > e^{m-1}/(m-1)^2");
  flatten(growth.root_monotone,
          "S(m)^{1/m} strictly increasing (sampled, reported)");
  return result;
}

SuiteResult verify_interval_cover_suite(const Sieve& sieve, int64_t m_max,
                                        int64_t a_lo) {
  SuiteResult result{"interval-cover", {}};
  for (int64_t m = 1; m <= m_max; ++m) {
    IntervalCoverResult cover = interval_cover_check(sieve, m, a_lo);
    std::ostringstream detail;
    detail << "window [" << cover.window_lo << ", " << cover.window_hi
           << "], " << cover.via_intervals << " via intervals, "
           << cover.via_witness << " via witnesses";
    if (!cover.covered) detail << ", " << cover.uncovered.size() << " uncovered";
    result.checks.push_back({"cover m = " + str(m), cover.covered,
                             detail.str()});
  }
  return result;
}

SuiteResult verify_practical_oracle_suite(int64_t n_max, int64_t count_x) {
  SuiteResult result{"practical-oracle", {}};
  int64_t mismatches = 0;
  int64_t first = 0;
  for (int64_t n = 1; n <= n_max; ++n) {
    if (is_practical(n) != is_practical_by_subset_sum(n)) {
      if (mismatches++ == 0) first = n;
    }
  }
  result.checks.push_back(
      {"structural criterion = subset-sum oracle for n in [1, " + str(n_max) +
           "]",
       mismatches == 0,
       mismatches == 0
           ? "zero mismatches"
           : str(mismatches) + " mismatches, first at n = " + str(first)});

  int64_t structural = practical_count(count_x);
  int64_t oracle = 0;
  for (int64_t n = 1; n <= count_x; ++n) {
    if (n == 1 || (n % 2 == 0 && is_practical_by_subset_sum(n))) ++oracle;
  }
  result.checks.push_back(
      {"practical_count(" + str(count_x) + ") matches oracle count",
       structural == oracle,
       "structural " + str(structural) + ", oracle " + str(oracle)});

  TFunctionResult t1 = compute_T(1);
  std::string argmax;
  for (int64_t k : t1.argmax_ks) argmax += (argmax.empty() ? "" : ",") + str(k);
  result.checks.push_back(
      {"T(1) = 0 with reported stabilization cutoff", t1.t_value == 0,
       "T(1) = " + str(t1.t_value) + ", argmax k {" + argmax +
           "}, cutoff k = " + str(t1.cutoff_used) + " (q = " +
           str(t1.q_at_cutoff) + ")"});
  return result;
}

SuiteResult verify_conj41_suite(const Sieve& sieve, int64_t m_max) {
  SuiteResult result{"conj41", {}};
  for (int64_t m = 1; m <= m_max; ++m) {
    Conj41Witnesses w = conj41_witnesses(sieve, m);
    auto note = [&](const SearchOutcome& o, const char* what,
                    bool may_be_empty) {
      std::string name = std::string(what) + ", m = " + str(m);
      if (o.witness_n.has_value()) {
        result.checks.push_back({name, true,
                                 "least k = " + str(*o.witness_n) +
                                     " (value " + str(o.left_value) + ")"});
      } else if (may_be_empty &&
                 o.note.find("no witness possible") != std::string::npos) {
        result.checks.push_back(
            {name, true, "provably empty: k*m - p_k stays negative"});
      } else {
        result.checks.push_back(
            {name, false, "absent up to k = " + str(o.scanned_up_to)});
      }
    };
    note(w.km_minus_pk_square, "k*m - p_k square", true);
    note(w.pk_minus_km_square, "p_k - k*m square", false);
    note(w.km_minus_pk_prime, "k*m - p_k prime", true);
    note(w.pk_minus_km_prime, "p_k - k*m prime", false);
  }
  return result;
}

SuiteResult verify_conj44_suite(const Sieve& sieve, int64_t m_max) {
  Conj44Result conj = verify_conj44(sieve, m_max);
  SuiteResult result{"conj44", {}};
  std::string detail =
      "checked m in [1, " + str(m_max) + "], largest witness n = " +
      str(conj.max_witness) + " at m = " + str(conj.max_witness_m);
  if (!conj.pass()) {
    detail += ", misses at m =";
    for (int64_t m : conj.misses) detail += " " + str(m);
  }
  result.checks.push_back(
      {"(m+n) | (p_m + p_n) with n < m(m-1) for m > 2", conj.pass(), detail});
  return result;
}

}  // namespace prl
