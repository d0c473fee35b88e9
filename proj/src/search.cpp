#include "prl/search.hpp"

#include <chrono>

#include "prl/arith.hpp"

namespace prl {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

constexpr std::string_view kNoFurtherWitness =
    "no witness possible beyond scanned range (prime growth bound)";
constexpr std::string_view kNotFoundWithinBound = "no witness within bound";

// Buffered phi/sigma evaluation over ascending arguments.
class RangeFn {
 public:
  RangeFn(bool phi, int64_t first_arg) : phi_(phi) { refill(first_arg); }

  int64_t at(int64_t arg) {
    if (arg >= lo_ + int64_t(buf_.size())) refill(arg);
    return buf_[size_t(arg - lo_)];
  }

 private:
  void refill(int64_t arg) {
    constexpr int64_t block = int64_t{1} << 17;
    lo_ = arg;
    buf_.resize(size_t(block));
    std::span<int64_t> out(buf_);
    if (phi_) {
      phi_range(lo_, out);
    } else {
      sigma_range(lo_, out);
    }
  }

  bool phi_;
  std::vector<int64_t> buf_;
  int64_t lo_ = 0;
};

// Shared scaffolding for the prime-index scans behind the ratio-style
// predicates pi(x) = (x + a)/m restricted to x in an arithmetic set:
// for index k the unique candidate is x = k*m - a, valid iff
// p_k <= x < p_{k+1}.
struct KScanParams {
  int64_t m;
  int64_t a;             // pi(x) = (x + a)/m
  int64_t x_min;         // smallest admissible x (2 for ratio, m for mn forms)
  int64_t x_limit;       // resolve x up to here
  bool explicit_limit;   // absence at x_limit is a report, not an error
};

struct KScanHit {
  std::optional<int64_t> x;
  int64_t k = 0;
  int64_t resolved_x = 0;  // all admissible x <= resolved_x are settled
  bool settled = false;    // absence proven for every x, not just <= limit
};

KScanHit kscan(const Sieve& sieve, const KScanParams& prm) {
  KScanHit hit;
  PrimeIterator it(sieve);
  int64_t p = it.next();  // p_1
  for (int64_t k = 1;; ++k) {
    int64_t p_next;
    try {
      p_next = it.next();
    } catch (const BoundExceededError&) {
      // No prime in (p_k, bound]; every n <= bound in this interval still
      // has pi(n) = k.
      p_next = sieve.bound() + 1;
    }
    int64_t x = Sieve::checked_mul(k, prm.m) - prm.a;
    if (x >= prm.x_min && x >= p && x < p_next && x <= prm.x_limit) {
      hit.x = x;
      hit.k = k;
      hit.resolved_x = x;
      return hit;
    }
    if (kscan_settled(k + 1, prm.m, prm.a)) {
      // Absence is proven for every x, so an explicit window is resolved
      // in full.
      hit.resolved_x = prm.explicit_limit ? prm.x_limit : p_next - 1;
      hit.settled = true;
      return hit;
    }
    if (p_next > prm.x_limit) {
      if (!prm.explicit_limit) {
        // The default limit is the sieve bound itself; reaching it without
        // settling means a witness may still lie past the bound.
        throw BoundExceededError("witness search exceeds the sieve bound");
      }
      hit.resolved_x = prm.x_limit;
      return hit;
    }
    p = p_next;
  }
}

}  // namespace

std::string_view to_string(PredicateId id) {
  switch (id) {
    case PredicateId::ratio: return "ratio";
    case PredicateId::mn_eq_m_plus_n: return "mn_eq_m_plus_n";
    case PredicateId::mn_eq_fib: return "mn_eq_fib";
    case PredicateId::phi_n: return "phi_n";
    case PredicateId::phi_sum: return "phi_sum";
    case PredicateId::phi_of_sum: return "phi_of_sum";
    case PredicateId::sigma_n: return "sigma_n";
    case PredicateId::sigma_sum: return "sigma_sum";
    case PredicateId::sigma_of_sum: return "sigma_of_sum";
    case PredicateId::divides_pm_pn: return "divides_pm_pn";
    case PredicateId::pi_divides_pm_pn: return "pi_divides_pm_pn";
    case PredicateId::km_minus_pk_square: return "km_minus_pk_square";
    case PredicateId::pk_minus_km_square: return "pk_minus_km_square";
    case PredicateId::km_minus_pk_prime: return "km_minus_pk_prime";
    case PredicateId::pk_minus_km_prime: return "pk_minus_km_prime";
  }
  return "unknown";
}

std::optional<PredicateId> predicate_from_string(std::string_view name) {
  using P = PredicateId;
  for (P id : {P::ratio, P::mn_eq_m_plus_n, P::mn_eq_fib, P::phi_n,
               P::phi_sum, P::phi_of_sum, P::sigma_n, P::sigma_sum, P::sigma_of_sum,
               P::divides_pm_pn, P::pi_divides_pm_pn, P::km_minus_pk_square,
               P::pk_minus_km_square, P::km_minus_pk_prime,
               P::pk_minus_km_prime}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

SearchOutcome least_n_ratio(const Sieve& sieve, int64_t m, int64_t a,
                            int64_t n_limit) {
  if (m < 1) throw ConfigError("ratio search requires m >= 1");
  auto start = Clock::now();
  SearchOutcome out;
  out.spec = {PredicateId::ratio, m, a, 1, n_limit};
  bool explicit_limit = n_limit > 0;
  KScanParams prm{m, a, 2, explicit_limit ? std::min(n_limit, sieve.bound())
                                          : sieve.bound(),
                  explicit_limit};
  KScanHit hit = kscan(sieve, prm);
  if (hit.x.has_value()) {
    out.witness_n = *hit.x;
    out.left_value = hit.k;          // pi(n)
    out.right_value = hit.k;         // (n + a)/m
    out.scanned_up_to = *hit.x;
  } else {
    out.scanned_up_to = hit.resolved_x;
    out.note = hit.settled ? std::string(kNoFurtherWitness)
                           : std::string(kNotFoundWithinBound);
  }
  out.elapsed_ms = ms_since(start);
  return out;
}

namespace {

// Common body for pi(m*n) = m + n and pi(m*n) = F_m + n: with
// rhs_base = m resp. F_m, index k = rhs_base + n and x = m*n = k*m - a
// where a = m * rhs_base.
SearchOutcome least_linear_mn(const Sieve& sieve, PredicateId id, int64_t m,
                              int64_t rhs_base, int64_t n_limit) {
  auto start = Clock::now();
  SearchOutcome out;
  out.spec = {id, m, std::nullopt, 1, n_limit};
  bool explicit_limit = n_limit > 0;
  int64_t max_n = std::min(explicit_limit ? n_limit : sieve.bound() / m,
                           sieve.bound() / m);
  int64_t a = Sieve::checked_mul(m, rhs_base);
  KScanParams prm{m, a, m, Sieve::checked_mul(m, max_n), explicit_limit};
  KScanHit hit = kscan(sieve, prm);
  if (hit.x.has_value()) {
    out.witness_n = *hit.x / m;
    out.left_value = hit.k;                    // pi(m*n)
    out.right_value = rhs_base + *hit.x / m;   // m + n resp. F_m + n
    out.scanned_up_to = *hit.x / m;
  } else {
    out.scanned_up_to = hit.resolved_x / m;
    out.note = hit.settled ? std::string(kNoFurtherWitness)
                           : std::string(kNotFoundWithinBound);
  }
  out.elapsed_ms = ms_since(start);
  return out;
}

}  // namespace

SearchOutcome least_s(const Sieve& sieve, int64_t m, int64_t n_limit) {
  if (m < 1) throw ConfigError("least_s requires m >= 1");
  return least_linear_mn(sieve, PredicateId::mn_eq_m_plus_n, m, m, n_limit);
}

SearchOutcome least_f(const Sieve& sieve, int64_t m, int64_t n_limit) {
  if (m < 4) throw ConfigError("least_f requires m >= 4");
  return least_linear_mn(sieve, PredicateId::mn_eq_fib, m, fibonacci(m),
                         n_limit);
}

namespace {

SearchOutcome least_pointwise_rhs(const Sieve& sieve, PredicateId id,
                                  int64_t m, int64_t n_limit) {
  auto start = Clock::now();
  SearchOutcome out;
  out.spec = {id, m, std::nullopt, 1, n_limit};
  bool phi = id == PredicateId::phi_n || id == PredicateId::phi_sum ||
             id == PredicateId::phi_of_sum;
  bool of_sum =
      id == PredicateId::phi_of_sum || id == PredicateId::sigma_of_sum;
  bool with_base =
      id == PredicateId::phi_sum || id == PredicateId::sigma_sum;
  int64_t base = with_base ? (phi ? euler_phi(m) : divisor_sum(m)) : 0;
  int64_t shift = of_sum ? m : 0;

  int64_t max_n = sieve.bound() / m;
  if (n_limit > 0) {
    if (n_limit > max_n) {
      throw BoundExceededError("pi(m*n) scan beyond global bound");
    }
    max_n = n_limit;
  }
  RangeFn rhs_fn(phi, 1 + shift);
  sieve.scan_pi_multiples(m, 1, max_n, [&](int64_t n, int64_t pi_mn) {
    int64_t rhs = base + rhs_fn.at(n + shift);
    out.scanned_up_to = n;
    if (pi_mn == rhs) {
      out.witness_n = n;
      out.left_value = pi_mn;
      out.right_value = rhs;
      return false;
    }
    return true;
  });
  if (!out.witness_n.has_value()) out.note = kNotFoundWithinBound;
  out.elapsed_ms = ms_since(start);
  return out;
}

}  // namespace

SearchOutcome least_phi(const Sieve& sieve, int64_t m, PredicateId variant,
                        int64_t n_limit) {
  if (m < 1) throw ConfigError("least_phi requires m >= 1");
  if (variant != PredicateId::phi_n && variant != PredicateId::phi_sum &&
      variant != PredicateId::phi_of_sum) {
    throw ConfigError("least_phi variant must be phi_n|phi_sum|phi_of_sum");
  }
  return least_pointwise_rhs(sieve, variant, m, n_limit);
}

SearchOutcome least_sigma(const Sieve& sieve, int64_t m, PredicateId variant,
                        int64_t n_limit) {
  if (variant == PredicateId::sigma_n) {
    if (m < 2) throw ConfigError("sigma_n requires m >= 2");
  } else if (variant == PredicateId::sigma_sum ||
             variant == PredicateId::sigma_of_sum) {
    if (m < 5) throw ConfigError("sigma_sum/sigma_of_sum require m >= 5");
  } else {
    throw ConfigError("least_sigma variant must be sigma_n|sigma_sum|sigma_of_sum");
  }
  return least_pointwise_rhs(sieve, variant, m, n_limit);
}

SearchOutcome least_divisor_witness(const Sieve& sieve, int64_t m,
                                    PredicateId variant, int64_t n_limit) {
  if (m < 1) throw ConfigError("divisor witness search requires m >= 1");
  if (variant != PredicateId::divides_pm_pn &&
      variant != PredicateId::pi_divides_pm_pn) {
    throw ConfigError(
        "variant must be divides_pm_pn or pi_divides_pm_pn");
  }
  auto start = Clock::now();
  SearchOutcome out;
  out.spec = {variant, m, std::nullopt, 1, n_limit};
  int64_t p_m = sieve.nth_prime(m);

  if (variant == PredicateId::divides_pm_pn) {
    bool window_default = n_limit <= 0 && m > 2;
    int64_t max_n = n_limit > 0 ? n_limit
                    : m > 2    ? Sieve::checked_mul(m, m - 1) - 1
                               : 1'000'000;
    PrimeIterator it(sieve);
    for (int64_t n = 1; n <= max_n; ++n) {
      int64_t p_n = it.next();
      int64_t sum = Sieve::checked_add(p_m, p_n);
      out.scanned_up_to = n;
      if (sum % (m + n) == 0) {
        out.witness_n = n;
        out.left_value = sum % (m + n);  // 0: (m+n) divides p_m + p_n
        out.right_value = 0;
        break;
      }
    }
    if (!out.witness_n.has_value()) {
      out.note = window_default
                     ? "no witness below m*(m-1); counterexample candidate, "
                       "needs extended search"
                     : std::string(kNotFoundWithinBound);
    }
  } else {
    int64_t max_n = sieve.bound() / m;
    if (n_limit > 0) {
      if (n_limit > max_n) {
        throw BoundExceededError("pi(m*n) scan beyond global bound");
      }
      max_n = n_limit;
    }
    PrimeIterator it(sieve);
    sieve.scan_pi_multiples(m, 1, max_n, [&](int64_t n, int64_t pi_mn) {
      int64_t p_n = it.next();
      int64_t sum = Sieve::checked_add(p_m, p_n);
      out.scanned_up_to = n;
      if (pi_mn >= 1 && sum % pi_mn == 0) {
        out.witness_n = n;
        out.left_value = sum % pi_mn;
        out.right_value = 0;
        return false;
      }
      return true;
    });
    if (!out.witness_n.has_value()) out.note = kNotFoundWithinBound;
  }
  out.elapsed_ms = ms_since(start);
  return out;
}

Conj41Witnesses conj41_witnesses(const Sieve& sieve, int64_t m,
                                 int64_t k_limit) {
  if (m < 1) throw ConfigError("conj41_witnesses requires m >= 1");
  if (k_limit < 1) throw ConfigError("conj41_witnesses requires k_limit >= 1");
  auto start = Clock::now();
  Conj41Witnesses w;
  w.km_minus_pk_square.spec = {PredicateId::km_minus_pk_square, m,
                               std::nullopt, 1, k_limit};
  w.pk_minus_km_square.spec = {PredicateId::pk_minus_km_square, m,
                               std::nullopt, 1, k_limit};
  w.km_minus_pk_prime.spec = {PredicateId::km_minus_pk_prime, m, std::nullopt,
                              1, k_limit};
  w.pk_minus_km_prime.spec = {PredicateId::pk_minus_km_prime, m, std::nullopt,
                              1, k_limit};
  bool plus_dead = false;  // k*m - p_k permanently negative from here on
  auto record = [](SearchOutcome& o, int64_t k, int64_t v) {
    if (o.witness_n.has_value()) return;
    o.witness_n = k;
    o.left_value = v;
    o.right_value = v;
  };
  auto done = [&] {
    return w.km_minus_pk_square.witness_n.has_value() &&
           w.pk_minus_km_square.witness_n.has_value() &&
           w.km_minus_pk_prime.witness_n.has_value() &&
           w.pk_minus_km_prime.witness_n.has_value();
  };
  try {
    sieve.for_each_prime_indexed([&](int64_t k, int64_t p) {
      int64_t excess = Sieve::checked_mul(k, m) - p;
      int64_t deficit = -excess;
      if (!plus_dead) {
        if (excess >= 0 && is_square(excess)) {
          record(w.km_minus_pk_square, k, excess);
        }
        if (excess >= 2 && sieve.is_prime(excess)) {
          record(w.km_minus_pk_prime, k, excess);
        }
        if (kscan_settled(k + 1, m, 0)) plus_dead = true;
      }
      if (deficit >= 0 && is_square(deficit)) {
        record(w.pk_minus_km_square, k, deficit);
      }
      if (deficit >= 2 && sieve.is_prime(deficit)) {
        record(w.pk_minus_km_prime, k, deficit);
      }
      for (SearchOutcome* o :
           {&w.km_minus_pk_square, &w.pk_minus_km_square,
            &w.km_minus_pk_prime, &w.pk_minus_km_prime}) {
        if (!o->witness_n.has_value()) o->scanned_up_to = k;
      }
      bool plus_resolved =
          plus_dead || (w.km_minus_pk_square.witness_n.has_value() &&
                        w.km_minus_pk_prime.witness_n.has_value());
      if (done() || (plus_resolved &&
                     w.pk_minus_km_square.witness_n.has_value() &&
                     w.pk_minus_km_prime.witness_n.has_value())) {
        return false;
      }
      return k < k_limit;
    });
  } catch (const BoundExceededError&) {
    // Bounded reporting: whatever was not found within the sieve stays
    // an honest absence.
  }
  for (SearchOutcome* o : {&w.km_minus_pk_square, &w.km_minus_pk_prime}) {
    if (!o->witness_n.has_value()) {
      o->note = plus_dead ? std::string(kNoFurtherWitness)
                          : std::string(kNotFoundWithinBound);
    }
  }
  for (SearchOutcome* o : {&w.pk_minus_km_square, &w.pk_minus_km_prime}) {
    if (!o->witness_n.has_value()) o->note = kNotFoundWithinBound;
  }
  double elapsed = ms_since(start);
  w.km_minus_pk_square.elapsed_ms = elapsed;
  w.pk_minus_km_square.elapsed_ms = elapsed;
  w.km_minus_pk_prime.elapsed_ms = elapsed;
  w.pk_minus_km_prime.elapsed_ms = elapsed;
  return w;
}

bool revalidate(const Sieve& sieve, const SearchOutcome& outcome) {
  if (!outcome.witness_n.has_value()) return true;
  int64_t n = *outcome.witness_n;
  int64_t m = outcome.spec.m;
  switch (outcome.spec.id) {
    case PredicateId::ratio: {
      int64_t a = outcome.spec.a.value_or(0);
      if (n <= 1 || (n + a) % m != 0) return false;
      int64_t lhs = sieve.pi(n);
      int64_t rhs = (n + a) / m;
      return lhs == rhs && lhs == outcome.left_value;
    }
    case PredicateId::mn_eq_m_plus_n: {
      int64_t lhs = sieve.pi(Sieve::checked_mul(m, n));
      return lhs == m + n && lhs == outcome.left_value;
    }
    case PredicateId::mn_eq_fib: {
      int64_t lhs = sieve.pi(Sieve::checked_mul(m, n));
      return lhs == fibonacci(m) + n && lhs == outcome.left_value;
    }
    case PredicateId::phi_n:
    case PredicateId::phi_sum:
    case PredicateId::phi_of_sum: {
      int64_t lhs = sieve.pi(Sieve::checked_mul(m, n));
      int64_t rhs = outcome.spec.id == PredicateId::phi_n ? euler_phi(n)
                    : outcome.spec.id == PredicateId::phi_sum
                        ? euler_phi(m) + euler_phi(n)
                        : euler_phi(m + n);
      return lhs == rhs && lhs == outcome.left_value;
    }
    case PredicateId::sigma_n:
    case PredicateId::sigma_sum:
    case PredicateId::sigma_of_sum: {
      int64_t lhs = sieve.pi(Sieve::checked_mul(m, n));
      int64_t rhs = outcome.spec.id == PredicateId::sigma_n ? divisor_sum(n)
                    : outcome.spec.id == PredicateId::sigma_sum
                        ? divisor_sum(m) + divisor_sum(n)
                        : divisor_sum(m + n);
      return lhs == rhs && lhs == outcome.left_value;
    }
    case PredicateId::divides_pm_pn: {
      int64_t sum = sieve.nth_prime(m) + sieve.nth_prime(n);
      return sum % (m + n) == 0;
    }
    case PredicateId::pi_divides_pm_pn: {
      int64_t q = sieve.pi(Sieve::checked_mul(m, n));
      int64_t sum = sieve.nth_prime(m) + sieve.nth_prime(n);
      return q >= 1 && sum % q == 0;
    }
    case PredicateId::km_minus_pk_square:
    case PredicateId::km_minus_pk_prime: {
      int64_t v = Sieve::checked_mul(n, m) - sieve.nth_prime(n);
      if (v != outcome.left_value) return false;
      return outcome.spec.id == PredicateId::km_minus_pk_square
                 ? is_square(v)
                 : (v >= 2 && sieve.is_prime(v));
    }
    case PredicateId::pk_minus_km_square:
    case PredicateId::pk_minus_km_prime: {
      int64_t v = sieve.nth_prime(n) - Sieve::checked_mul(n, m);
      if (v != outcome.left_value) return false;
      return outcome.spec.id == PredicateId::pk_minus_km_square
                 ? is_square(v)
                 : (v >= 2 && sieve.is_prime(v));
    }
  }
  return false;
}

SearchOutcome run_predicate(const Sieve& sieve, const PredicateSpec& spec) {
  switch (spec.id) {
    case PredicateId::ratio:
      if (!spec.a.has_value()) {
        throw ConfigError("ratio predicate requires parameter a");
      }
      return least_n_ratio(sieve, spec.m, *spec.a, spec.n_limit);
    case PredicateId::mn_eq_m_plus_n:
      return least_s(sieve, spec.m, spec.n_limit);
    case PredicateId::mn_eq_fib:
      return least_f(sieve, spec.m, spec.n_limit);
    case PredicateId::phi_n:
    case PredicateId::phi_sum:
    case PredicateId::phi_of_sum:
      return least_phi(sieve, spec.m, spec.id, spec.n_limit);
    case PredicateId::sigma_n:
    case PredicateId::sigma_sum:
    case PredicateId::sigma_of_sum:
      return least_sigma(sieve, spec.m, spec.id, spec.n_limit);
    case PredicateId::divides_pm_pn:
    case PredicateId::pi_divides_pm_pn:
      return least_divisor_witness(sieve, spec.m, spec.id, spec.n_limit);
    case PredicateId::km_minus_pk_square:
    case PredicateId::pk_minus_km_square:
    case PredicateId::km_minus_pk_prime:
    case PredicateId::pk_minus_km_prime: {
      Conj41Witnesses w = conj41_witnesses(
          sieve, spec.m, spec.n_limit > 0 ? spec.n_limit : 1'000'000);
      switch (spec.id) {
        case PredicateId::km_minus_pk_square: return w.km_minus_pk_square;
        case PredicateId::pk_minus_km_square: return w.pk_minus_km_square;
        case PredicateId::km_minus_pk_prime: return w.km_minus_pk_prime;
        default: return w.pk_minus_km_prime;
      }
    }
  }
  throw ConfigError("unknown predicate");
}

Conj44Result verify_conj44(const Sieve& sieve, int64_t m_max) {
  if (m_max < 1) throw ConfigError("verify_conj44 requires m_max >= 1");
  Conj44Result result;
  result.m_max = m_max;
  // One shared prime table keeps the per-m scans cheap: indexes up to
  // m_max*(m_max-1) - 1 cover every window, plus a little room for m <= 2.
  int64_t need = std::max<int64_t>(
      m_max > 2 ? Sieve::checked_mul(m_max, m_max - 1) - 1 : 64, 64);
  std::vector<int64_t> p(size_t(need) + 1, 0);
  sieve.for_each_prime_indexed([&](int64_t k, int64_t prime) {
    p[size_t(k)] = prime;
    return k < need;
  });
  for (int64_t m = 1; m <= m_max; ++m) {
    int64_t window = m > 2 ? m * (m - 1) - 1 : need;
    bool found = false;
    for (int64_t n = 1; n <= window; ++n) {
      if ((p[size_t(m)] + p[size_t(n)]) % (m + n) == 0) {
        found = true;
        if (n > result.max_witness) {
          result.max_witness = n;
          result.max_witness_m = m;
        }
        break;
      }
    }
    if (!found) result.misses.push_back(m);
    ++result.checked;
  }
  return result;
}

}  // namespace prl
