#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "prl/search.hpp"

using namespace prl;

namespace {

const Sieve& shared_sieve() {
  static Sieve sieve(SieveConfig{int64_t{1} << 26, 1 << 16, 1});
  return sieve;
}

}  // namespace

TEST_CASE("ratio search table rows at unit scale") {
  const Sieve& sieve = shared_sieve();
  CHECK(least_n_ratio(sieve, 1, -1).witness_n == 2);
  CHECK(least_n_ratio(sieve, 2, -1).witness_n == 9);
  CHECK(least_n_ratio(sieve, 3, 2).witness_n == 4);
  CHECK(least_n_ratio(sieve, 2, 1).witness_n == 3);
  CHECK(least_n_ratio(sieve, 3, -1).witness_n == 28);
  CHECK(least_n_ratio(sieve, 4, 3).witness_n == 93);
}

TEST_CASE("ratio witnesses are minimal and self-consistent") {
  const Sieve& sieve = shared_sieve();
  auto table = oracle::pi_table(3000);
  for (int64_t m = 1; m <= 5; ++m) {
    for (int64_t a = -7; a <= 7; ++a) {
      SearchOutcome outcome = least_n_ratio(sieve, m, a);
      if (!outcome.witness_n.has_value()) continue;
      int64_t w = *outcome.witness_n;
      CAPTURE(m);
      CAPTURE(a);
      REQUIRE((w + a) % m == 0);
      REQUIRE(outcome.left_value == outcome.right_value);
      REQUIRE(revalidate(sieve, outcome));
      // Full rescan: no smaller n satisfies the predicate.
      for (int64_t n = 2; n < std::min<int64_t>(w, 3000); ++n) {
        bool hit = (n + a) % m == 0 && table[size_t(n)] == (n + a) / m;
        REQUIRE_FALSE(hit);
      }
    }
  }
}

TEST_CASE("ratio absence reports carry the resolved range") {
  const Sieve& sieve = shared_sieve();
  SearchOutcome absent = least_n_ratio(sieve, 2, 2);  // S(2) = 1 < 2
  CHECK_FALSE(absent.witness_n.has_value());
  CHECK(absent.scanned_up_to > 0);
  CHECK(absent.note.find("no witness possible") != std::string::npos);

  SearchOutcome bounded = least_n_ratio(sieve, 2, 2, 1000);
  CHECK_FALSE(bounded.witness_n.has_value());
  CHECK(bounded.scanned_up_to == 1000);
}

TEST_CASE("least_s table rows and provable absence below m = 5") {
  const Sieve& sieve = shared_sieve();
  CHECK(least_s(sieve, 5).witness_n == 9);
  CHECK(least_s(sieve, 6).witness_n == 7);
  CHECK(least_s(sieve, 7).witness_n == 6);
  CHECK(least_s(sieve, 8).witness_n == 998);
  CHECK(least_s(sieve, 9).witness_n == 5);

  for (int64_t m = 1; m <= 4; ++m) {
    SearchOutcome absent = least_s(sieve, m);
    CAPTURE(m);
    REQUIRE_FALSE(absent.witness_n.has_value());
    REQUIRE(absent.note.find("no witness possible") != std::string::npos);
  }
}

TEST_CASE("least_s witnesses revalidate and scale from the ratio form") {
  const Sieve& sieve = shared_sieve();
  for (int64_t m : {5, 6, 7, 8, 9, 10}) {
    SearchOutcome outcome = least_s(sieve, m);
    REQUIRE(outcome.witness_n.has_value());
    CHECK(revalidate(sieve, outcome));
    // The ratio-form witness with a = m^2 is m times some integer; the
    // least_s witness divides out m.
    SearchOutcome ratio = least_n_ratio(sieve, m, m * m);
    if (ratio.witness_n.has_value()) {
      CHECK(*ratio.witness_n % m == 0);
      CHECK(*ratio.witness_n / m >= *outcome.witness_n);
    }
  }
}

TEST_CASE("least_f table rows") {
  const Sieve& sieve = shared_sieve();
  CHECK(least_f(sieve, 4).witness_n == 5);
  CHECK(least_f(sieve, 5).witness_n == 9);
  CHECK(least_f(sieve, 6).witness_n == 12);
  CHECK(least_f(sieve, 7).witness_n == 16);
  CHECK(least_f(sieve, 8).witness_n == 25);
  CHECK(least_f(sieve, 17).witness_n == 1942);
  CHECK(revalidate(sieve, least_f(sieve, 8)));
  CHECK_THROWS_AS(least_f(sieve, 3), ConfigError);
}

TEST_CASE("phi searches match the by-hand values") {
  const Sieve& sieve = shared_sieve();
  CHECK(least_phi(sieve, 1, PredicateId::phi_n).witness_n == 2);
  CHECK(least_phi(sieve, 2, PredicateId::phi_n).witness_n == 1);
  CHECK(least_phi(sieve, 3, PredicateId::phi_n).witness_n == 13);
  CHECK(least_phi(sieve, 4, PredicateId::phi_n).witness_n == 31);
  CHECK(least_phi(sieve, 5, PredicateId::phi_n).witness_n == 73);

  CHECK(least_phi(sieve, 1, PredicateId::phi_sum).witness_n == 6);
  CHECK(least_phi(sieve, 4, PredicateId::phi_sum).witness_n == 23);
  CHECK(least_phi(sieve, 9, PredicateId::phi_sum).witness_n == 2);

  CHECK(least_phi(sieve, 1, PredicateId::phi_of_sum).witness_n == 3);
  CHECK(least_phi(sieve, 4, PredicateId::phi_of_sum).witness_n == 91);
  CHECK(least_phi(sieve, 5, PredicateId::phi_of_sum).witness_n == 6);

  CHECK(revalidate(sieve, least_phi(sieve, 4, PredicateId::phi_of_sum)));
}

TEST_CASE("phi search minimality by exhaustive rescan") {
  const Sieve& sieve = shared_sieve();
  auto table = oracle::pi_table(400);
  SearchOutcome outcome = least_phi(sieve, 3, PredicateId::phi_n);
  REQUIRE(outcome.witness_n == 13);
  for (int64_t n = 1; n < 13; ++n) {
    CHECK(table[size_t(3 * n)] != oracle::euler_phi(n));
  }
}

TEST_CASE("tau searches match the by-hand values") {
  const Sieve& sieve = shared_sieve();
  CHECK(least_tau(sieve, 2, PredicateId::tau_n).witness_n == 1);
  CHECK(least_tau(sieve, 5, PredicateId::tau_sum).witness_n == 1);
  CHECK(least_tau(sieve, 8, PredicateId::tau_sum).witness_n == 2);
  CHECK(least_tau(sieve, 7, PredicateId::tau_of_sum).witness_n == 1);
  CHECK_THROWS_AS(least_tau(sieve, 1, PredicateId::tau_n), ConfigError);
  CHECK_THROWS_AS(least_tau(sieve, 4, PredicateId::tau_sum), ConfigError);
}

TEST_CASE("divisor witness searches") {
  const Sieve& sieve = shared_sieve();
  SearchOutcome m2 = least_divisor_witness(sieve, 2, PredicateId::divides_pm_pn);
  CHECK(m2.witness_n == 5);  // 7 | (3 + 11)
  CHECK(revalidate(sieve, m2));

  CHECK(least_divisor_witness(sieve, 1, PredicateId::divides_pm_pn).witness_n ==
        1);
  CHECK(least_divisor_witness(sieve, 3, PredicateId::divides_pm_pn).witness_n ==
        5);
  CHECK(least_divisor_witness(sieve, 10, PredicateId::divides_pm_pn).witness_n ==
        12);

  CHECK(least_divisor_witness(sieve, 1, PredicateId::pi_divides_pm_pn)
            .witness_n == 2);
  CHECK(least_divisor_witness(sieve, 2, PredicateId::pi_divides_pm_pn)
            .witness_n == 1);
  CHECK(least_divisor_witness(sieve, 5, PredicateId::pi_divides_pm_pn)
            .witness_n == 18);
}

TEST_CASE("conjecture 4.1 least-k witnesses") {
  const Sieve& sieve = shared_sieve();

  Conj41Witnesses m5 = conj41_witnesses(sieve, 5);
  CHECK(m5.km_minus_pk_square.witness_n == 29);  // 145 - 109 = 36
  CHECK(m5.km_minus_pk_square.left_value == 36);
  CHECK(m5.pk_minus_km_square.witness_n == 75);
  CHECK(m5.km_minus_pk_prime.witness_n == 1);
  CHECK(m5.pk_minus_km_prime.witness_n == 69);

  Conj41Witnesses m3 = conj41_witnesses(sieve, 3);
  CHECK(m3.pk_minus_km_square.witness_n == 12);  // p_12 - 36 = 1
  CHECK(m3.km_minus_pk_square.witness_n == 1);
  CHECK(m3.km_minus_pk_prime.witness_n == 2);
  CHECK(m3.pk_minus_km_prime.witness_n == 13);

  Conj41Witnesses m1 = conj41_witnesses(sieve, 1);
  CHECK(m1.pk_minus_km_prime.witness_n == 3);  // 5 - 3 = 2
  CHECK(m1.pk_minus_km_square.witness_n == 1);  // 2 - 1 = 1 = 1^2
  // k - p_k is negative for every k: provable absence, no refutation claim.
  CHECK_FALSE(m1.km_minus_pk_square.witness_n.has_value());
  CHECK_FALSE(m1.km_minus_pk_prime.witness_n.has_value());
  CHECK(m1.km_minus_pk_square.note.find("no witness possible") !=
        std::string::npos);

  CHECK(revalidate(sieve, m5.km_minus_pk_square));
  CHECK(revalidate(sieve, m3.pk_minus_km_square));
  CHECK(revalidate(sieve, m1.pk_minus_km_prime));
}

TEST_CASE("corollary 1.1 consequence: witnesses up to m^2 - m - 1") {
  const Sieve& sieve = shared_sieve();
  for (int64_t m = 1; m <= 8; ++m) {
    int64_t a_top = m * m - m - 1;
    for (int64_t a = a_top - 10; a <= a_top; ++a) {
      SearchOutcome outcome = least_n_ratio(sieve, m, a);
      CAPTURE(m);
      CAPTURE(a);
      REQUIRE(outcome.witness_n.has_value());
    }
  }
}

TEST_CASE("conjecture 4.4 verification at small scale") {
  const Sieve& sieve = shared_sieve();
  Conj44Result result = verify_conj44(sieve, 100);
  CHECK(result.pass());
  CHECK(result.checked == 100);
  CHECK(result.max_witness > 0);
}

TEST_CASE("predicate names round-trip") {
  for (PredicateId id :
       {PredicateId::ratio, PredicateId::mn_eq_m_plus_n, PredicateId::mn_eq_fib,
        PredicateId::phi_n, PredicateId::phi_sum, PredicateId::phi_of_sum,
        PredicateId::tau_n, PredicateId::tau_sum, PredicateId::tau_of_sum,
        PredicateId::divides_pm_pn, PredicateId::pi_divides_pm_pn,
        PredicateId::km_minus_pk_square, PredicateId::pk_minus_km_square,
        PredicateId::km_minus_pk_prime, PredicateId::pk_minus_km_prime}) {
    auto back = predicate_from_string(to_string(id));
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK_FALSE(predicate_from_string("nope").has_value());
}

TEST_CASE("run_predicate dispatches every id") {
  const Sieve& sieve = shared_sieve();
  PredicateSpec ratio{PredicateId::ratio, 2, -1, 1, 0};
  CHECK(run_predicate(sieve, ratio).witness_n == 9);
  PredicateSpec s{PredicateId::mn_eq_m_plus_n, 5, std::nullopt, 1, 0};
  CHECK(run_predicate(sieve, s).witness_n == 9);
  PredicateSpec missing_a{PredicateId::ratio, 2, std::nullopt, 1, 0};
  CHECK_THROWS_AS(run_predicate(sieve, missing_a), ConfigError);
}
