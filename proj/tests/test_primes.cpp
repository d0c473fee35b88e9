#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "prl/checkpoint.hpp"
#include "prl/primes.hpp"

using namespace prl;

namespace {

SieveConfig small_config(int64_t bound, int64_t seg = 1 << 12) {
  return SieveConfig{bound, seg, 1};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("prl_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("pi matches examples and the trial-division oracle") {
  Sieve sieve(small_config(2'000'000));
  CHECK(sieve.pi(0) == 0);
  CHECK(sieve.pi(1) == 0);
  CHECK(sieve.pi(2) == 1);
  CHECK(sieve.pi(45) == 14);
  CHECK(sieve.pi(20) == 8);
  CHECK(sieve.pi(1'000'000) == 78498);

  auto table = oracle::pi_table(2000);
  for (int64_t x = 0; x <= 2000; ++x) {
    CAPTURE(x);
    REQUIRE(sieve.pi(x) == table[size_t(x)]);
  }
}

TEST_CASE("pi(x) - pi(x-1) = 1 exactly at primes") {
  Sieve sieve(small_config(200'000));
  auto table = oracle::pi_table(5000);
  for (int64_t x = 2; x <= 5000; ++x) {
    bool step = table[size_t(x)] - table[size_t(x - 1)] == 1;
    CHECK(step == oracle::is_prime(x));
  }
}

TEST_CASE("pi rejects arguments beyond the global bound") {
  Sieve sieve(small_config(100'000));
  CHECK_THROWS_AS(sieve.pi(100'001), BoundExceededError);
}

TEST_CASE("nth_prime examples and inverse relation") {
  Sieve sieve(small_config(2'000'000));
  CHECK(sieve.nth_prime(1) == 2);
  CHECK(sieve.nth_prime(8) == 19);
  CHECK(sieve.nth_prime(29) == 109);
  CHECK(sieve.nth_prime(1000) == 7919);

  for (int64_t k : {1, 2, 3, 10, 100, 1234}) {
    int64_t p = sieve.nth_prime(k);
    CHECK(sieve.pi(p) == k);
    CHECK(sieve.pi(p - 1) == k - 1);
  }
  CHECK_THROWS_AS(Sieve(small_config(10'000)).nth_prime(1'000'000),
                  BoundExceededError);
}

TEST_CASE("prime_stream windows") {
  Sieve sieve(small_config(100'000));
  CHECK(sieve.prime_stream(2, 3) == std::vector<int64_t>{2});
  CHECK(sieve.prime_stream(10, 20) == std::vector<int64_t>{11, 13, 17, 19});
  CHECK(sieve.prime_stream(14, 16).empty());
  CHECK(sieve.prime_stream(0, 11) == std::vector<int64_t>{2, 3, 5, 7});

  auto expected = oracle::primes_up_to(3000);
  auto got = sieve.prime_stream(0, 3001);
  CHECK(got == expected);
}

TEST_CASE("nth_composite walks 4, 6, 8, 9, 10, ...") {
  Sieve sieve(small_config(100'000));
  CHECK(sieve.nth_composite(1) == 4);
  CHECK(sieve.nth_composite(2) == 6);
  CHECK(sieve.nth_composite(10) == 18);
  // Against the oracle: composites are the non-primes above 3.
  int64_t m = 0;
  for (int64_t n = 4; n <= 500; ++n) {
    if (oracle::is_prime(n)) continue;
    ++m;
    CAPTURE(n);
    REQUIRE(sieve.nth_composite(m) == n);
  }
}

TEST_CASE("segment flags agree with trial division") {
  Sieve sieve(small_config(1'000'000));
  for (auto [lo, hi] : {std::pair<int64_t, int64_t>{2, 500},
                        {999, 1500},
                        {10'000, 10'007},
                        {2, 3}}) {
    SieveSegment seg = sieve.sieve_segment(lo, hi);
    int64_t count = 0;
    for (int64_t x = lo; x < hi; ++x) {
      CAPTURE(x);
      bool prime = oracle::is_prime(x);
      REQUIRE(seg.flag(x) == prime);
      if (prime) ++count;
    }
    CHECK(seg.prime_count() == count);
  }
}

TEST_CASE("segment count_leq is a prefix count") {
  Sieve sieve(small_config(100'000));
  SieveSegment seg = sieve.sieve_segment(100, 400);
  auto table = oracle::pi_table(400);
  for (int64_t x = 100; x < 400; ++x) {
    CHECK(seg.count_leq(x) == table[size_t(x)] - table[99]);
  }
  SegmentCounter counter(seg);
  for (int64_t x = 100; x < 400; x += 3) {
    CHECK(counter.count_leq(x) == table[size_t(x)] - table[99]);
  }
}

TEST_CASE("pi is independent of segment length") {
  std::vector<int64_t> lengths = {1 << 10, 1 << 16, 1 << 20};
  std::vector<int64_t> xs = {1, 2, 97, 1'000, 65'536, 999'983, 1'000'000};
  std::vector<std::vector<int64_t>> results;
  for (int64_t len : lengths) {
    Sieve sieve(SieveConfig{1'100'000, len, 1});
    std::vector<int64_t> vals;
    for (int64_t x : xs) vals.push_back(sieve.pi(x));
    results.push_back(vals);
  }
  CHECK(results[0] == results[1]);
  CHECK(results[1] == results[2]);
}

TEST_CASE("pi is independent of thread count") {
  Sieve seq(SieveConfig{2'000'000, 1 << 14, 1});
  Sieve par(SieveConfig{2'000'000, 1 << 14, 4});
  for (int64_t x : {100, 12345, 1'999'999}) {
    CHECK(seq.pi(x) == par.pi(x));
  }
  CHECK(seq.prime_stream(0, 100'000) == par.prime_stream(0, 100'000));
}

TEST_CASE("scan_pi visits every n with exact counts") {
  Sieve sieve(small_config(100'000));
  auto table = oracle::pi_table(300);
  int64_t expected_n = 1;
  PiCheckpoint final = sieve.scan_pi(
      PiCheckpoint{0, 0, 1'000'000},
      [&](int64_t n, int64_t pi_n) {
        if (n > 300) return false;
        CHECK(n == expected_n);
        CHECK(pi_n == table[size_t(n)]);
        ++expected_n;
        return true;
      });
  CHECK(final.n == 300);
  CHECK(final.pi_n == table[300]);
}

TEST_CASE("scan_pi halting semantics") {
  Sieve sieve(small_config(100'000));

  SUBCASE("halt at n = 10 from the origin") {
    PiCheckpoint final = sieve.scan_pi(
        PiCheckpoint{1, 0, 100}, [](int64_t n, int64_t) { return n <= 10; });
    CHECK(final.n == 10);
    CHECK(final.pi_n == 4);
  }
  SUBCASE("halt at n = 45") {
    PiCheckpoint final = sieve.scan_pi(
        PiCheckpoint{1, 0, 100}, [](int64_t n, int64_t) { return n <= 45; });
    CHECK(final.n == 45);
    CHECK(final.pi_n == 14);
  }
  SUBCASE("halting immediately leaves the checkpoint unchanged") {
    PiCheckpoint from{100, 25, 100};
    PiCheckpoint final =
        sieve.scan_pi(from, [](int64_t, int64_t) { return false; });
    CHECK(final.n == 100);
    CHECK(final.pi_n == 25);
  }
}

TEST_CASE("scan_pi emits checkpoints at stride multiples") {
  Sieve sieve(small_config(100'000));
  std::vector<PiCheckpoint> emitted;
  ScanOptions opts;
  opts.limit = 95;
  opts.on_checkpoint = [&](const PiCheckpoint& cp) { emitted.push_back(cp); };
  sieve.scan_pi(PiCheckpoint{1, 0, 20}, [](int64_t, int64_t) { return true; },
                opts);
  REQUIRE(emitted.size() == 4);
  auto table = oracle::pi_table(100);
  for (size_t i = 0; i < emitted.size(); ++i) {
    CHECK(emitted[i].n == int64_t(20 * (i + 1)));
    CHECK(emitted[i].pi_n == table[size_t(emitted[i].n)]);
  }
}

TEST_CASE("scan_pi resumes from a checkpoint equivalently") {
  Sieve sieve(small_config(100'000));
  // Unbroken scan to 5000.
  std::vector<int64_t> unbroken;
  sieve.scan_pi(PiCheckpoint{1, 0, 1000}, [&](int64_t n, int64_t pi_n) {
    unbroken.push_back(pi_n);
    return n < 5000;
  });
  // Broken at 2718, resumed from the recorded checkpoint.
  std::vector<int64_t> broken;
  PiCheckpoint mid = sieve.scan_pi(PiCheckpoint{1, 0, 1000},
                                   [&](int64_t n, int64_t pi_n) {
                                     if (n > 2718) return false;
                                     broken.push_back(pi_n);
                                     return true;
                                   });
  sieve.scan_pi(mid, [&](int64_t n, int64_t pi_n) {
    broken.push_back(pi_n);
    return n < 5000;
  });
  CHECK(unbroken == broken);
}

TEST_CASE("scan_pi_multiples tracks pi(m*n)") {
  Sieve sieve(small_config(1'000'000));
  auto table = oracle::pi_table(4000);
  for (int64_t m : {1, 2, 3, 7, 64, 1000}) {
    CAPTURE(m);
    int64_t expect_n = 1;
    sieve.scan_pi_multiples(m, 1, 4000 / m, [&](int64_t n, int64_t pi_mn) {
      REQUIRE(n == expect_n++);
      REQUIRE(pi_mn == table[size_t(m * n)]);
      return true;
    });
  }
}

TEST_CASE("prime iterator streams with correct indexes") {
  Sieve sieve(small_config(100'000, 1 << 10));
  PrimeIterator it(sieve);
  auto primes = oracle::primes_up_to(2000);
  for (size_t i = 0; i < primes.size(); ++i) {
    CHECK(it.next() == primes[i]);
    CHECK(it.index() == int64_t(i + 1));
  }
}

TEST_CASE("prime iterator throws past the bound") {
  Sieve tiny(SieveConfig{10'000, 1 << 10, 1});
  PrimeIterator it(tiny);
  int64_t count = 0;
  CHECK_THROWS_AS(
      [&] {
        while (true) {
          it.next();
          ++count;
        }
      }(),
      BoundExceededError);
  CHECK(count == 1229);  // pi(10^4)
}

TEST_CASE("dusart and rosser bounds hold for small k") {
  Sieve sieve(small_config(2'000'000));
  sieve.for_each_prime_indexed([&](int64_t k, int64_t p) {
    if (k >= 2) CHECK(static_cast<long double>(p) >= dusart_lower(k));
    if (k >= 6) CHECK(static_cast<long double>(p) <= rosser_upper(k));
    return k < 50'000;
  });
}

TEST_CASE("remark 1.2 identity at unit-test scale") {
  Sieve sieve(small_config(100'000));
  for (int64_t m = 1; m <= 200; ++m) {
    int64_t c = sieve.nth_composite(m);
    int64_t n = sieve.pi(c);
    CAPTURE(m);
    REQUIRE(sieve.pi(m + n) == n);
  }
}

TEST_CASE("remark 1.3 inequalities at unit-test scale") {
  Sieve sieve(small_config(100'000));
  auto table = oracle::pi_table(4000);
  for (int64_t n = 1; n <= 1000; ++n) {
    CHECK(table[size_t(n)] < n + 1);
    CHECK(table[size_t(2 * n)] <= n);
    CHECK(table[size_t(3 * n)] <= n + 1);
    CHECK(table[size_t(4 * n)] < n + 4);
  }
}

TEST_CASE("checkpoint file round-trip") {
  TempDir dir;
  auto path = dir.path / "pi.csv";
  std::vector<PiCheckpoint> rows = {{1, 0, 10}, {10, 4, 10}, {20, 8, 10}};
  write_checkpoints(path, rows);

  auto loaded = load_checkpoints(path);
  REQUIRE(loaded.size() == 3);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(loaded[i].n == rows[i].n);
    CHECK(loaded[i].pi_n == rows[i].pi_n);
  }
  // Exact file shape.
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text == "n,pi\n1,0\n10,4\n20,8\n");
}

TEST_CASE("checkpoint verification recomputes the last span") {
  TempDir dir;
  Sieve sieve(small_config(100'000));
  auto path = dir.path / "pi.csv";

  write_checkpoints(path, std::vector<PiCheckpoint>{{1, 0, 50}, {100, 25, 50}});
  CHECK_NOTHROW(verify_last_checkpoint(sieve, load_checkpoints(path)));

  write_checkpoints(path, std::vector<PiCheckpoint>{{1, 0, 50}, {100, 26, 50}});
  CHECK_THROWS_AS(verify_last_checkpoint(sieve, load_checkpoints(path)),
                  CorruptCheckpointError);
}

TEST_CASE("checkpoint loader rejects malformed files") {
  TempDir dir;
  auto path = dir.path / "bad.csv";

  SUBCASE("missing header") {
    std::ofstream(path) << "1,0\n";
    CHECK_THROWS_AS(load_checkpoints(path), CorruptCheckpointError);
  }
  SUBCASE("non-increasing n") {
    std::ofstream(path) << "n,pi\n10,4\n10,4\n";
    CHECK_THROWS_AS(load_checkpoints(path), CorruptCheckpointError);
  }
  SUBCASE("garbage row") {
    std::ofstream(path) << "n,pi\nten,4\n";
    CHECK_THROWS_AS(load_checkpoints(path), CorruptCheckpointError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_checkpoints(dir.path / "nope.csv"),
                    CorruptCheckpointError);
  }
}

TEST_CASE("is_prime point queries") {
  Sieve sieve(small_config(1'000'000));
  for (int64_t x = 0; x <= 2000; ++x) {
    CAPTURE(x);
    REQUIRE(sieve.is_prime(x) == oracle::is_prime(x));
  }
  CHECK(sieve.is_prime(999'983));
}

TEST_CASE("kscan_settled is conservative") {
  // Once settled fires at k for target t, no j >= k may reach j*m - p_j >= t.
  Sieve sieve(small_config(1'000'000));
  for (int64_t m : {1, 2, 3, 5}) {
    for (int64_t target : {-5, 0, 5, 37}) {
      int64_t settled_at = 0;
      sieve.for_each_prime_indexed([&](int64_t k, int64_t p) {
        if (settled_at == 0 && kscan_settled(k, m, target)) settled_at = k;
        if (settled_at != 0 && k >= settled_at) {
          CHECK(k * m - p < target);
        }
        return k < 20'000;
      });
      CAPTURE(m);
      CAPTURE(target);
      CHECK(settled_at > 0);
    }
  }
}
