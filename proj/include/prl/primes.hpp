#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <span>
#include <vector>

#include "prl/errors.hpp"

namespace prl {

struct SieveConfig {
  int64_t global_bound = int64_t{1} << 31;  // largest value pi()/p_k may reach
  int64_t segment_length = int64_t{1} << 18;  // numbers per segment
  int threads = 1;  // workers for the ordered segment pipeline
};

// One sieved half-open window [lo, hi), lo >= 2.
// Primality flags are bit-packed for odd numbers only; 2 is tracked
// separately. Bit i corresponds to the odd number base + 2*i.
class SieveSegment {
 public:
  SieveSegment(int64_t lo, int64_t hi);

  int64_t lo() const { return lo_; }
  int64_t hi() const { return hi_; }
  int64_t prime_count() const { return prime_count_; }

  // True iff x is flagged prime. Requires lo <= x < hi.
  bool flag(int64_t x) const {
    if (x == 2) return has_two_;
    if ((x & 1) == 0) return false;
    return bit(x);
  }

  // Number of primes p in the segment with p <= x. Requires x >= lo - 1.
  int64_t count_leq(int64_t x) const;

  // Calls fn(p) for each prime in ascending order; fn returns false to stop.
  // Returns false if fn stopped early.
  template <typename Fn>
  bool for_each_prime(Fn&& fn) const {
    if (has_two_ && !fn(int64_t{2})) return false;
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t word = words_[w];
      while (word != 0) {
        int b = std::countr_zero(word);
        word &= word - 1;
        if (!fn(base_ + 2 * (int64_t(w) * 64 + b))) return false;
      }
    }
    return true;
  }

 private:
  friend class Sieve;
  friend class SegmentCounter;

  bool bit(int64_t x) const {
    int64_t i = (x - base_) >> 1;
    return (words_[size_t(i >> 6)] >> (i & 63)) & 1;
  }
  void clear_bit(int64_t x) {
    int64_t i = (x - base_) >> 1;
    words_[size_t(i >> 6)] &= ~(uint64_t{1} << (i & 63));
  }
  void finalize();  // mask tail, compute prime_count_

  int64_t lo_;
  int64_t hi_;
  int64_t base_;      // first odd number >= lo
  int64_t num_bits_;  // odd numbers in [lo, hi)
  bool has_two_;
  int64_t prime_count_ = 0;
  std::vector<uint64_t> words_;
};

// Incremental prefix counter over one segment. count_leq must be called
// with non-decreasing x; cost is one pass over the bitmap per segment.
class SegmentCounter {
 public:
  explicit SegmentCounter(const SieveSegment& seg);
  int64_t count_leq(int64_t x);  // primes p in segment with p <= x

 private:
  const SieveSegment* seg_;
  size_t word_ = 0;     // next full word to absorb
  int64_t acc_ = 0;     // primes among odd numbers in words [0, word_)
  int64_t last_ = -1;
};

// Resumable (n, pi(n)) anchor. stride is the spacing at which scans emit
// new anchors.
struct PiCheckpoint {
  int64_t n = 1;
  int64_t pi_n = 0;
  int64_t stride = 10'000'000;
};

struct ScanOptions {
  int64_t limit = 0;  // largest n to visit; 0 = global bound
  std::function<void(const PiCheckpoint&)> on_checkpoint;  // called every stride
};

// Segmented sieve of Eratosthenes with an odd-only bitmap. Base primes up
// to sqrt(global_bound) are computed once at construction; afterwards the
// object is immutable and safe for concurrent use.
class Sieve {
 public:
  explicit Sieve(SieveConfig cfg = {});

  const SieveConfig& config() const { return cfg_; }
  int64_t bound() const { return cfg_.global_bound; }
  std::span<const int32_t> base_primes() const { return base_primes_; }

  // Sieve one window. Requires 2 <= lo < hi <= bound + 1.
  SieveSegment sieve_segment(int64_t lo, int64_t hi) const;

  // Exact count of primes <= x. Throws BoundExceededError for x > bound.
  int64_t pi(int64_t x) const;

  // The k-th prime (p_1 = 2). Throws BoundExceededError if p_k > bound.
  int64_t nth_prime(int64_t k) const;

  // The m-th composite number (4, 6, 8, 9, 10, 12, ...).
  int64_t nth_composite(int64_t m) const;

  // Primes in [lo, hi) in ascending order.
  std::vector<int64_t> prime_stream(int64_t lo, int64_t hi) const;

  // Point primality test by trial division against the base primes.
  // Valid for 0 <= x <= bound.
  bool is_prime(int64_t x) const;

  // Streams segments covering [lo, hi) to fn in ascending order.
  // fn(const SieveSegment&) returns false to stop early. With
  // cfg.threads > 1 segments are sieved concurrently and delivered
  // through an ordered reduction.
  template <typename SegFn>
  void for_each_segment(int64_t lo, int64_t hi, SegFn&& fn) const {
    lo = std::max<int64_t>(lo, 2);
    if (hi > bound() + 1) {
      throw BoundExceededError("segment range exceeds global bound");
    }
    if (lo >= hi) return;
    if (cfg_.threads <= 1) {
      for (int64_t slo = lo; slo < hi; ) {
        int64_t shi = std::min(hi, slo + cfg_.segment_length);
        if (!fn(sieve_segment(slo, shi))) return;
        slo = shi;
      }
      return;
    }
    pipelined_segments(lo, hi, std::forward<SegFn>(fn));
  }

  // Calls fn(p) for each prime in [lo, hi) ascending; fn returns false to
  // stop.
  template <typename Fn>
  void for_each_prime(int64_t lo, int64_t hi, Fn&& fn) const {
    for_each_segment(lo, hi, [&](const SieveSegment& seg) {
      return seg.for_each_prime(fn);
    });
  }

  // Calls fn(k, p_k) for k = 1, 2, ... ascending; fn returns false to stop.
  // Throws BoundExceededError if the stream is exhausted without fn
  // stopping (the next prime would exceed the bound).
  template <typename Fn>
  void for_each_prime_indexed(Fn&& fn) const {
    int64_t k = 0;
    bool stopped = false;
    for_each_segment(2, bound() + 1, [&](const SieveSegment& seg) {
      bool cont = seg.for_each_prime([&](int64_t p) { return fn(++k, p); });
      stopped = !cont;
      return cont;
    });
    if (!stopped) {
      throw BoundExceededError("prime stream exhausted at global bound");
    }
  }

  // Visits (n, pi(n)) for every integer n > from.n in ascending order.
  // visit returns true to consume n and continue, false to halt; on halt
  // the returned checkpoint is the last consumed position, so a visitor
  // that halts on its first call leaves `from` unchanged. New checkpoints
  // are reported through opts.on_checkpoint whenever a consumed n is a
  // multiple of from.stride.
  template <typename V>
  PiCheckpoint scan_pi(PiCheckpoint from, V&& visit,
                       const ScanOptions& opts = {}) const {
    int64_t limit = opts.limit > 0 ? std::min(opts.limit, bound()) : bound();
    int64_t stride = from.stride > 0 ? from.stride : 1;
    int64_t n = from.n;
    int64_t count = from.pi_n;
    int64_t next_cp = (n / stride + 1) * stride;
    auto consume = [&](int64_t x, int64_t pi_x) {
      if (!visit(x, pi_x)) return false;
      n = x;
      count = pi_x;
      if (x == next_cp) {
        if (opts.on_checkpoint) {
          opts.on_checkpoint(PiCheckpoint{x, pi_x, stride});
        }
        next_cp += stride;
      }
      return true;
    };
    // n = 1 sits below the first segment.
    if (n < 1 && 1 <= limit) {
      if (!consume(1, 0)) return PiCheckpoint{n, count, stride};
    }
    for_each_segment(std::max<int64_t>(n + 1, 2), limit + 1,
                     [&](const SieveSegment& seg) {
      for (int64_t x = std::max(seg.lo(), n + 1); x < seg.hi(); ++x) {
        int64_t pi_x = count + (seg.flag(x) ? 1 : 0);
        if (!consume(x, pi_x)) return false;
      }
      return true;
    });
    return PiCheckpoint{n, count, stride};
  }

  // Visits (j, pi(m*j)) for j = n_start, n_start+1, ..., n_max ascending;
  // visit returns false to stop. Requires m >= 1, n_start >= 1 and
  // m*n_max <= bound.
  template <typename V>
  void scan_pi_multiples(int64_t m, int64_t n_start, int64_t n_max,
                         V&& visit) const {
    if (m < 1 || n_start < 1 || n_max < n_start) return;
    int64_t top = checked_mul(m, n_max);
    if (top > bound()) {
      throw BoundExceededError("pi(m*n) scan exceeds global bound");
    }
    int64_t j = n_start;
    int64_t x = m * j;
    while (x < 2) {  // pi(1) = 0
      if (!visit(j, int64_t{0})) return;
      if (++j > n_max) return;
      x = m * j;
    }
    int64_t pi_acc = 0;  // pi(seg.lo - 1)
    for_each_segment(2, top + 1, [&](const SieveSegment& seg) {
      SegmentCounter counter(seg);
      while (x < seg.hi()) {
        if (!visit(j, pi_acc + counter.count_leq(x))) return false;
        if (++j > n_max) return false;
        x += m;
      }
      pi_acc += seg.prime_count();
      return true;
    });
  }

  static int64_t checked_mul(int64_t a, int64_t b);
  static int64_t checked_add(int64_t a, int64_t b);

 private:
  template <typename SegFn>
  void pipelined_segments(int64_t lo, int64_t hi, SegFn&& fn) const {
    // Workers sieve batches of consecutive segments ahead of the consumer;
    // batches are consumed strictly in order.
    const int64_t seg_len = cfg_.segment_length;
    const int64_t batch_segs =
        std::max<int64_t>(1, (int64_t{1} << 21) / seg_len);
    const int64_t batch_len = batch_segs * seg_len;
    std::deque<std::future<std::vector<SieveSegment>>> window;
    int64_t next_lo = lo;
    auto launch = [&] {
      if (next_lo >= hi) return;
      int64_t blo = next_lo;
      int64_t bhi = std::min(hi, blo + batch_len);
      next_lo = bhi;
      window.push_back(std::async(std::launch::async, [this, blo, bhi, seg_len] {
        std::vector<SieveSegment> batch;
        for (int64_t slo = blo; slo < bhi; ) {
          int64_t shi = std::min(bhi, slo + seg_len);
          batch.push_back(sieve_segment(slo, shi));
          slo = shi;
        }
        return batch;
      }));
    };
    for (int i = 0; i < cfg_.threads + 1 && next_lo < hi; ++i) launch();
    while (!window.empty()) {
      std::vector<SieveSegment> batch = window.front().get();
      window.pop_front();
      launch();
      for (const SieveSegment& seg : batch) {
        if (!fn(seg)) return;
      }
    }
  }

  SieveConfig cfg_;
  std::vector<int32_t> base_primes_;
};

// Pull-style ascending prime iterator with 1-based index tracking.
class PrimeIterator {
 public:
  explicit PrimeIterator(const Sieve& sieve);

  // Next prime in ascending order; throws BoundExceededError past the
  // global bound.
  int64_t next();
  // Index of the last prime returned by next() (p_1 = 2).
  int64_t index() const { return index_; }

 private:
  void refill();

  const Sieve* sieve_;
  std::vector<int64_t> buffer_;
  size_t pos_ = 0;
  int64_t next_lo_ = 2;
  int64_t index_ = 0;
};

// Effective prime bounds used to truncate k-scans.
// dusart_lower is valid for k >= 2, rosser_upper for k >= 6.
long double dusart_lower(int64_t k);
long double rosser_upper(int64_t k);

// True when k*m - p_j < target is guaranteed for every j >= k, i.e. no
// later prime index can still reach `target`. Conservative: uses the
// Dusart lower bound with a safety margin, so it never fires early.
bool kscan_settled(int64_t k, int64_t m, int64_t target);

}  // namespace prl
