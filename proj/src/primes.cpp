#include "prl/primes.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace prl {

namespace {

int64_t isqrt64(int64_t n) {
  if (n < 0) return -1;
  int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Simple sieve used once at construction to collect the base primes.
std::vector<int32_t> simple_sieve(int64_t limit) {
  std::vector<int32_t> primes;
  if (limit < 2) return primes;
  std::vector<uint8_t> composite(size_t(limit) + 1, 0);
  for (int64_t i = 2; i <= limit; ++i) {
    if (composite[size_t(i)]) continue;
    primes.push_back(int32_t(i));
    for (int64_t j = i * i; j <= limit; j += i) composite[size_t(j)] = 1;
  }
  return primes;
}

}  // namespace

SieveSegment::SieveSegment(int64_t lo, int64_t hi) : lo_(lo), hi_(hi) {
  assert(lo >= 2 && lo < hi);
  base_ = lo | 1;
  num_bits_ = base_ < hi ? (hi - base_ + 1) / 2 : 0;
  has_two_ = lo <= 2 && 2 < hi;
  words_.assign(size_t((num_bits_ + 63) / 64), ~uint64_t{0});
}

void SieveSegment::finalize() {
  if (!words_.empty()) {
    int tail = int(num_bits_ & 63);
    if (tail != 0) words_.back() &= (uint64_t{1} << tail) - 1;
  }
  prime_count_ = has_two_ ? 1 : 0;
  for (uint64_t w : words_) prime_count_ += std::popcount(w);
}

int64_t SieveSegment::count_leq(int64_t x) const {
  assert(x >= lo_ - 1);
  int64_t count = has_two_ && x >= 2 ? 1 : 0;
  int64_t top = std::min(x, hi_ - 1);
  if (top < base_) return count;
  int64_t bits = (top - base_) / 2 + 1;  // odd numbers in [base, top]
  size_t full = size_t(bits / 64);
  for (size_t w = 0; w < full; ++w) count += std::popcount(words_[w]);
  int rem = int(bits & 63);
  if (rem != 0) {
    count += std::popcount(words_[full] & ((uint64_t{1} << rem) - 1));
  }
  return count;
}

SegmentCounter::SegmentCounter(const SieveSegment& seg) : seg_(&seg) {}

int64_t SegmentCounter::count_leq(int64_t x) {
  assert(x >= last_);
  last_ = x;
  int64_t count = seg_->has_two_ && x >= 2 ? 1 : 0;
  int64_t top = std::min(x, seg_->hi_ - 1);
  if (top < seg_->base_) return count;
  int64_t bits = (top - seg_->base_) / 2 + 1;
  size_t full = size_t(bits / 64);
  while (word_ < full) acc_ += std::popcount(seg_->words_[word_++]);
  count += acc_;
  int rem = int(bits & 63);
  if (rem != 0) {
    count += std::popcount(seg_->words_[full] & ((uint64_t{1} << rem) - 1));
  }
  return count;
}

Sieve::Sieve(SieveConfig cfg) : cfg_(cfg) {
  if (cfg_.global_bound < 2) throw ConfigError("global bound must be >= 2");
  if (cfg_.segment_length < 64) {
    throw ConfigError("segment length must be >= 64");
  }
  if (cfg_.threads < 1) throw ConfigError("threads must be >= 1");
  base_primes_ = simple_sieve(isqrt64(cfg_.global_bound));
}

SieveSegment Sieve::sieve_segment(int64_t lo, int64_t hi) const {
  if (lo < 2 || lo >= hi || hi > bound() + 1) {
    throw ConfigError("invalid segment range");
  }
  SieveSegment seg(lo, hi);
  int64_t last = hi - 1;
  for (int32_t p32 : base_primes_) {
    if (p32 == 2) continue;
    int64_t p = p32;
    if (p * p > last) break;
    int64_t start = std::max(p * p, (lo + p - 1) / p * p);
    if ((start & 1) == 0) start += p;
    for (int64_t x = start; x < hi; x += 2 * p) seg.clear_bit(x);
  }
  seg.finalize();
  return seg;
}

int64_t Sieve::pi(int64_t x) const {
  if (x > bound()) throw BoundExceededError("pi(x) beyond global bound");
  if (x < 2) return 0;
  int64_t count = 0;
  for_each_segment(2, x + 1, [&](const SieveSegment& seg) {
    count += seg.prime_count();
    return true;
  });
  return count;
}

int64_t Sieve::nth_prime(int64_t k) const {
  if (k < 1) throw ConfigError("nth_prime requires k >= 1");
  int64_t seen = 0;
  int64_t result = -1;
  for_each_segment(2, bound() + 1, [&](const SieveSegment& seg) {
    if (seen + seg.prime_count() < k) {
      seen += seg.prime_count();
      return true;
    }
    seg.for_each_prime([&](int64_t p) {
      if (++seen == k) {
        result = p;
        return false;
      }
      return true;
    });
    return false;
  });
  if (result < 0) throw BoundExceededError("p_k beyond global bound");
  return result;
}

int64_t Sieve::nth_composite(int64_t m) const {
  if (m < 1) throw ConfigError("nth_composite requires m >= 1");
  int64_t seen = 0;
  int64_t result = -1;
  for_each_segment(4, bound() + 1, [&](const SieveSegment& seg) {
    for (int64_t x = std::max<int64_t>(seg.lo(), 4); x < seg.hi(); ++x) {
      if (!seg.flag(x) && ++seen == m) {
        result = x;
        return false;
      }
    }
    return true;
  });
  if (result < 0) throw BoundExceededError("m-th composite beyond global bound");
  return result;
}

std::vector<int64_t> Sieve::prime_stream(int64_t lo, int64_t hi) const {
  if (lo < 0 || lo >= hi) throw ConfigError("prime_stream requires 0 <= lo < hi");
  if (hi > bound() + 1) {
    throw BoundExceededError("prime_stream beyond global bound");
  }
  std::vector<int64_t> primes;
  for_each_prime(std::max<int64_t>(lo, 2), hi, [&](int64_t p) {
    primes.push_back(p);
    return true;
  });
  return primes;
}

bool Sieve::is_prime(int64_t x) const {
  if (x > bound()) throw BoundExceededError("is_prime beyond global bound");
  if (x < 2) return false;
  for (int32_t p32 : base_primes_) {
    int64_t p = p32;
    if (p * p > x) break;
    if (x % p == 0) return x == p;
  }
  return true;
}

int64_t Sieve::checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("64-bit multiply overflow");
  }
  return r;
}

int64_t Sieve::checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("64-bit add overflow");
  }
  return r;
}

PrimeIterator::PrimeIterator(const Sieve& sieve) : sieve_(&sieve) {
  buffer_.reserve(4096);
}

void PrimeIterator::refill() {
  buffer_.clear();
  pos_ = 0;
  while (buffer_.empty()) {
    if (next_lo_ > sieve_->bound()) {
      throw BoundExceededError("prime iterator beyond global bound");
    }
    int64_t hi = std::min(sieve_->bound() + 1,
                          next_lo_ + sieve_->config().segment_length);
    SieveSegment seg = sieve_->sieve_segment(next_lo_, hi);
    seg.for_each_prime([&](int64_t p) {
      buffer_.push_back(p);
      return true;
    });
    next_lo_ = hi;
  }
}

int64_t PrimeIterator::next() {
  if (pos_ >= buffer_.size()) refill();
  ++index_;
  return buffer_[pos_++];
}

long double dusart_lower(int64_t k) {
  long double lk = std::log(static_cast<long double>(k));
  return k * (lk + std::log(lk) - 1.0L);
}

long double rosser_upper(int64_t k) {
  long double lk = std::log(static_cast<long double>(k));
  return k * (lk + std::log(lk));
}

bool kscan_settled(int64_t k, int64_t m, int64_t target) {
  if (k < 6) return false;
  long double lk = std::log(static_cast<long double>(k));
  long double bracket = lk + std::log(lk) - 1.0L - m;
  if (bracket <= 0) return false;
  // j*bracket(j) is increasing for j >= k once bracket > 0, so the Dusart
  // bound gives j*m - p_j <= -j*bracket(j) <= -k*bracket(k) for all j >= k.
  long double margin = 1.0L + std::abs(static_cast<long double>(target));
  return k * bracket * (1.0L - 1e-12L) > margin;
}

}  // namespace prl
