#pragma once

#include <cstdint>
#include <initializer_list>

namespace mixedisc {

/// Counter-based random generator (Philox4x32-10, Salmon et al. 2011).
///
/// The 64-bit seed is the key; the 64-bit stream id occupies the upper
/// counter words, so streams with the same seed are statistically
/// independent and a stream's output never depends on how many values
/// other streams consumed. This is what makes per-repetition sampling
/// reproducible regardless of worker-pool scheduling.
class PhiloxRng {
 public:
  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  /// Next 64 random bits.
  std::uint64_t next_u64() {
    if (buffered_ == 0) {
      refill();
      buffered_ = 2;
    }
    return buf_[2 - buffered_--];
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  /// Derive a 64-bit stream id from integer parts (splitmix64 chain).
  /// Deterministic, order-sensitive, collision-resistant at our scale.
  static std::uint64_t derive_stream(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p + 0xbf58476d1ce4e5b9ull));
    return h;
  }

 private:
  static constexpr std::uint32_t kMult0 = 0xD2511F53u;
  static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  void refill() {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
    std::uint32_t c2 = stream_lo_;
    std::uint32_t c3 = stream_hi_;
    std::uint32_t k0 = key0_;
    std::uint32_t k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c0;
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      c0 = hi1 ^ c1 ^ k0;
      c1 = lo1;
      c2 = hi0 ^ c3 ^ k1;
      c3 = lo0;
      if (round < 9) {
        k0 += kWeyl0;
        k1 += kWeyl1;
      }
    }
    buf_[0] = (static_cast<std::uint64_t>(c1) << 32) | c0;
    buf_[1] = (static_cast<std::uint64_t>(c3) << 32) | c2;
    ++counter_;
  }

  std::uint32_t key0_, key1_;
  std::uint32_t stream_lo_, stream_hi_;
  std::uint64_t counter_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int buffered_ = 0;
};

}  // namespace mixedisc
