#pragma once

#include <cstdint>

namespace rspa {

/// Counter-based uniform stream: output i of stream s under seed q is the
/// SplitMix64 finalizer applied to a mix of (q, s, i). Streams are stateless
/// apart from the counter, so any (seed, stream) pair can be reconstructed at
/// O(1) cost and partitioning work across streams never changes the draws.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(mix(seed + 0x9E3779B97F4A7C15ull) ^ mix(stream + 0x632BE59BD9B4E019ull))) {}

  std::uint64_t next_u64() {
    ++counter_;
    return mix(key_ + counter_ * 0x9E3779B97F4A7C15ull);
  }

  /// Uniform draw in [0,1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rspa
