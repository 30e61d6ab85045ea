#pragma once

#include <cstdint>

namespace seqent {

// SplitMix64 (Steele, Lea, Flood). The whole generator is a dozen lines we
// own, so sampled sequences are bit-stable across compilers and platforms,
// which the golden-file tests rely on. Standard-library distributions are
// not bit-stable across implementations and are deliberately avoided.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1. Fixed-point multiply keeps the
  // mapping platform-independent.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Stream-splitting rule: stream `k` of a run with base seed `s` is a
// SplitMix64 generator seeded with mix(s + (k + 1) * golden-ratio). Each
// realization r of an ensemble uses streams 2r (primary) and 2r + 1
// (secondary), so results do not depend on scheduling or worker count.
inline std::uint64_t derive_stream_seed(std::uint64_t base_seed,
                                        std::uint64_t stream) {
  SplitMix64 g(base_seed + (stream + 1) * 0x9E3779B97F4A7C15ull);
  return g.next();
}

}  // namespace seqent
