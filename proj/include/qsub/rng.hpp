#pragma once

#include <cstdint>

namespace qsub {

// SplitMix64 stream (Steele/Lea/Flood, the java.util.SplittableRandom core).
// Chosen over std::mt19937_64 because substream derivation from
// (seed, trial index) is one documented mixing step, and every output is
// reproducible from the definition alone on any platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(mix(seed)) {}

  // Independent stream for trial `index` under `seed`: the pair is hashed
  // with two finalizer rounds (distinct additive constants between rounds).
  // Distinct indices, and the plain `RandomStream(seed)` stream, never
  // coincide.
  static RandomStream for_trial(std::uint64_t seed, std::uint64_t index) {
    RandomStream s(0);
    s.state_ = mix(mix(seed + kGamma * (index + 1)) + kGamma2);
    return s;
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kGamma2 = 0xD1B54A32D192ED03ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace qsub
