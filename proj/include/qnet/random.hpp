#pragma once

#include <cstdint>
#include <limits>

namespace qnet {

// SplitMix64 (Steele, Lea, Flood 2014). Each trial or session draws from its
// own stream keyed by (seed, index), so results do not depend on how the work
// is split across threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr const char* kAlgorithm = "splitmix64/keyed-v1";

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Independent stream number `index` under `seed`.
  static constexpr SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL)));
  }

 private:
  std::uint64_t state_;
};

// Uniform in [0, 1) with 53 random bits; identical on every platform.
inline double uniform01(SplitMix64& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// True with probability p; p = 0 never fires and p = 1 always does.
inline bool bernoulli(SplitMix64& rng, double p) noexcept { return uniform01(rng) < p; }

}  // namespace qnet
