#pragma once

#include <cstdint>
#include <limits>

namespace octrack {

/// SplitMix64 generator. Every random draw in the toolkit is keyed by a
/// (seed, stream, index) triple, so the same triple reproduces the same
/// draws regardless of call order.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class RngStream : std::uint64_t {
  RenderNoise = 1,
  ObsNoise = 2,
};

/// Independent generator for one (seed, stream, index) cell.
inline SplitMix64 make_rng(std::uint64_t seed, RngStream stream, std::uint64_t index) {
  const std::uint64_t a = mix64(seed + 0x632be59bd9b4e019ULL);
  const std::uint64_t b = mix64(a ^ static_cast<std::uint64_t>(stream));
  return SplitMix64(mix64(b ^ index));
}

}  // namespace octrack
