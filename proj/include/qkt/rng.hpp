// rng.hpp - deterministic counter-based random streams
//
// SplitMix64 generator with per-member streams derived by hashing
// (seed, stream). Every draw is reproducible bit-for-bit regardless of how
// work is scheduled across threads, and independent of the platform's
// <random> distributions.
#pragma once

#include <cstdint>

namespace qkt {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::mix64(state_);
  }

  // Uniform in [0, 1), using the top 53 bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

 private:
  std::uint64_t state_;
};

// Stream `stream` of the generator family keyed by `seed`. Streams are
// decorrelated by hashing before use.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t mixed =
      detail::mix64(seed ^ detail::mix64(stream * 0x9e3779b97f4a7c15ULL + 1));
  return SplitMix64(mixed);
}

}  // namespace qkt
