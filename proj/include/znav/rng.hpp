// Counter-based RNG for reproducible, order-independent sampling: each
// sample index gets its own stream, so parallel loops draw identical values
// at any thread count.

#ifndef ZNAV_RNG_HPP
#define ZNAV_RNG_HPP

#include <cstdint>

namespace znav {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace znav

#endif
