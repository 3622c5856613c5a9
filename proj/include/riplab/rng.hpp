#ifndef RIPLAB_RNG_HPP
#define RIPLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace riplab {

// 64-bit finalizer from SplitMix64 (Steele, Lea, Flood 2014). Used both as
// the substream derivation mix and as the generator's output scrambler, so
// every random quantity in the toolkit is reproducible from (seed, index)
// alone, independent of platform or standard library.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derive the seed for substream `index` of `seed` (per-column generation,
// per-trial probes). XOR with a golden-ratio multiple keeps distinct indices
// from colliding even for adjacent seeds.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  return seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
}

// SplitMix64 stream. Small state, passes BigCrush, fully specified output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_++); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection; unbiased for any bound.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  int next_sign() { return (next() >> 63) ? 1 : -1; }

  // Standard normal via Box-Muller; pairs cached so consecutive draws cost
  // one transform per two values.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace riplab

#endif  // RIPLAB_RNG_HPP
