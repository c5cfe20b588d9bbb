#ifndef REFSTATE_RNG_HPP
#define REFSTATE_RNG_HPP

#include <cstdint>

namespace refstate {

// SplitMix64. Chosen over std::mt19937 because the standard distributions
// are implementation-defined; every draw below is specified bit-exactly, so
// samples are reproducible across compilers given the same seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 bits of the stream.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool coin(double prob) { return next_double() < prob; }

  bool fair_bit() { return (next_u64() >> 63) != 0; }

  // Uniform in [0, n). Rejection sampling, exact for any n >= 1.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Derives an independent stream for sub-task `index`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return g.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace refstate

#endif
