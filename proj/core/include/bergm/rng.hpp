#ifndef BERGM_RNG_HPP_
#define BERGM_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace bergm {

/// 64-bit Mersenne Twister with portable bounded-integer and uniform-real
/// draws, so a seed reproduces the same stream on every standard library.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent seed for sub-stream `stream` (chain, grid point,
/// anchor) from a base seed with the SplitMix64 finalizer.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace bergm

#endif  // BERGM_RNG_HPP_
