#pragma once

#include <cstdint>
#include <vector>

namespace sphsamp {

/// xoshiro256** seeded through splitmix64. Every derived quantity (uniforms,
/// normals, subsets) is computed here with fixed arithmetic so streams are
/// identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound), bound > 0, without modulo bias.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via the Marsaglia polar method.
  double normal();
  /// Sorted sample of `count` distinct indices from [0, population).
  std::vector<int> sample_without_replacement(int population, int count);

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes a base seed with stream identifiers into an independent seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace sphsamp
