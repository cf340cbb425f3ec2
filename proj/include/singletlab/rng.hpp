#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace singletlab {

// Seeded pseudorandom source threaded explicitly through every sampling
// call. Uniform and normal variates are derived from the raw 64-bit engine
// output by fixed formulas so results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for shot `index` of an experiment seeded with `master`.
  static Rng for_shot(std::uint64_t master, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal();

  // Index i drawn with probability weights[i] / sum(weights).
  std::size_t sample_index(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Inverse-CDF sampler for drawing many shots from one fixed distribution.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights);
  std::size_t operator()(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
};

}  // namespace singletlab
