#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace graphflow {

/// Seeded PRNG with explicit draw helpers. The mt19937_64 engine is fully
/// specified by the standard, but std:: distributions are not; every draw
/// is derived here so that a seed pins down the whole run on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);

  /// Uniform integer in {0, ..., n-1}; n >= 1.
  int uniform_int(int n);

  /// Index drawn from an (approximately normalized) weight vector.
  /// Weights must be non-negative with positive total.
  int categorical(std::span<const double> weights);

  std::uint64_t next_u64();

  /// Independent child stream; substream(i) of a given Rng is stable under
  /// the number or order of draws taken from the parent.
  Rng substream(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace graphflow
