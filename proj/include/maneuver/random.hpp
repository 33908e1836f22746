#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace maneuver {

// Seeded generator whose derived draws are fully specified here, so synthetic
// corpora and splits are identical across standard library implementations
// (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Standard normal via Box-Muller (cosine branch only).
  double normal();
  // Uniform on [0, bound); bound > 0.
  std::size_t uniform_index(std::size_t bound);
  // Fisher-Yates.
  void shuffle(std::span<std::size_t> values);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent child seeds from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace maneuver
