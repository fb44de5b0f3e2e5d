#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "bilingam/errors.hpp"

namespace bilingam {

/// splitmix64 finalizer. Bijective on 64-bit integers; decorrelates
/// structured inputs (small tags, consecutive indices).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from a base seed and a stream tag. Chained calls
/// build hierarchical, order-sensitive stream trees, so independently
/// derived streams never depend on iteration order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) noexcept {
  return mix64(base ^ mix64(tag));
}

/// Deterministic random stream. Wraps mt19937_64 and hand-rolls every
/// sampler on top of the raw bit stream, so sequences are identical across
/// standard library implementations (distribution classes are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on the open interval (0, 1); never returns 0 or 1 exactly.
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal draw, Box-Muller cosine branch (two uniforms per draw).
  double standard_normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Unbiased integer in [0, bound) by rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidInput("below: bound must be positive");
    // Reject the low partial cycle so the accepted range is a multiple of bound.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t v = gen_();
      if (v >= threshold) return v % bound;
    }
  }

  /// Fisher-Yates shuffle, in place.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::uint64_t j = below(i);
      std::swap(values[i - 1], values[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bilingam
