#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "bilingam/core.hpp"
#include "bilingam/errors.hpp"
#include "bilingam/rng.hpp"
#include "bilingam/series.hpp"

namespace bilingam {

enum class NoiseKind { Gaussian, Exponential, Laplace, Poisson };

/// Stable identifier for seed derivation and report labels; independent of
/// enum layout.
[[nodiscard]] constexpr std::uint64_t noise_tag(NoiseKind k) {
  switch (k) {
    case NoiseKind::Gaussian: return 1;
    case NoiseKind::Exponential: return 2;
    case NoiseKind::Laplace: return 3;
    case NoiseKind::Poisson: return 4;
  }
  return 0;
}

[[nodiscard]] constexpr const char* noise_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::Gaussian: return "gaussian";
    case NoiseKind::Exponential: return "exponential";
    case NoiseKind::Laplace: return "laplace";
    case NoiseKind::Poisson: return "poisson";
  }
  return "unknown";
}

/// Synthetic-sample recipe: x is standard normal, y = slope * x + noise.
struct GenSpec {
  std::size_t n = 0;
  double slope = 2.0;
  NoiseKind noise = NoiseKind::Gaussian;
  std::uint64_t seed = 0;
};

/// n i.i.d. draws, centered to mean 0: Gaussian(0,1) and Laplace(0,1) are
/// already centered; Exponential(rate 1) and Poisson(rate 1) are shifted by
/// their mean 1. Natural variances are kept (no rescaling).
[[nodiscard]] inline Series sample_noise(NoiseKind kind, std::size_t n, Rng& rng) {
  Series out(n);
  switch (kind) {
    case NoiseKind::Gaussian:
      for (auto& v : out) v = rng.standard_normal();
      break;
    case NoiseKind::Exponential:
      for (auto& v : out) v = -std::log(rng.uniform01()) - 1.0;
      break;
    case NoiseKind::Laplace:
      for (auto& v : out) {
        const double u = rng.uniform01() - 0.5;
        const double mag = -std::log(1.0 - 2.0 * std::abs(u));
        v = u < 0.0 ? -mag : mag;
      }
      break;
    case NoiseKind::Poisson:
      // Knuth's product-of-uniforms method at rate 1.
      for (auto& v : out) {
        const double limit = std::exp(-1.0);
        int k = 0;
        double p = 1.0;
        do {
          ++k;
          p *= rng.uniform01();
        } while (p > limit);
        v = static_cast<double>(k - 1) - 1.0;
      }
      break;
  }
  return out;
}

/// Draws a paired sample from the recipe. x and the noise come from
/// independently derived substreams of spec.seed, so changing the noise
/// kind leaves x untouched.
[[nodiscard]] inline PairedSample generate(const GenSpec& spec) {
  if (spec.n < 20) {
    throw InsufficientSample("generate: n must be >= 20");
  }
  if (!std::isfinite(spec.slope)) {
    throw InvalidInput("generate: slope must be finite");
  }
  Rng x_rng(derive_seed(spec.seed, 1));
  Rng e_rng(derive_seed(spec.seed, 2));
  PairedSample out;
  out.x.resize(spec.n);
  for (auto& v : out.x) v = x_rng.standard_normal();
  const Series eps = sample_noise(spec.noise, spec.n, e_rng);
  out.y.resize(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    out.y[i] = spec.slope * out.x[i] + eps[i];
  }
  return out;
}

}  // namespace bilingam
