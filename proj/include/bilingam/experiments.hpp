#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "bilingam/datagen.hpp"
#include "bilingam/detector.hpp"
#include "bilingam/errors.hpp"
#include "bilingam/gaussianity.hpp"
#include "bilingam/independence.hpp"
#include "bilingam/rng.hpp"

namespace bilingam {

/// Grid configuration shared by both benchmark experiments.
///
/// `alpha` governs every decision made inside a run; the alpha carried in
/// `it_cfg` is overridden so a single flag controls the whole grid.
struct ExperimentConfig {
  std::vector<std::size_t> sample_sizes{400, 800, 1600};
  std::vector<NoiseKind> noise_kinds{NoiseKind::Gaussian, NoiseKind::Exponential,
                                     NoiseKind::Laplace, NoiseKind::Poisson};
  int batches = 100;
  double alpha = 0.05;
  IndependenceTestConfig it_cfg;
  GaussianityMethod gt = GaussianityMethod::JarqueBera;
  double slope = 2.0;
  std::uint64_t master_seed = 0;
};

/// One (noise, n) cell of the consistency experiment. `gt_phi[b]` and
/// `it_phi[b]` hold the accept indicators of the two paired decisions for
/// batch b; batches that threw are excluded and counted.
struct ConsistencyCell {
  NoiseKind noise = NoiseKind::Gaussian;
  std::size_t n = 0;
  double consistency_rate = 0.0;
  int excluded = 0;
  bool invalid = false;
  std::vector<int> gt_phi;
  std::vector<int> it_phi;
};

struct ConsistencyReport {
  std::vector<ConsistencyCell> cells;
};

/// One (noise, n, algorithm) cell of the tests-per-decision experiment.
/// `verdict_counts` is indexed by the Verdict enum order.
struct TpdCell {
  NoiseKind noise = NoiseKind::Gaussian;
  std::size_t n = 0;
  DetectorAlgorithm algorithm = DetectorAlgorithm::DualIndependence;
  double mean_tpd = 0.0;
  std::array<int, 4> verdict_counts{0, 0, 0, 0};
  int excluded = 0;
  bool invalid = false;
};

struct TpdReport {
  std::vector<TpdCell> cells;
};

namespace detail {

/// Deterministic per-batch seed: a fixed hash chain over cell identity and
/// batch index, independent of iteration order.
[[nodiscard]] inline std::uint64_t batch_seed(std::uint64_t master, NoiseKind noise,
                                              std::size_t n, int batch) {
  const std::uint64_t cell = derive_seed(derive_seed(master, noise_tag(noise)),
                                         static_cast<std::uint64_t>(n));
  return derive_seed(cell, static_cast<std::uint64_t>(batch));
}

inline void validate_experiment_config(const ExperimentConfig& cfg) {
  if (cfg.batches < 1) {
    throw InvalidInput("experiment: batches must be >= 1");
  }
  if (cfg.sample_sizes.empty()) {
    throw InvalidInput("experiment: sample_sizes must not be empty");
  }
  if (cfg.noise_kinds.empty()) {
    throw InvalidInput("experiment: noise_kinds must not be empty");
  }
  for (std::size_t n : cfg.sample_sizes) {
    if (n < 20) {
      throw InsufficientSample("experiment: sample sizes must be >= 20");
    }
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw InvalidInput("experiment: alpha must lie in (0, 1)");
  }
  if (!std::isfinite(cfg.slope)) {
    throw InvalidInput("experiment: slope must be finite");
  }
}

/// A cell is unusable once more than 10% of its batches errored out.
[[nodiscard]] inline bool cell_invalid(int excluded, int batches) {
  return excluded * 10 > batches;
}

}  // namespace detail

/// Consistency experiment: for every (noise, n) cell and batch, pair the
/// Gaussianity decision on the forward residual with the independence
/// decision on (standardized y, reverse residual) and record how often the
/// two accept/reject indicators agree.
[[nodiscard]] inline ConsistencyReport run_consistency(const ExperimentConfig& cfg) {
  detail::validate_experiment_config(cfg);
  ConsistencyReport report;
  for (NoiseKind noise : cfg.noise_kinds) {
    for (std::size_t n : cfg.sample_sizes) {
      ConsistencyCell cell;
      cell.noise = noise;
      cell.n = n;
      int matches = 0;
      for (int b = 0; b < cfg.batches; ++b) {
        const std::uint64_t seed = detail::batch_seed(cfg.master_seed, noise, n, b);
        try {
          const PairedSample sample =
              generate({n, cfg.slope, noise, derive_seed(seed, 1)});
          const auto fits = detail::standardize_and_fit(sample);
          const TestDecision gt_d =
              gaussianity_test(cfg.gt, fits.forward.residuals, cfg.alpha);
          IndependenceTestConfig it = cfg.it_cfg;
          it.alpha = cfg.alpha;
          it.rng_seed = derive_seed(seed, 2);
          const TestDecision it_d =
              independence_test(fits.z.y, fits.reverse.residuals, it);
          cell.gt_phi.push_back(gt_d.phi);
          cell.it_phi.push_back(it_d.phi);
          if (gt_d.phi == it_d.phi) ++matches;
        } catch (const Error&) {
          ++cell.excluded;
        }
      }
      const int evaluated = cfg.batches - cell.excluded;
      cell.consistency_rate =
          evaluated > 0 ? static_cast<double>(matches) / evaluated : 0.0;
      cell.invalid = detail::cell_invalid(cell.excluded, cfg.batches);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

/// Tests-per-decision experiment: both detectors run over the SAME per-batch
/// samples so their test counts are directly comparable.
[[nodiscard]] inline TpdReport run_tpd(const ExperimentConfig& cfg) {
  detail::validate_experiment_config(cfg);
  TpdReport report;
  for (NoiseKind noise : cfg.noise_kinds) {
    for (std::size_t n : cfg.sample_sizes) {
      TpdCell dual;
      dual.noise = noise;
      dual.n = n;
      dual.algorithm = DetectorAlgorithm::DualIndependence;
      TpdCell gated = dual;
      gated.algorithm = DetectorAlgorithm::GaussianityGated;
      long dual_tests = 0;
      long gated_tests = 0;
      for (int b = 0; b < cfg.batches; ++b) {
        const std::uint64_t seed = detail::batch_seed(cfg.master_seed, noise, n, b);
        try {
          const PairedSample sample =
              generate({n, cfg.slope, noise, derive_seed(seed, 1)});
          IndependenceTestConfig it = cfg.it_cfg;
          it.alpha = cfg.alpha;
          it.rng_seed = derive_seed(seed, 2);
          const DirectionReport d = detect_direction(sample, it);
          const DirectionReport g =
              detect_direction_gated(sample, it, cfg.gt, cfg.alpha);
          dual_tests += d.tests_performed;
          gated_tests += g.tests_performed;
          ++dual.verdict_counts[static_cast<std::size_t>(d.verdict)];
          ++gated.verdict_counts[static_cast<std::size_t>(g.verdict)];
        } catch (const Error&) {
          ++dual.excluded;
          ++gated.excluded;
        }
      }
      const int evaluated = cfg.batches - dual.excluded;
      dual.mean_tpd =
          evaluated > 0 ? static_cast<double>(dual_tests) / evaluated : 0.0;
      gated.mean_tpd =
          evaluated > 0 ? static_cast<double>(gated_tests) / evaluated : 0.0;
      dual.invalid = detail::cell_invalid(dual.excluded, cfg.batches);
      gated.invalid = detail::cell_invalid(gated.excluded, cfg.batches);
      report.cells.push_back(std::move(dual));
      report.cells.push_back(std::move(gated));
    }
  }
  return report;
}

}  // namespace bilingam
