#pragma once

#include <optional>
#include <utility>

#include "bilingam/core.hpp"
#include "bilingam/decision.hpp"
#include "bilingam/errors.hpp"
#include "bilingam/gaussianity.hpp"
#include "bilingam/independence.hpp"
#include "bilingam/rng.hpp"

namespace bilingam {

/// Four-way outcome: a causal direction, abstention because the noise looks
/// Gaussian (the direction is not identifiable there), or Inconclusive when
/// both independence nulls are rejected.
enum class Verdict { XtoY, YtoX, GaussianNoise, Inconclusive };

[[nodiscard]] constexpr const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::XtoY: return "XtoY";
    case Verdict::YtoX: return "YtoX";
    case Verdict::GaussianNoise: return "GaussianNoise";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

/// DualIndependence always runs both independence tests (2 tests per
/// decision). GaussianityGated runs a Gaussianity pretest on the forward
/// residual and only tests independence when that pretest rejects (1 or 3
/// tests per decision).
enum class DetectorAlgorithm { DualIndependence, GaussianityGated };

[[nodiscard]] constexpr const char* algorithm_name(DetectorAlgorithm a) {
  switch (a) {
    case DetectorAlgorithm::DualIndependence: return "dual_independence";
    case DetectorAlgorithm::GaussianityGated: return "gaussianity_gated";
  }
  return "unknown";
}

/// Detection outcome with the per-test evidence and the test count that the
/// tests-per-decision metric aggregates. h10 tests x independent of the
/// forward residual; h20 tests y independent of the reverse residual; the
/// gated algorithm may stop after its Gaussianity pretest, leaving both
/// independence slots empty.
struct DirectionReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<TestDecision> h10;
  std::optional<TestDecision> h20;
  std::optional<TestDecision> gaussianity;
  int tests_performed = 0;
  DetectorAlgorithm algorithm = DetectorAlgorithm::DualIndependence;
};

/// Verdict truth table over the two acceptance indicators.
[[nodiscard]] constexpr Verdict decide(bool h10_accept, bool h20_accept) {
  if (h10_accept && h20_accept) return Verdict::GaussianNoise;
  if (h10_accept) return Verdict::XtoY;
  if (h20_accept) return Verdict::YtoX;
  return Verdict::Inconclusive;
}

namespace detail {

struct StandardizedFits {
  PairedSample z;
  RegressionFit forward;
  RegressionFit reverse;
};

inline StandardizedFits standardize_and_fit(const PairedSample& sample) {
  if (sample.x.size() != sample.y.size()) {
    throw LengthMismatch("detect: x and y lengths differ");
  }
  require_min_size(sample.x, 20, "detect");
  StandardizedFits out;
  out.z.x = standardize(sample.x).values;
  out.z.y = standardize(sample.y).values;
  out.forward = fit(out.z, Direction::Forward);
  out.reverse = fit(out.z, Direction::Reverse);
  return out;
}

}  // namespace detail

/// Detects the causal direction by testing exogeneity of both model
/// directions: H10 (x independent of the forward residual) and H20
/// (y independent of the reverse residual). Always performs exactly two
/// tests; the two tests consume independently derived substreams of
/// cfg.rng_seed so reports reproduce byte for byte.
[[nodiscard]] inline DirectionReport detect_direction(const PairedSample& sample,
                                                      const IndependenceTestConfig& cfg) {
  const auto fits = detail::standardize_and_fit(sample);
  IndependenceTestConfig cfg10 = cfg;
  cfg10.rng_seed = derive_seed(cfg.rng_seed, 1);
  IndependenceTestConfig cfg20 = cfg;
  cfg20.rng_seed = derive_seed(cfg.rng_seed, 2);
  const TestDecision h10 = independence_test(fits.z.x, fits.forward.residuals, cfg10);
  const TestDecision h20 = independence_test(fits.z.y, fits.reverse.residuals, cfg20);
  DirectionReport report;
  report.verdict = decide(!h10.reject, !h20.reject);
  report.h10 = h10;
  report.h20 = h20;
  report.tests_performed = 2;
  report.algorithm = DetectorAlgorithm::DualIndependence;
  return report;
}

/// Gaussianity-gated detection: one Gaussianity test on the forward
/// residual. If it does not reject (the noise looks Gaussian), abstain with
/// tests_performed == 1. If it rejects (non-Gaussian noise confirmed), run
/// both independence tests and decide, tests_performed == 3.
[[nodiscard]] inline DirectionReport detect_direction_gated(
    const PairedSample& sample, const IndependenceTestConfig& it_cfg,
    GaussianityMethod gt, double alpha) {
  const auto fits = detail::standardize_and_fit(sample);
  const TestDecision pretest = gaussianity_test(gt, fits.forward.residuals, alpha);
  DirectionReport report;
  report.algorithm = DetectorAlgorithm::GaussianityGated;
  report.gaussianity = pretest;
  if (!pretest.reject) {
    report.verdict = Verdict::GaussianNoise;
    report.tests_performed = 1;
    return report;
  }
  IndependenceTestConfig cfg10 = it_cfg;
  cfg10.rng_seed = derive_seed(it_cfg.rng_seed, 1);
  IndependenceTestConfig cfg20 = it_cfg;
  cfg20.rng_seed = derive_seed(it_cfg.rng_seed, 2);
  const TestDecision h10 = independence_test(fits.z.x, fits.forward.residuals, cfg10);
  const TestDecision h20 = independence_test(fits.z.y, fits.reverse.residuals, cfg20);
  report.verdict = decide(!h10.reject, !h20.reject);
  report.h10 = h10;
  report.h20 = h20;
  report.tests_performed = 3;
  return report;
}

}  // namespace bilingam
