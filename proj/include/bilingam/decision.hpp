#pragma once

#include "bilingam/errors.hpp"

namespace bilingam {

enum class TestKind { Independence, Gaussianity };

/// Outcome of one hypothesis test. phi is the decision variable:
/// 1 means do not reject the null, 0 means reject, so
/// phi + (reject ? 1 : 0) == 1 always holds.
struct TestDecision {
  TestKind kind = TestKind::Independence;
  double statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;
  int phi = 1;
};

/// Builds a TestDecision enforcing the reject/phi encoding.
[[nodiscard]] inline TestDecision make_decision(TestKind kind, double statistic,
                                                double p_value, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidInput("make_decision: alpha must lie in (0, 1)");
  }
  if (!(p_value >= 0.0 && p_value <= 1.0)) {
    throw InvalidInput("make_decision: p-value outside [0, 1]");
  }
  const bool reject = p_value < alpha;
  return TestDecision{kind, statistic, p_value, alpha, reject, reject ? 0 : 1};
}

}  // namespace bilingam
