#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bilingam/decision.hpp"
#include "bilingam/errors.hpp"
#include "bilingam/series.hpp"
#include "bilingam/special.hpp"

namespace bilingam {

enum class GaussianityMethod { JarqueBera, AndersonDarling };

/// Jarque-Bera statistic (n/6) * (S^2 + (K-3)^2 / 4) with sample skewness S
/// and kurtosis K built from biased (n-denominator) central moments.
[[nodiscard]] inline double jarque_bera_statistic(const Series& s) {
  require_min_size(s, 3, "jarque_bera_statistic");
  require_finite(s, "jarque_bera_statistic");
  const double m2 = central_moment(s, 2);
  if (m2 == 0.0) {
    throw DegenerateSeries("jarque_bera_statistic: zero variance");
  }
  const double m3 = central_moment(s, 3);
  const double m4 = central_moment(s, 4);
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  const double n = static_cast<double>(s.size());
  return (n / 6.0) * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
}

/// Jarque-Bera normality test. The asymptotic null is chi-square with two
/// degrees of freedom, whose upper tail is exp(-stat / 2) in closed form.
[[nodiscard]] inline TestDecision jarque_bera_test(const Series& s, double alpha) {
  require_min_size(s, 20, "jarque_bera_test");
  const double stat = jarque_bera_statistic(s);
  const double p = std::exp(-0.5 * stat);
  return make_decision(TestKind::Gaussianity, stat, p, alpha);
}

/// Anderson-Darling A^2 against the normal fitted by sample mean and
/// (n-1) standard deviation (composite null, both parameters estimated).
[[nodiscard]] inline double anderson_darling_statistic(const Series& s) {
  require_min_size(s, 3, "anderson_darling_statistic");
  require_finite(s, "anderson_darling_statistic");
  const double m = mean(s);
  const double sd = sample_std(s);
  if (sd == 0.0) {
    throw DegenerateSeries("anderson_darling_statistic: zero variance");
  }
  std::vector<double> z(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) z[i] = (s[i] - m) / sd;
  std::sort(z.begin(), z.end());
  const std::size_t n = z.size();
  // Clamp CDF values away from 0 and 1 so the logs stay finite.
  constexpr double kFloor = 1e-300;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = std::max(normal_cdf(z[i]), kFloor);
    const double hi = std::max(1.0 - normal_cdf(z[n - 1 - i]), kFloor);
    acc += (2.0 * static_cast<double>(i) + 1.0) * (std::log(lo) + std::log(hi));
  }
  return -static_cast<double>(n) - acc / static_cast<double>(n);
}

/// Anderson-Darling normality test. The reported statistic is the
/// small-sample adjusted A*^2 = A^2 (1 + 0.75/n + 2.25/n^2); the p-value
/// uses Stephens' piecewise exponential approximations for the
/// estimated-parameters case.
[[nodiscard]] inline TestDecision anderson_darling_test(const Series& s, double alpha) {
  require_min_size(s, 8, "anderson_darling_test");
  const double n = static_cast<double>(s.size());
  const double a2 = anderson_darling_statistic(s);
  const double aa = a2 * (1.0 + 0.75 / n + 2.25 / (n * n));
  double p;
  if (aa < 0.2) {
    p = 1.0 - std::exp(-13.436 + 101.14 * aa - 223.73 * aa * aa);
  } else if (aa < 0.34) {
    p = 1.0 - std::exp(-8.318 + 42.796 * aa - 59.938 * aa * aa);
  } else if (aa < 0.6) {
    p = std::exp(0.9177 - 4.279 * aa - 1.38 * aa * aa);
  } else if (aa < 10.0) {
    p = std::exp(1.2937 - 5.709 * aa + 0.0186 * aa * aa);
  } else {
    p = 3.7e-24;
  }
  p = std::clamp(p, 0.0, 1.0);
  return make_decision(TestKind::Gaussianity, aa, p, alpha);
}

/// Dispatch over the configured Gaussianity test family.
[[nodiscard]] inline TestDecision gaussianity_test(GaussianityMethod method,
                                                   const Series& s, double alpha) {
  switch (method) {
    case GaussianityMethod::JarqueBera:
      return jarque_bera_test(s, alpha);
    case GaussianityMethod::AndersonDarling:
      return anderson_darling_test(s, alpha);
  }
  throw InvalidInput("gaussianity_test: unknown method");
}

}  // namespace bilingam
