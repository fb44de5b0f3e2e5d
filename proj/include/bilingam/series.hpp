#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bilingam/errors.hpp"

namespace bilingam {

/// Ordered list of real observations. Statistical operations require
/// length >= 3 and finite values; each operation checks what it needs.
using Series = std::vector<double>;

inline void require_finite(const Series& s, const char* label) {
  for (double v : s) {
    if (!std::isfinite(v)) {
      throw InvalidInput(std::string(label) + ": non-finite value");
    }
  }
}

inline void require_min_size(const Series& s, std::size_t min_n, const char* label) {
  if (s.size() < min_n) {
    throw InsufficientSample(std::string(label) + ": need at least " +
                             std::to_string(min_n) + " observations, got " +
                             std::to_string(s.size()));
  }
}

[[nodiscard]] inline double mean(const Series& s) {
  double acc = 0.0;
  for (double v : s) acc += v;
  return acc / static_cast<double>(s.size());
}

/// Sample variance with the (n-1) denominator.
[[nodiscard]] inline double sample_variance(const Series& s) {
  const double m = mean(s);
  double acc = 0.0;
  for (double v : s) acc += (v - m) * (v - m);
  return acc / static_cast<double>(s.size() - 1);
}

/// Sample standard deviation with the (n-1) denominator.
[[nodiscard]] inline double sample_std(const Series& s) {
  return std::sqrt(sample_variance(s));
}

/// Central moment E[(v - mean)^order] with the biased n denominator,
/// the convention skewness/kurtosis statistics are built on.
[[nodiscard]] inline double central_moment(const Series& s, int order) {
  const double m = mean(s);
  double acc = 0.0;
  for (double v : s) acc += std::pow(v - m, order);
  return acc / static_cast<double>(s.size());
}

/// Median; even-length input returns the midpoint of the two middle values.
/// Takes its argument by value because selection reorders it.
[[nodiscard]] inline double median_of(std::vector<double> v) {
  if (v.empty()) throw InvalidInput("median_of: empty input");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

[[nodiscard]] inline double dot(const Series& a, const Series& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace bilingam
