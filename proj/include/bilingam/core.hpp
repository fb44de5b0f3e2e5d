#pragma once

#include <cmath>
#include <cstddef>

#include "bilingam/errors.hpp"
#include "bilingam/series.hpp"

namespace bilingam {

enum class Direction { Forward, Reverse };

/// Two series observed jointly; element i of x and y is one observation.
struct PairedSample {
  Series x;
  Series y;
};

/// A series rescaled to mean 0 and unit sample standard deviation, together
/// with the affine transform that undoes the rescaling.
struct StandardizedSeries {
  Series values;
  double original_mean = 0.0;
  double original_std = 1.0;
};

/// Slope-only least-squares fit of one model direction. Forward fits
/// y = slope * x (residuals estimate the y-side disturbance); Reverse fits
/// x = slope * y. No intercept: inputs are standardized.
struct RegressionFit {
  Direction direction = Direction::Forward;
  double slope = 0.0;
  Series residuals;
};

/// Rescales s to mean 0 and sample standard deviation 1 ((n-1) denominator).
[[nodiscard]] inline StandardizedSeries standardize(const Series& s) {
  require_min_size(s, 3, "standardize");
  require_finite(s, "standardize");
  const double m = mean(s);
  const double sd = sample_std(s);
  if (sd == 0.0) {
    throw DegenerateSeries("standardize: constant series has no scale");
  }
  StandardizedSeries out;
  out.original_mean = m;
  out.original_std = sd;
  out.values.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.values[i] = (s[i] - m) / sd;
  }
  return out;
}

/// Undoes standardize: v -> v * original_std + original_mean.
[[nodiscard]] inline Series inverse_standardize(const StandardizedSeries& z) {
  Series out(z.values.size());
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    out[i] = z.values[i] * z.original_std + z.original_mean;
  }
  return out;
}

/// True when s has mean within tol of 0 and sample std within tol of 1.
[[nodiscard]] inline bool is_standardized(const Series& s, double tol = 1e-8) {
  if (s.size() < 3) return false;
  return std::abs(mean(s)) <= tol && std::abs(sample_std(s) - 1.0) <= tol;
}

/// Fits one direction of the bivariate linear model on standardized data.
/// Forward: regressor x, response y. Reverse: regressor y, response x.
/// slope = <regressor, response> / <regressor, regressor>; on standardized
/// inputs this equals the sample correlation in both directions.
[[nodiscard]] inline RegressionFit fit(const PairedSample& sample, Direction direction) {
  if (sample.x.size() != sample.y.size()) {
    throw LengthMismatch("fit: x and y lengths differ");
  }
  require_min_size(sample.x, 3, "fit");
  if (!is_standardized(sample.x)) {
    throw NotStandardized("fit: x is not standardized");
  }
  if (!is_standardized(sample.y)) {
    throw NotStandardized("fit: y is not standardized");
  }
  const Series& regressor = (direction == Direction::Forward) ? sample.x : sample.y;
  const Series& response = (direction == Direction::Forward) ? sample.y : sample.x;
  const double slope = dot(regressor, response) / dot(regressor, regressor);
  RegressionFit out;
  out.direction = direction;
  out.slope = slope;
  out.residuals.resize(response.size());
  for (std::size_t i = 0; i < response.size(); ++i) {
    out.residuals[i] = response[i] - slope * regressor[i];
  }
  return out;
}

}  // namespace bilingam
