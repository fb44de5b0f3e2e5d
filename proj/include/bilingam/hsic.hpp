#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "bilingam/errors.hpp"
#include "bilingam/series.hpp"

namespace bilingam {

/// Gaussian-kernel length scale: median of the nonzero pairwise absolute
/// differences |s_i - s_j|, i < j.
[[nodiscard]] inline double median_heuristic_bandwidth(const Series& s) {
  require_min_size(s, 3, "median_heuristic_bandwidth");
  require_finite(s, "median_heuristic_bandwidth");
  std::vector<double> diffs;
  diffs.reserve(s.size() * (s.size() - 1) / 2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double d = std::abs(s[i] - s[j]);
      if (d > 0.0) diffs.push_back(d);
    }
  }
  if (diffs.empty()) {
    throw DegenerateSeries(
        "median_heuristic_bandwidth: all pairwise differences are zero");
  }
  return median_of(std::move(diffs));
}

/// Dense n*n Gram matrix of k(u, v) = exp(-(u - v)^2 / (2 sigma^2)),
/// row-major.
[[nodiscard]] inline std::vector<double> gaussian_gram(const Series& s, double sigma) {
  if (!(sigma > 0.0)) {
    throw InvalidInput("gaussian_gram: sigma must be positive");
  }
  const std::size_t n = s.size();
  std::vector<double> g(n * n);
  const double scale = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t i = 0; i < n; ++i) {
    g[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = s[i] - s[j];
      const double v = std::exp(-d * d * scale);
      g[i * n + j] = v;
      g[j * n + i] = v;
    }
  }
  return g;
}

/// Double-centers a symmetric matrix in place: G -> H G H with
/// H = I - (1/n) 1 1^T.
inline void double_center(std::vector<double>& g, std::size_t n) {
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const double* row = g.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) acc += row[j];
    row_mean[i] = acc / static_cast<double>(n);
    grand += acc;
  }
  grand /= static_cast<double>(n) * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = g.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] += grand - row_mean[i] - row_mean[j];
    }
  }
}

/// Elementwise product sum of two equally sized matrices.
[[nodiscard]] inline double product_sum(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Sum over i, j of kc[i][j] * lc[perm[i]][perm[j]] for centered symmetric
/// matrices; evaluates the permuted HSIC product without materializing the
/// permuted matrix. The identity permutation reproduces the observed sum
/// with identical arithmetic, so permutation-test tie comparisons are exact.
[[nodiscard]] inline double permuted_product_sum(const std::vector<double>& kc,
                                                 const std::vector<double>& lc,
                                                 const std::vector<std::size_t>& perm,
                                                 std::size_t n) {
  double off = 0.0;
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* krow = kc.data() + i * n;
    const double* lrow = lc.data() + perm[i] * n;
    double acc = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      acc += krow[j] * lrow[perm[j]];
    }
    off += acc;
    diag += krow[i] * lrow[perm[i]];
  }
  return 2.0 * off + diag;
}

/// Biased HSIC estimator trace(K H L H) / n^2 with Gaussian kernels of the
/// given length scales. Nonnegative; exactly 0 when either series is
/// constant (the centered all-ones Gram vanishes).
[[nodiscard]] inline double hsic_statistic(const Series& x, const Series& y,
                                           double sigma_x, double sigma_y) {
  if (x.size() != y.size()) {
    throw LengthMismatch("hsic_statistic: x and y lengths differ");
  }
  require_min_size(x, 3, "hsic_statistic");
  require_finite(x, "hsic_statistic");
  require_finite(y, "hsic_statistic");
  const std::size_t n = x.size();
  auto k = gaussian_gram(x, sigma_x);
  auto l = gaussian_gram(y, sigma_y);
  double_center(k, n);
  double_center(l, n);
  const double s = product_sum(k, l) / (static_cast<double>(n) * static_cast<double>(n));
  return s < 0.0 ? 0.0 : s;
}

}  // namespace bilingam
