#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bilingam/decision.hpp"
#include "bilingam/errors.hpp"
#include "bilingam/hsic.hpp"
#include "bilingam/rng.hpp"
#include "bilingam/series.hpp"
#include "bilingam/special.hpp"

namespace bilingam {

enum class IndependenceMethod { PermutationHsic, GammaHsic };
enum class BandwidthRule { MedianHeuristic };

struct IndependenceTestConfig {
  IndependenceMethod method = IndependenceMethod::PermutationHsic;
  int permutations = 500;  // >= 100 for the permutation method
  BandwidthRule bandwidth_rule = BandwidthRule::MedianHeuristic;
  double alpha = 0.05;
  std::uint64_t rng_seed = 0;
};

namespace detail {

/// n! for n <= 20 (fits in 64 bits), or 0 to signal overflow.
[[nodiscard]] inline std::uint64_t factorial_u64(std::size_t n) {
  if (n > 20) return 0;
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Exact permutation p-value by enumerating all n! permutations:
/// p = #{pi : T(pi) >= T_observed} / n!. The identity permutation is in the
/// enumeration, so p >= 1/n! and the p-value is valid.
[[nodiscard]] inline double exhaustive_permutation_pvalue(
    const std::vector<double>& kc, const std::vector<double>& lc,
    std::size_t n, double observed_sum) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t at_least = 0;
  std::uint64_t total = 0;
  do {
    if (permuted_product_sum(kc, lc, perm, n) >= observed_sum) ++at_least;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(at_least) / static_cast<double>(total);
}

/// Monte-Carlo permutation p-value with the add-one correction:
/// p = (1 + #{b : T_b >= T_observed}) / (1 + B), valid at any finite B.
[[nodiscard]] inline double sampled_permutation_pvalue(
    const std::vector<double>& kc, const std::vector<double>& lc,
    std::size_t n, double observed_sum, int permutations, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int at_least = 0;
  for (int b = 0; b < permutations; ++b) {
    rng.shuffle(perm);
    if (permuted_product_sum(kc, lc, perm, n) >= observed_sum) ++at_least;
  }
  return static_cast<double>(1 + at_least) / static_cast<double>(1 + permutations);
}

/// Gamma approximation to the permutation null of the biased HSIC
/// estimator: the null mean and variance have closed forms in the Gram
/// entries; the p-value is the upper tail of the moment-matched gamma
/// distribution evaluated at n * HSIC.
[[nodiscard]] inline double gamma_pvalue(double sum_k_offdiag, double sum_l_offdiag,
                                         const std::vector<double>& kc,
                                         const std::vector<double>& lc,
                                         std::size_t n, double observed_sum) {
  const double m = static_cast<double>(n);
  const double mu_x = sum_k_offdiag / (m * (m - 1.0));
  const double mu_y = sum_l_offdiag / (m * (m - 1.0));
  const double mean_h0 = (1.0 + mu_x * mu_y - mu_x - mu_y) / m;

  double off_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* krow = kc.data() + i * n;
    const double* lrow = lc.data() + i * n;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double t = krow[j] * lrow[j] / 6.0;
      off_sq += t * t;
    }
  }
  off_sq *= 2.0;  // both triangles of the off-diagonal sum
  double var_h0 = off_sq / (m * (m - 1.0));
  var_h0 *= 72.0 * (m - 4.0) * (m - 5.0) /
            (m * (m - 1.0) * (m - 2.0) * (m - 3.0));

  if (!(mean_h0 > 0.0) || !(var_h0 > 0.0)) return 1.0;
  const double shape = mean_h0 * mean_h0 / var_h0;
  const double scale = var_h0 * m / mean_h0;
  const double test_stat = observed_sum / m;  // n * HSIC
  if (test_stat <= 0.0) return 1.0;
  return gamma_q(shape, test_stat / scale);
}

}  // namespace detail

/// Tests the null "x independent of y" with the biased HSIC statistic and
/// Gaussian kernels. Bandwidths come from the configured rule, computed
/// once from the original series and held fixed across permutations.
///
/// PermutationHsic: when n! <= cfg.permutations all n! permutations are
/// enumerated (exact p-value, floor n >= 3); otherwise cfg.permutations
/// seeded shuffles with the add-one p-value (floor n >= 8).
/// GammaHsic: moment-matched gamma upper tail (floor n >= 20).
[[nodiscard]] inline TestDecision independence_test(const Series& x, const Series& y,
                                                    const IndependenceTestConfig& cfg) {
  if (x.size() != y.size()) {
    throw LengthMismatch("independence_test: x and y lengths differ");
  }
  require_finite(x, "independence_test");
  require_finite(y, "independence_test");
  const std::size_t n = x.size();

  bool exhaustive = false;
  if (cfg.method == IndependenceMethod::PermutationHsic) {
    if (cfg.permutations < 100) {
      throw InvalidInput("independence_test: permutations must be >= 100");
    }
    const std::uint64_t fact = detail::factorial_u64(n);
    exhaustive = fact != 0 && fact <= static_cast<std::uint64_t>(cfg.permutations);
    require_min_size(x, exhaustive ? 3 : 8, "independence_test (permutation)");
  } else {
    require_min_size(x, 20, "independence_test (gamma)");
  }

  // BandwidthRule has a single member today; the switch keeps the seam.
  double sigma_x = 0.0, sigma_y = 0.0;
  switch (cfg.bandwidth_rule) {
    case BandwidthRule::MedianHeuristic:
      sigma_x = median_heuristic_bandwidth(x);
      sigma_y = median_heuristic_bandwidth(y);
      break;
  }

  auto k = gaussian_gram(x, sigma_x);
  auto l = gaussian_gram(y, sigma_y);
  double sum_k = 0.0, sum_l = 0.0;
  if (cfg.method == IndependenceMethod::GammaHsic) {
    const double nd = static_cast<double>(n);
    sum_k = std::accumulate(k.begin(), k.end(), 0.0) - nd;  // unit diagonal
    sum_l = std::accumulate(l.begin(), l.end(), 0.0) - nd;
  }
  double_center(k, n);
  double_center(l, n);

  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const double observed_sum = permuted_product_sum(k, l, identity, n);
  const double statistic =
      std::max(0.0, observed_sum / (static_cast<double>(n) * static_cast<double>(n)));

  double p = 1.0;
  switch (cfg.method) {
    case IndependenceMethod::PermutationHsic:
      p = exhaustive
              ? detail::exhaustive_permutation_pvalue(k, l, n, observed_sum)
              : detail::sampled_permutation_pvalue(k, l, n, observed_sum,
                                                   cfg.permutations, cfg.rng_seed);
      break;
    case IndependenceMethod::GammaHsic:
      p = detail::gamma_pvalue(sum_k, sum_l, k, l, n, observed_sum);
      break;
  }
  return make_decision(TestKind::Independence, statistic, p, cfg.alpha);
}

}  // namespace bilingam
