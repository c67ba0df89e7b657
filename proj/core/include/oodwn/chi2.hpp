#pragma once

namespace oodwn {

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
[[nodiscard]] double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly in the tail so that small values keep their relative accuracy.
[[nodiscard]] double regularized_gamma_q(double a, double x);

/// P(X <= x) for X ~ chi-squared with k degrees of freedom.
[[nodiscard]] double chi2_cdf(double x, double k);

/// P(X > x) for X ~ chi-squared with k degrees of freedom. Throws
/// ArgumentError for x < 0 or k <= 0.
[[nodiscard]] double chi2_sf(double x, double k);

}  // namespace oodwn
