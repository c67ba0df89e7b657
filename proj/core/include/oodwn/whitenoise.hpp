#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oodwn/tensor_io.hpp"

namespace oodwn {

/// Default maximum lag for 32x32x3 images.
inline constexpr std::size_t kDefaultMaxLag = 1200;

/// Ordered autocorrelation lags entering the Box-Pierce sum.
struct LagSet {
    std::vector<std::size_t> lags;  ///< strictly increasing, all >= 1
    std::size_t max_lag = 0;        ///< the L the set was built from

    [[nodiscard]] std::size_t size() const noexcept { return lags.size(); }
    [[nodiscard]] std::size_t largest() const { return lags.back(); }
};

struct WnStatistic {
    double q_bp = 0.0;
    std::size_t k = 0;
    std::vector<double> rho;  ///< per-lag estimates, aligned with the lag set
    double p_value = 1.0;
};

/// Returns (T - mean) / sd with divisor d. Throws DegenerateSequenceError
/// when the sample variance is zero.
[[nodiscard]] std::vector<double> standardize(std::span<const double> t);

/// Lag-l autocorrelation of a standardized sequence:
///   rho_l = 1/(d-l) * sum_{t < d-l} T_t T_{t+l}.
/// Requires 1 <= lag < d.
[[nodiscard]] double acf(std::span<const double> standardized, std::size_t lag);

/// Multiples of C * W up to L: the offsets between vertically adjacent
/// pixels in the channel-last flattening. Throws ArgumentError if L < C * W.
[[nodiscard]] LagSet vertical_lags(const ImageGeometry& geometry, std::size_t max_lag);

/// {1, ..., L}; requires 1 <= L < d.
[[nodiscard]] LagSet all_lags(std::size_t max_lag, std::size_t d);

/// Box-Pierce statistic q = d * sum_l rho_l^2 over `lags` after per-sequence
/// standardization. The p-value uses the chi-squared null with |lags|
/// degrees of freedom.
[[nodiscard]] WnStatistic bp_statistic(std::span<const double> t, const LagSet& lags);

/// q_bp as an outlier score; +infinity for zero-variance sequences.
[[nodiscard]] double wn_score(std::span<const double> t, const LagSet& lags);

/// wn_score for every row of `sequences`.
[[nodiscard]] std::vector<double> wn_scores(const RowMatrix& sequences, const LagSet& lags);

/// Empirical (1 - target_fpr) quantile of inlier statistics, interpolating
/// linearly between order statistics.
[[nodiscard]] double calibrate_threshold(std::span<const double> inlier_stats, double target_fpr);

}  // namespace oodwn
