#include "oodwn/whitenoise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oodwn/chi2.hpp"
#include "oodwn/errors.hpp"

namespace oodwn {

std::vector<double> standardize(std::span<const double> t) {
    if (t.empty()) {
        throw ArgumentError("standardize: empty sequence");
    }
    const double n = static_cast<double>(t.size());
    double mean = 0.0;
    for (double v : t) mean += v;
    mean /= n;

    double var = 0.0;
    for (double v : t) var += (v - mean) * (v - mean);
    var /= n;
    if (!(var > 0.0)) {
        throw DegenerateSequenceError("sequence has zero variance");
    }
    if (!std::isfinite(var)) {
        throw ArgumentError("standardize: non-finite values");
    }
    const double sd = std::sqrt(var);

    std::vector<double> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        out[i] = (t[i] - mean) / sd;
    }
    return out;
}

double acf(std::span<const double> s, std::size_t lag) {
    const std::size_t d = s.size();
    if (lag < 1 || lag >= d) {
        throw ArgumentError("acf: lag " + std::to_string(lag) + " outside [1, " +
                            std::to_string(d) + ")");
    }
    double sum = 0.0;
    for (std::size_t t = 0; t + lag < d; ++t) {
        sum += s[t] * s[t + lag];
    }
    return sum / static_cast<double>(d - lag);
}

LagSet vertical_lags(const ImageGeometry& geometry, std::size_t max_lag) {
    geometry.validate();
    const std::size_t step = geometry.channels * geometry.width;
    if (max_lag < step) {
        throw ArgumentError("L = " + std::to_string(max_lag) +
                            " is below the first vertical lag " + std::to_string(step));
    }
    LagSet out;
    out.max_lag = max_lag;
    for (std::size_t l = step; l <= max_lag; l += step) {
        out.lags.push_back(l);
    }
    return out;
}

LagSet all_lags(std::size_t max_lag, std::size_t d) {
    if (max_lag < 1 || max_lag >= d) {
        throw ArgumentError("all_lags: L = " + std::to_string(max_lag) + " outside [1, d)");
    }
    LagSet out;
    out.max_lag = max_lag;
    out.lags.resize(max_lag);
    for (std::size_t l = 1; l <= max_lag; ++l) {
        out.lags[l - 1] = l;
    }
    return out;
}

WnStatistic bp_statistic(std::span<const double> t, const LagSet& lags) {
    if (lags.lags.empty()) {
        throw ArgumentError("bp_statistic: empty lag set");
    }
    if (lags.largest() >= t.size()) {
        throw ArgumentError("bp_statistic: lag " + std::to_string(lags.largest()) +
                            " is not below the sequence length " + std::to_string(t.size()));
    }
    const auto s = standardize(t);

    WnStatistic out;
    out.k = lags.size();
    out.rho.reserve(out.k);
    double sum_sq = 0.0;
    for (std::size_t l : lags.lags) {
        const double r = acf(s, l);
        out.rho.push_back(r);
        sum_sq += r * r;
    }
    out.q_bp = static_cast<double>(t.size()) * sum_sq;
    out.p_value = chi2_sf(out.q_bp, static_cast<double>(out.k));
    return out;
}

double wn_score(std::span<const double> t, const LagSet& lags) {
    try {
        return bp_statistic(t, lags).q_bp;
    } catch (const DegenerateSequenceError&) {
        return std::numeric_limits<double>::infinity();
    }
}

std::vector<double> wn_scores(const RowMatrix& sequences, const LagSet& lags) {
    const auto n = sequences.rows();
    const auto d = static_cast<std::size_t>(sequences.cols());
    std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = wn_score({sequences.row(i).data(), d}, lags);
    }
    return out;
}

double calibrate_threshold(std::span<const double> inlier_stats, double target_fpr) {
    if (inlier_stats.empty()) {
        throw ArgumentError("calibrate_threshold: no inlier statistics");
    }
    if (!(target_fpr > 0.0 && target_fpr < 1.0)) {
        throw ArgumentError("calibrate_threshold: target_fpr must lie in (0, 1)");
    }
    std::vector<double> sorted(inlier_stats.begin(), inlier_stats.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = static_cast<double>(sorted.size() - 1) * (1.0 - target_fpr);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0 || sorted[lo] == sorted[hi]) {
        return sorted[lo];
    }
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace oodwn
