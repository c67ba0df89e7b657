#include "oodwn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "oodwn/chi2.hpp"
#include "oodwn/errors.hpp"
#include "oodwn/rng.hpp"
#include "oodwn/whitenoise.hpp"

namespace oodwn {

std::string_view to_string(ProcessKind k) {
    switch (k) {
        case ProcessKind::IidGaussian: return "iid-gaussian";
        case ProcessKind::Circle: return "circle";
        case ProcessKind::Ar1: return "ar1";
        case ProcessKind::Constant: return "constant";
    }
    return "unknown";
}

ProcessKind parse_process_kind(std::string_view s) {
    if (s == "iid-gaussian") return ProcessKind::IidGaussian;
    if (s == "circle") return ProcessKind::Circle;
    if (s == "ar1") return ProcessKind::Ar1;
    if (s == "constant") return ProcessKind::Constant;
    throw ArgumentError("unknown process kind '" + std::string(s) + "'");
}

void ProcessSpec::validate() const {
    if (d == 0) {
        throw ArgumentError("process dimension must be >= 1");
    }
    if (kind == ProcessKind::Circle && (d < 4 || d % 2 != 0)) {
        throw ArgumentError("circle process needs an even d >= 4, got " + std::to_string(d));
    }
    if (kind == ProcessKind::Ar1) {
        if (!(std::fabs(param) < 1.0)) {
            throw ArgumentError("AR(1) coefficient must satisfy |phi| < 1");
        }
        if (!(innovation_sd > 0.0)) {
            throw ArgumentError("AR(1) innovation sd must be positive");
        }
    }
}

SampleMatrix sample_process(const ProcessSpec& spec, std::size_t n) {
    spec.validate();
    const std::size_t d = spec.d;
    SampleMatrix out(ImageGeometry::sequence(d), ValueRange::Residual, n);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        Xoshiro256 rng(derive_seed(spec.seed, i));
        StandardNormal normal;
        auto row = out.row(i);
        switch (spec.kind) {
            case ProcessKind::IidGaussian:
                for (auto& v : row) v = normal(rng);
                break;
            case ProcessKind::Circle: {
                const double theta = 2.0 * std::numbers::pi * rng.uniform();
                row[0] = std::numbers::sqrt2 * std::cos(theta);
                row[1] = std::numbers::sqrt2 * std::sin(theta);
                for (std::size_t j = 2; j < d; ++j) row[j] = row[j - 2];
                break;
            }
            case ProcessKind::Ar1: {
                const double phi = spec.param;
                const double sd = spec.innovation_sd;
                row[0] = normal(rng) * sd / std::sqrt(1.0 - phi * phi);
                for (std::size_t j = 1; j < d; ++j) row[j] = phi * row[j - 1] + sd * normal(rng);
                break;
            }
            case ProcessKind::Constant:
                std::fill(row.begin(), row.end(), spec.param);
                break;
        }
    }
    return out;
}

double typicality_stat(std::span<const double> t) {
    if (t.empty()) {
        throw ArgumentError("typicality_stat: empty sequence");
    }
    double sum = 0.0;
    for (double v : t) sum += v * v;
    return sum / static_cast<double>(t.size());
}

TypicalityReport typicality_demo(std::size_t d, std::size_t n, std::uint64_t seed) {
    if (d < 1 || n < 2) {
        throw ArgumentError("typicality_demo needs d >= 1 and n >= 2");
    }
    const auto x = sample_process({ProcessKind::IidGaussian, d, 0.0, 1.0, seed}, n);
    std::vector<double> norms(n);
    double mean_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sq = x.values().row(static_cast<Eigen::Index>(i)).squaredNorm();
        norms[i] = std::sqrt(sq);
        mean_sq += sq;
    }
    mean_sq /= static_cast<double>(n);

    double mean = 0.0;
    for (double v : norms) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : norms) ss += (v - mean) * (v - mean);

    TypicalityReport r;
    r.d = d;
    r.n = n;
    r.mean_norm = mean;
    r.std_norm = std::sqrt(ss / static_cast<double>(n - 1));
    // log p(0) - log p(x) = ||x||^2 / 2 for the standard normal.
    r.log_density_gap = 0.5 * mean_sq;
    r.target_gap = 0.5 * static_cast<double>(d);
    return r;
}

CircleReport circle_demo(std::size_t d, std::size_t n, std::size_t max_lag, std::uint64_t seed) {
    if (n < 1) {
        throw ArgumentError("circle_demo needs n >= 1");
    }
    const auto x = sample_process({ProcessKind::Circle, d, 0.0, 1.0, seed}, n);
    const auto lags = all_lags(max_lag, d);

    CircleReport r;
    r.d = d;
    r.n = n;
    r.k = lags.size();
    r.min_q_over_k = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = x.row(i);
        r.max_typicality_deviation =
            std::max(r.max_typicality_deviation, std::fabs(typicality_stat(row) - 1.0));
        const auto stat = bp_statistic(row, lags);
        r.max_p_value = std::max(r.max_p_value, stat.p_value);
        r.min_q_over_k = std::min(r.min_q_over_k, stat.q_bp / static_cast<double>(stat.k));
    }
    return r;
}

double ks_distance_chi2(std::span<const double> sample, double k) {
    if (sample.empty()) {
        throw ArgumentError("ks_distance_chi2: empty sample");
    }
    std::vector<double> s(sample.begin(), sample.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = chi2_cdf(s[i], k);
        dmax = std::max(dmax, std::max(static_cast<double>(i + 1) / n - f,
                                       f - static_cast<double>(i) / n));
    }
    return dmax;
}

NullCalibrationReport null_calibration(std::size_t d, std::size_t k, std::size_t trials,
                                       std::uint64_t seed) {
    if (trials < 1000) {
        throw ArgumentError("null_calibration needs at least 1000 trials");
    }
    const auto lags = all_lags(k, d);
    const auto x = sample_process({ProcessKind::IidGaussian, d, 0.0, 1.0, seed}, trials);
    const auto q = wn_scores(x.values(), lags);

    NullCalibrationReport r;
    r.d = d;
    r.k = k;
    r.trials = trials;
    r.ks = ks_distance_chi2(q, static_cast<double>(k));
    double sum = 0.0;
    for (double v : q) sum += v;
    r.mean_q_over_k = sum / static_cast<double>(trials) / static_cast<double>(k);
    return r;
}

}  // namespace oodwn
