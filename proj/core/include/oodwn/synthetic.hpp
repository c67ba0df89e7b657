#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "oodwn/tensor_io.hpp"

namespace oodwn {

enum class ProcessKind {
    IidGaussian,  ///< standard normal entries
    Circle,       ///< (T1, T2) uniform on the radius-sqrt(2) circle, T_j = T_{j-2}
    Ar1,          ///< x_t = phi x_{t-1} + sd * e_t, started from the stationary law
    Constant,     ///< every entry equals `param`
};

[[nodiscard]] std::string_view to_string(ProcessKind k);
[[nodiscard]] ProcessKind parse_process_kind(std::string_view s);

struct ProcessSpec {
    ProcessKind kind = ProcessKind::IidGaussian;
    std::size_t d = 0;
    double param = 0.0;         ///< AR coefficient phi, or the constant value
    double innovation_sd = 1.0; ///< AR(1) only
    std::uint64_t seed = 0;

    /// Throws ArgumentError for d = 0, odd d or d < 4 for the circle, and
    /// |phi| >= 1 or a non-positive innovation sd for AR(1).
    void validate() const;
};

/// n rows of length d with geometry 1 x d x 1. Row i is generated from the
/// stream derive_seed(seed, i), so any row can be reproduced on its own.
[[nodiscard]] SampleMatrix sample_process(const ProcessSpec& spec, std::size_t n);

/// (1/d) * sum_i T_i^2
[[nodiscard]] double typicality_stat(std::span<const double> t);

struct TypicalityReport {
    std::size_t d = 0;
    std::size_t n = 0;
    double mean_norm = 0.0;        ///< mean of ||x|| over the samples
    double std_norm = 0.0;         ///< sample std of ||x||
    double log_density_gap = 0.0;  ///< log p(0) - mean log p(x) = mean ||x||^2 / 2
    double target_gap = 0.0;       ///< d / 2
};

/// Draws n samples from N(0, I_d): the samples sit on a thin shell of radius
/// about sqrt(d) while the density peaks at the origin, d/2 nats above them.
[[nodiscard]] TypicalityReport typicality_demo(std::size_t d, std::size_t n, std::uint64_t seed);

struct CircleReport {
    std::size_t d = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    double max_typicality_deviation = 0.0;  ///< max |typicality_stat - 1|
    double max_p_value = 0.0;
    double min_q_over_k = 0.0;
};

/// Circle-process samples scored by both the typicality statistic and the
/// Box-Pierce statistic over lags {1..max_lag}.
[[nodiscard]] CircleReport circle_demo(std::size_t d, std::size_t n, std::size_t max_lag,
                                       std::uint64_t seed);

/// Kolmogorov-Smirnov distance between the empirical law of `sample` and the
/// chi-squared law with k degrees of freedom.
[[nodiscard]] double ks_distance_chi2(std::span<const double> sample, double k);

struct NullCalibrationReport {
    std::size_t d = 0;
    std::size_t k = 0;
    std::size_t trials = 0;
    double ks = 0.0;
    double mean_q_over_k = 0.0;
};

/// Box-Pierce statistics of IID Gaussian sequences over lags {1..k},
/// compared with the chi-squared(k) null. Requires trials >= 1000.
[[nodiscard]] NullCalibrationReport null_calibration(std::size_t d, std::size_t k,
                                                     std::size_t trials, std::uint64_t seed);

}  // namespace oodwn
