#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oodwn/tensor_io.hpp"

namespace oodwn {

/// Mann-Whitney estimate of P(outlier score > inlier score), ties counted
/// one half. Computed from mid-ranks in O((m + n) log(m + n)).
[[nodiscard]] double auroc(std::span<const double> outlier_scores,
                           std::span<const double> inlier_scores);

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
};

/// Percentile bootstrap interval (each list resampled with replacement).
/// Trial t draws from its own stream derive_seed(seed, t), so results do
/// not depend on scheduling. Requires trials >= 200.
[[nodiscard]] ConfidenceInterval auroc_ci(std::span<const double> outlier_scores,
                                          std::span<const double> inlier_scores,
                                          std::size_t trials, std::uint64_t seed,
                                          double level = 0.95);

/// setting -> test -> AUROC
using AurocTable = std::map<std::string, std::map<std::string, double>>;

/// Within each setting tests are ranked by descending AUROC (1 = best, ties
/// share the mean rank); ranks are then averaged across settings.
[[nodiscard]] std::map<std::string, double> average_ranks(const AurocTable& table);

/// Sum over shared equal-width bins of min(p_a, p_b), with each histogram
/// normalized to unit mass. Bins span the combined min-max range; if every
/// value is identical the result is 1.
[[nodiscard]] double histogram_intersection(std::span<const double> a, std::span<const double> b,
                                            std::size_t bins);

struct AcfProfileRow {
    std::size_t lag = 0;
    double mean_rho = 0.0;
    double std_rho = 0.0;   ///< across sequences, divisor n - 1
    double null_std = 0.0;  ///< 1 / sqrt(d - lag)
};

/// Mean and spread of rho_l for l = 1..L over the rows of `sequences`.
/// Each row is standardized first. Needs at least two rows and L < d.
[[nodiscard]] std::vector<AcfProfileRow> acf_profile(const RowMatrix& sequences, std::size_t max_lag);

struct AurocCell {
    std::string setting;
    std::string test;
    double auroc = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n_inlier = 0;
    std::size_t n_outlier = 0;
};

struct IntersectionCell {
    std::string setting;
    std::string test;
    double intersection = 0.0;
};

struct EvalReport {
    std::vector<AurocCell> cells;
    std::map<std::string, double> average_rank;
    std::vector<IntersectionCell> intersections;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// Columns: setting,test,auroc,ci_low,ci_high,n_inlier,n_outlier
void write_report_csv(std::ostream& out, const EvalReport& report);
/// Columns: test,average_rank
void write_ranks_csv(std::ostream& out, const EvalReport& report);
/// Columns: setting,test,intersection
void write_intersections_csv(std::ostream& out, const EvalReport& report);
/// Human-readable AUROC table with metadata header and rank row.
void write_report_text(std::ostream& out, const EvalReport& report);
/// Columns: lag,mean_rho,std_rho,null_std
void write_profile_csv(std::ostream& out, std::span<const AcfProfileRow> rows);

/// Fixed-precision decimal used by every CSV writer.
[[nodiscard]] std::string format_fixed(double v, int digits = 6);

}  // namespace oodwn
