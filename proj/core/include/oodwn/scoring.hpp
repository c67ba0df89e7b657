#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodwn/tensor_io.hpp"

namespace oodwn {

// All scores are oriented so that a larger value means "more outlier".

/// Single-sided likelihood test: -loglik.
[[nodiscard]] double lh_score(double loglik);

/// Two-sided likelihood test: |loglik - inlier_median|.
[[nodiscard]] double lh2s_score(double loglik, double inlier_median);

/// Median of a nonempty list (mean of the two middle values for even sizes).
[[nodiscard]] double median(std::span<const double> values);

/// Frozen settings of the generic lossless compressor. PNG via libpng,
/// 8-bit samples, no interlacing, zlib level 9 with the default strategy
/// and window, and libpng's adaptive choice among all five row filters.
struct CompressorSettings {
    int zlib_level = 9;
    int zlib_strategy = 0;  ///< Z_DEFAULT_STRATEGY
    bool all_filters = true;

    /// One-line description echoed into reports.
    [[nodiscard]] std::string describe() const;
};

/// Size in bits of the PNG encoding of one raw-byte image (all chunks,
/// signature included). Grayscale for C = 1, RGB for C = 3, RGBA for C = 4.
/// Throws ArgumentError for non-integer or out-of-range pixel values.
[[nodiscard]] double generic_complexity_bits(std::span<const double> image,
                                             const ImageGeometry& geometry,
                                             const CompressorSettings& settings = {});

/// generic_complexity_bits for every row; requires a RawBytes matrix.
[[nodiscard]] std::vector<double> complexity_bits_rows(const SampleMatrix& images,
                                                       const CompressorSettings& settings = {});

/// Likelihood-ratio test against the compressor: with
/// S = loglik_nats + complexity_bits * ln 2, returns -S.
[[nodiscard]] double lr_score(double loglik_nats, double complexity_bits);

enum class SampleLabel { InlierTest, Outlier, InlierTrain };

[[nodiscard]] std::string_view to_string(SampleLabel l);
[[nodiscard]] SampleLabel parse_label(std::string_view s);

/// Per-sample scores of one test on one dataset.
struct ScoreTable {
    std::string test;
    std::vector<double> scores;
    std::vector<SampleLabel> labels;
    std::string orientation = "larger score = more outlier";
};

}  // namespace oodwn
