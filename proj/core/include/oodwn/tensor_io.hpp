#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace oodwn {

/// Height x width x channels of an image-shaped sample. The flattened
/// dimension is d = height * width * channels.
struct ImageGeometry {
    std::size_t height = 1;
    std::size_t width = 1;
    std::size_t channels = 1;

    [[nodiscard]] std::size_t dim() const noexcept { return height * width * channels; }

    /// Throws ArgumentError when any extent is zero.
    void validate() const;

    /// Geometry for a plain sequence of length d (1 x d x 1).
    [[nodiscard]] static ImageGeometry sequence(std::size_t d);
    [[nodiscard]] static ImageGeometry cifar10() { return {32, 32, 3}; }

    friend bool operator==(const ImageGeometry&, const ImageGeometry&) = default;
};

[[nodiscard]] std::string to_string(const ImageGeometry& g);

enum class ValueRange : std::uint8_t {
    RawBytes,  ///< integers in [0, 255]
    Unit,      ///< reals in [0, 1]
    Residual,  ///< unbounded reals
};

[[nodiscard]] std::string_view to_string(ValueRange r);

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n samples, each a flattened d-vector in channel-last order.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(ImageGeometry geometry, ValueRange range, RowMatrix values);
    SampleMatrix(ImageGeometry geometry, ValueRange range, std::size_t n);

    [[nodiscard]] const ImageGeometry& geometry() const noexcept { return geometry_; }
    [[nodiscard]] ValueRange range() const noexcept { return range_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    [[nodiscard]] std::size_t dim() const noexcept { return geometry_.dim(); }
    [[nodiscard]] bool empty() const noexcept { return size() == 0; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const;
    [[nodiscard]] std::span<double> row(std::size_t i);

    [[nodiscard]] const RowMatrix& values() const noexcept { return values_; }
    [[nodiscard]] RowMatrix& values() noexcept { return values_; }

    /// Raw bytes divided by 255; other ranges are returned unchanged.
    [[nodiscard]] SampleMatrix to_unit() const;

    /// Rows [begin, end) as a new matrix.
    [[nodiscard]] SampleMatrix slice(std::size_t begin, std::size_t end) const;

    /// Row-wise concatenation; geometries must agree.
    [[nodiscard]] static SampleMatrix concat(const std::vector<SampleMatrix>& parts);

    friend bool operator==(const SampleMatrix& a, const SampleMatrix& b);

private:
    ImageGeometry geometry_;
    ValueRange range_ = ValueRange::Residual;
    RowMatrix values_;
};

// ---------------------------------------------------------------------------
// CIFAR-10 binary format: records of 1 label byte followed by 3072 pixel
// bytes, stored as three row-major 32x32 planes (R, G, B).

inline constexpr std::size_t kCifarRecordBytes = 3073;

/// Reads and concatenates CIFAR-10 binary batches. Labels are dropped and
/// pixels are transposed to channel-last order. Throws IoError for
/// unreadable paths and FormatError when a length is not a multiple of 3073.
[[nodiscard]] SampleMatrix read_cifar10_bin(std::span<const std::filesystem::path> paths);
[[nodiscard]] SampleMatrix read_cifar10_bin(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Tensor container ("OODT"): little-endian header
//   magic "OODT" | version u32 = 1 | dtype u8 | ndim u8 | shape ndim x u64
// followed by the row-major payload.

enum class Dtype : std::uint8_t {
    U8 = 0,
    F32 = 1,
    F64 = 2,  ///< extension used for persisted model factors
};

[[nodiscard]] std::size_t dtype_size(Dtype t);

inline constexpr std::uint32_t kContainerVersion = 1;

/// Untyped view of a container: shape plus payload promoted to double.
struct Tensor {
    Dtype dtype = Dtype::F32;
    std::vector<std::uint64_t> shape;
    std::vector<double> data;

    [[nodiscard]] std::size_t numel() const;
};

[[nodiscard]] Tensor read_tensor(const std::filesystem::path& path);

/// Values are narrowed to `tensor.dtype`; u8 values must be integers in [0, 255].
void write_tensor(const std::filesystem::path& path, const Tensor& tensor);

/// Reads a (n, H, W, C) or (n, d) container. For (n, d), `hint` supplies the
/// image geometry when d matches it; otherwise the geometry is 1 x d x 1.
/// u8 payloads become RawBytes matrices, float payloads Residual ones.
[[nodiscard]] SampleMatrix read_container(const std::filesystem::path& path,
                                          std::optional<ImageGeometry> hint = std::nullopt);

/// Writes shape (n, H, W, C). Default dtype is u8 for RawBytes data and f32
/// otherwise.
void write_container(const std::filesystem::path& path, const SampleMatrix& m,
                     std::optional<Dtype> dtype = std::nullopt);

/// Reads a 1-d container of shape (n,), e.g. per-sample log-likelihoods.
[[nodiscard]] std::vector<double> read_vector_container(const std::filesystem::path& path);
void write_vector_container(const std::filesystem::path& path, std::span<const double> values,
                            Dtype dtype = Dtype::F32);

// ---------------------------------------------------------------------------
// Channel-last flattening: element (i, j, c) maps to C * (W * i + j) + c.

[[nodiscard]] std::size_t flat_index(const ImageGeometry& g, std::size_t i, std::size_t j,
                                     std::size_t c);

/// `image` is indexed image[i][j][c].
[[nodiscard]] std::vector<double> flatten_hwc(
    const std::vector<std::vector<std::vector<double>>>& image);

[[nodiscard]] std::vector<std::vector<std::vector<double>>> unflatten_hwc(
    std::span<const double> flat, const ImageGeometry& g);

}  // namespace oodwn
