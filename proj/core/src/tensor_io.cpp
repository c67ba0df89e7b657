#include "oodwn/tensor_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "oodwn/errors.hpp"

namespace oodwn {

static_assert(std::endian::native == std::endian::little,
              "container I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 4> kMagic{'O', 'O', 'D', 'T'};

std::vector<char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed: " + path.string());
    }
    return bytes;
}

template <typename T>
T load(const char*& p, const char* end, const std::filesystem::path& path) {
    if (static_cast<std::size_t>(end - p) < sizeof(T)) {
        throw FormatError("truncated header in " + path.string());
    }
    T v;
    std::memcpy(&v, p, sizeof(T));
    p += sizeof(T);
    return v;
}

template <typename T>
void store(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

}  // namespace

void ImageGeometry::validate() const {
    if (height == 0 || width == 0 || channels == 0) {
        throw ArgumentError("image geometry extents must be >= 1, got " + to_string(*this));
    }
}

ImageGeometry ImageGeometry::sequence(std::size_t d) { return {1, d, 1}; }

std::string to_string(const ImageGeometry& g) {
    std::ostringstream os;
    os << g.height << 'x' << g.width << 'x' << g.channels;
    return os.str();
}

std::string_view to_string(ValueRange r) {
    switch (r) {
        case ValueRange::RawBytes: return "raw-bytes";
        case ValueRange::Unit: return "unit";
        case ValueRange::Residual: return "unbounded-residual";
    }
    return "unknown";
}

SampleMatrix::SampleMatrix(ImageGeometry geometry, ValueRange range, RowMatrix values)
    : geometry_(geometry), range_(range), values_(std::move(values)) {
    geometry_.validate();
    if (static_cast<std::size_t>(values_.cols()) != geometry_.dim() && values_.rows() > 0) {
        throw ArgumentError("row length " + std::to_string(values_.cols()) +
                            " does not match geometry " + to_string(geometry_));
    }
    if (values_.rows() == 0) {
        values_.resize(0, static_cast<Eigen::Index>(geometry_.dim()));
    }
}

SampleMatrix::SampleMatrix(ImageGeometry geometry, ValueRange range, std::size_t n)
    : SampleMatrix(geometry, range,
                   RowMatrix::Zero(static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(geometry.dim()))) {}

std::span<const double> SampleMatrix::row(std::size_t i) const {
    if (i >= size()) {
        throw ArgumentError("row index out of range");
    }
    return {values_.data() + i * dim(), dim()};
}

std::span<double> SampleMatrix::row(std::size_t i) {
    if (i >= size()) {
        throw ArgumentError("row index out of range");
    }
    return {values_.data() + i * dim(), dim()};
}

SampleMatrix SampleMatrix::to_unit() const {
    if (range_ != ValueRange::RawBytes) {
        return *this;
    }
    return SampleMatrix(geometry_, ValueRange::Unit, values_ / 255.0);
}

SampleMatrix SampleMatrix::slice(std::size_t begin, std::size_t end) const {
    if (begin > end || end > size()) {
        throw ArgumentError("invalid row slice");
    }
    return SampleMatrix(geometry_, range_,
                        values_.middleRows(static_cast<Eigen::Index>(begin),
                                           static_cast<Eigen::Index>(end - begin)));
}

SampleMatrix SampleMatrix::concat(const std::vector<SampleMatrix>& parts) {
    if (parts.empty()) {
        throw ArgumentError("nothing to concatenate");
    }
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.geometry() != parts.front().geometry() || p.range() != parts.front().range()) {
            throw ArgumentError("cannot concatenate matrices with different geometry or range");
        }
        rows += p.size();
    }
    RowMatrix all(static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(parts.front().dim()));
    Eigen::Index at = 0;
    for (const auto& p : parts) {
        all.middleRows(at, p.values().rows()) = p.values();
        at += p.values().rows();
    }
    return SampleMatrix(parts.front().geometry(), parts.front().range(), std::move(all));
}

bool operator==(const SampleMatrix& a, const SampleMatrix& b) {
    return a.geometry_ == b.geometry_ && a.range_ == b.range_ &&
           a.values_.rows() == b.values_.rows() && a.values_ == b.values_;
}

// ---------------------------------------------------------------------------

SampleMatrix read_cifar10_bin(std::span<const std::filesystem::path> paths) {
    constexpr ImageGeometry g = {32, 32, 3};
    constexpr std::size_t plane = 32 * 32;

    std::vector<std::vector<char>> files;
    std::size_t records = 0;
    for (const auto& path : paths) {
        files.push_back(slurp(path));
        if (files.back().size() % kCifarRecordBytes != 0) {
            throw FormatError(path.string() + ": length " + std::to_string(files.back().size()) +
                              " is not a multiple of 3073");
        }
        records += files.back().size() / kCifarRecordBytes;
    }

    SampleMatrix out(g, ValueRange::RawBytes, records);
    std::size_t r = 0;
    for (const auto& bytes : files) {
        for (std::size_t off = 0; off < bytes.size(); off += kCifarRecordBytes, ++r) {
            const auto* px = reinterpret_cast<const unsigned char*>(bytes.data() + off + 1);
            auto row = out.row(r);
            for (std::size_t c = 0; c < 3; ++c) {
                for (std::size_t p = 0; p < plane; ++p) {
                    row[3 * p + c] = px[c * plane + p];
                }
            }
        }
    }
    return out;
}

SampleMatrix read_cifar10_bin(const std::filesystem::path& path) {
    return read_cifar10_bin(std::span<const std::filesystem::path>(&path, 1));
}

// ---------------------------------------------------------------------------

std::size_t dtype_size(Dtype t) {
    switch (t) {
        case Dtype::U8: return 1;
        case Dtype::F32: return 4;
        case Dtype::F64: return 8;
    }
    throw FormatError("unknown dtype code");
}

std::size_t Tensor::numel() const {
    std::size_t n = 1;
    for (auto s : shape) {
        n *= static_cast<std::size_t>(s);
    }
    return n;
}

Tensor read_tensor(const std::filesystem::path& path) {
    const auto bytes = slurp(path);
    const char* p = bytes.data();
    const char* end = p + bytes.size();

    if (bytes.size() < 4 || std::memcmp(p, kMagic.data(), 4) != 0) {
        throw FormatError(path.string() + ": bad magic");
    }
    p += 4;
    const auto version = load<std::uint32_t>(p, end, path);
    if (version != kContainerVersion) {
        throw FormatError(path.string() + ": unsupported version " + std::to_string(version));
    }
    const auto code = load<std::uint8_t>(p, end, path);
    if (code > static_cast<std::uint8_t>(Dtype::F64)) {
        throw FormatError(path.string() + ": unknown dtype code " + std::to_string(code));
    }
    const auto ndim = load<std::uint8_t>(p, end, path);

    Tensor t;
    t.dtype = static_cast<Dtype>(code);
    for (std::uint8_t i = 0; i < ndim; ++i) {
        t.shape.push_back(load<std::uint64_t>(p, end, path));
    }

    const std::size_t n = t.numel();
    const std::size_t width = dtype_size(t.dtype);
    const auto payload = static_cast<std::size_t>(end - p);
    if (n > std::numeric_limits<std::size_t>::max() / width || payload != n * width) {
        throw FormatError(path.string() + ": payload length " + std::to_string(payload) +
                          " does not match shape");
    }

    t.data.resize(n);
    switch (t.dtype) {
        case Dtype::U8:
            for (std::size_t i = 0; i < n; ++i) {
                t.data[i] = static_cast<unsigned char>(p[i]);
            }
            break;
        case Dtype::F32:
            for (std::size_t i = 0; i < n; ++i) {
                float f;
                std::memcpy(&f, p + 4 * i, 4);
                t.data[i] = f;
            }
            break;
        case Dtype::F64:
            std::memcpy(t.data.data(), p, 8 * n);
            break;
    }
    return t;
}

void write_tensor(const std::filesystem::path& path, const Tensor& t) {
    if (t.shape.size() > 255) {
        throw ArgumentError("too many dimensions");
    }
    if (t.data.size() != t.numel()) {
        throw ArgumentError("tensor data size does not match shape");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out.write(kMagic.data(), 4);
    store<std::uint32_t>(out, kContainerVersion);
    store<std::uint8_t>(out, static_cast<std::uint8_t>(t.dtype));
    store<std::uint8_t>(out, static_cast<std::uint8_t>(t.shape.size()));
    for (auto s : t.shape) {
        store<std::uint64_t>(out, s);
    }

    switch (t.dtype) {
        case Dtype::U8: {
            std::vector<unsigned char> buf(t.data.size());
            for (std::size_t i = 0; i < buf.size(); ++i) {
                const double v = t.data[i];
                if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v)) {
                    throw ArgumentError("u8 payload requires integers in [0, 255]");
                }
                buf[i] = static_cast<unsigned char>(v);
            }
            out.write(reinterpret_cast<const char*>(buf.data()),
                      static_cast<std::streamsize>(buf.size()));
            break;
        }
        case Dtype::F32: {
            std::vector<float> buf(t.data.begin(), t.data.end());
            out.write(reinterpret_cast<const char*>(buf.data()),
                      static_cast<std::streamsize>(4 * buf.size()));
            break;
        }
        case Dtype::F64:
            out.write(reinterpret_cast<const char*>(t.data.data()),
                      static_cast<std::streamsize>(8 * t.data.size()));
            break;
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

SampleMatrix read_container(const std::filesystem::path& path, std::optional<ImageGeometry> hint) {
    Tensor t = read_tensor(path);
    ImageGeometry g;
    if (t.shape.size() == 4) {
        g = {static_cast<std::size_t>(t.shape[1]), static_cast<std::size_t>(t.shape[2]),
             static_cast<std::size_t>(t.shape[3])};
    } else if (t.shape.size() == 2) {
        const auto d = static_cast<std::size_t>(t.shape[1]);
        g = (hint && hint->dim() == d) ? *hint : ImageGeometry::sequence(d);
    } else {
        throw FormatError(path.string() + ": expected shape (n,H,W,C) or (n,d)");
    }
    if (g.dim() == 0) {
        throw FormatError(path.string() + ": zero-sized sample dimension");
    }
    const auto n = static_cast<Eigen::Index>(t.shape[0]);
    RowMatrix values = Eigen::Map<RowMatrix>(t.data.data(), n, static_cast<Eigen::Index>(g.dim()));
    const auto range = t.dtype == Dtype::U8 ? ValueRange::RawBytes : ValueRange::Residual;
    return SampleMatrix(g, range, std::move(values));
}

void write_container(const std::filesystem::path& path, const SampleMatrix& m,
                     std::optional<Dtype> dtype) {
    Tensor t;
    t.dtype = dtype.value_or(m.range() == ValueRange::RawBytes ? Dtype::U8 : Dtype::F32);
    const auto& g = m.geometry();
    t.shape = {m.size(), g.height, g.width, g.channels};
    t.data.assign(m.values().data(), m.values().data() + m.values().size());
    write_tensor(path, t);
}

std::vector<double> read_vector_container(const std::filesystem::path& path) {
    Tensor t = read_tensor(path);
    if (t.shape.size() != 1) {
        throw FormatError(path.string() + ": expected a 1-d container of shape (n,)");
    }
    return std::move(t.data);
}

void write_vector_container(const std::filesystem::path& path, std::span<const double> values,
                            Dtype dtype) {
    Tensor t;
    t.dtype = dtype;
    t.shape = {values.size()};
    t.data.assign(values.begin(), values.end());
    write_tensor(path, t);
}

// ---------------------------------------------------------------------------

std::size_t flat_index(const ImageGeometry& g, std::size_t i, std::size_t j, std::size_t c) {
    return g.channels * (g.width * i + j) + c;
}

std::vector<double> flatten_hwc(const std::vector<std::vector<std::vector<double>>>& image) {
    if (image.empty() || image.front().empty() || image.front().front().empty()) {
        throw ArgumentError("flatten_hwc: empty image");
    }
    const ImageGeometry g{image.size(), image.front().size(), image.front().front().size()};
    std::vector<double> flat(g.dim());
    for (std::size_t i = 0; i < g.height; ++i) {
        if (image[i].size() != g.width) {
            throw ArgumentError("flatten_hwc: ragged rows");
        }
        for (std::size_t j = 0; j < g.width; ++j) {
            if (image[i][j].size() != g.channels) {
                throw ArgumentError("flatten_hwc: ragged channels");
            }
            for (std::size_t c = 0; c < g.channels; ++c) {
                flat[flat_index(g, i, j, c)] = image[i][j][c];
            }
        }
    }
    return flat;
}

std::vector<std::vector<std::vector<double>>> unflatten_hwc(std::span<const double> flat,
                                                            const ImageGeometry& g) {
    g.validate();
    if (flat.size() != g.dim()) {
        throw ArgumentError("unflatten_hwc: length does not match geometry");
    }
    std::vector<std::vector<std::vector<double>>> image(
        g.height, std::vector<std::vector<double>>(g.width, std::vector<double>(g.channels)));
    for (std::size_t i = 0; i < g.height; ++i) {
        for (std::size_t j = 0; j < g.width; ++j) {
            for (std::size_t c = 0; c < g.channels; ++c) {
                image[i][j][c] = flat[flat_index(g, i, j, c)];
            }
        }
    }
    return image;
}

}  // namespace oodwn
