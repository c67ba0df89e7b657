#include "oodwn/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <numbers>
#include <sstream>

#include <png.h>
#include <zlib.h>

#include "oodwn/errors.hpp"

namespace oodwn {

double lh_score(double loglik) { return -loglik; }

double lh2s_score(double loglik, double inlier_median) { return std::fabs(loglik - inlier_median); }

double median(std::span<const double> values) {
    if (values.empty()) {
        throw ArgumentError("median of an empty list");
    }
    std::vector<double> v(values.begin(), values.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

std::string CompressorSettings::describe() const {
    std::ostringstream os;
    os << "png(libpng " << PNG_LIBPNG_VER_STRING << ", zlib " << ZLIB_VERSION
       << ", level=" << zlib_level << ", strategy=" << zlib_strategy
       << ", filters=" << (all_filters ? "adaptive-all" : "none") << ", 8-bit, no-interlace)";
    return os.str();
}

namespace {

struct PngSink {
    std::size_t bytes = 0;
};

void png_count_write(png_structp png, png_bytep, png_size_t length) {
    static_cast<PngSink*>(png_get_io_ptr(png))->bytes += length;
}

void png_noop_flush(png_structp) {}

// libpng reports errors via longjmp; keep no objects with destructors alive
// in the frame that calls setjmp.
std::size_t encode_png(const std::vector<png_bytep>& rows, png_uint_32 width, png_uint_32 height,
                       int color_type, const CompressorSettings& s) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png == nullptr) {
        throw NumericalError("png_create_write_struct failed");
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw NumericalError("png_create_info_struct failed");
    }
    PngSink sink;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw NumericalError("libpng encoding failed");
    }
    png_set_write_fn(png, &sink, png_count_write, png_noop_flush);
    png_set_compression_level(png, s.zlib_level);
    png_set_compression_strategy(png, s.zlib_strategy);
    png_set_filter(png, PNG_FILTER_TYPE_BASE, s.all_filters ? PNG_ALL_FILTERS : PNG_FILTER_NONE);
    png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_BASE, PNG_FILTER_TYPE_BASE);
    png_write_info(png, info);
    png_write_image(png, const_cast<png_bytepp>(rows.data()));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return sink.bytes;
}

}  // namespace

double generic_complexity_bits(std::span<const double> image, const ImageGeometry& geometry,
                               const CompressorSettings& settings) {
    geometry.validate();
    if (image.size() != geometry.dim()) {
        throw ArgumentError("image length does not match geometry");
    }
    int color_type = 0;
    switch (geometry.channels) {
        case 1: color_type = PNG_COLOR_TYPE_GRAY; break;
        case 2: color_type = PNG_COLOR_TYPE_GRAY_ALPHA; break;
        case 3: color_type = PNG_COLOR_TYPE_RGB; break;
        case 4: color_type = PNG_COLOR_TYPE_RGB_ALPHA; break;
        default: throw ArgumentError("PNG encoding supports 1 to 4 channels");
    }

    std::vector<png_byte> bytes(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        const double v = image[i];
        if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v)) {
            throw ArgumentError("compressor input must be raw bytes (integers in [0, 255])");
        }
        bytes[i] = static_cast<png_byte>(v);
    }
    const std::size_t stride = geometry.width * geometry.channels;
    std::vector<png_bytep> rows(geometry.height);
    for (std::size_t r = 0; r < geometry.height; ++r) {
        rows[r] = bytes.data() + r * stride;
    }
    const std::size_t n = encode_png(rows, static_cast<png_uint_32>(geometry.width),
                                     static_cast<png_uint_32>(geometry.height), color_type,
                                     settings);
    return 8.0 * static_cast<double>(n);
}

std::vector<double> complexity_bits_rows(const SampleMatrix& images,
                                         const CompressorSettings& settings) {
    if (images.range() != ValueRange::RawBytes) {
        throw ArgumentError("compressor scores need raw-byte images, got " +
                            std::string(to_string(images.range())));
    }
    std::vector<double> out(images.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = generic_complexity_bits(images.row(i), images.geometry(), settings);
    }
    return out;
}

double lr_score(double loglik_nats, double complexity_bits) {
    const double s = loglik_nats + complexity_bits * std::numbers::ln2;
    return -s;
}

std::string_view to_string(SampleLabel l) {
    switch (l) {
        case SampleLabel::InlierTest: return "inlier-test";
        case SampleLabel::Outlier: return "outlier";
        case SampleLabel::InlierTrain: return "inlier-train";
    }
    return "unknown";
}

SampleLabel parse_label(std::string_view s) {
    if (s == "inlier-test") return SampleLabel::InlierTest;
    if (s == "outlier") return SampleLabel::Outlier;
    if (s == "inlier-train") return SampleLabel::InlierTrain;
    throw FormatError("unknown sample label '" + std::string(s) + "'");
}

}  // namespace oodwn
