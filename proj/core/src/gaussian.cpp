#include "oodwn/gaussian.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "oodwn/errors.hpp"

namespace oodwn {

namespace {

// Rows processed per block when accumulating covariance or whitening.
constexpr Eigen::Index kBlockRows = 512;

void check_length(const GaussianModel& model, std::size_t n) {
    if (n != model.dim()) {
        throw ArgumentError("sample length " + std::to_string(n) + " does not match model dimension " +
                            std::to_string(model.dim()));
    }
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

}  // namespace

GaussianModel::GaussianModel(ImageGeometry geometry, Eigen::VectorXd mean, Eigen::MatrixXd chol,
                             double eps)
    : geometry_(geometry), mean_(std::move(mean)), chol_(std::move(chol)), eps_(eps) {
    geometry_.validate();
    const auto d = static_cast<Eigen::Index>(geometry_.dim());
    if (mean_.size() != d || chol_.rows() != d || chol_.cols() != d) {
        throw ArgumentError("model parameters do not match geometry " + to_string(geometry_));
    }
    chol_.triangularView<Eigen::StrictlyUpper>().setZero();
    for (Eigen::Index t = 0; t < d; ++t) {
        if (!(chol_(t, t) > 0.0) || !std::isfinite(chol_(t, t))) {
            throw NumericalError("Cholesky factor has a non-positive diagonal entry");
        }
        log_det_half_ += std::log(chol_(t, t));
    }
    chol_inv_ = chol_.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d));
}

GaussianModel fit_gaussian(const SampleMatrix& train, double eps) {
    const std::size_t n = train.size();
    if (n < 2) {
        throw ArgumentError("fit_gaussian needs at least 2 samples, got " + std::to_string(n));
    }
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
        throw ArgumentError("shrinkage eps must be a finite value >= 0");
    }
    const auto d = static_cast<Eigen::Index>(train.dim());
    const auto rows = static_cast<Eigen::Index>(n);
    const RowMatrix& x = train.values();

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (Eigen::Index r = 0; r < rows; ++r) {
        mean += x.row(r).transpose();
    }
    mean /= static_cast<double>(n);

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index begin = 0; begin < rows; begin += kBlockRows) {
        const Eigen::Index count = std::min(kBlockRows, rows - begin);
        Eigen::MatrixXd centered = x.middleRows(begin, count).transpose();
        centered.colwise() -= mean;
        cov.selfadjointView<Eigen::Lower>().rankUpdate(centered);
    }
    cov = cov.selfadjointView<Eigen::Lower>();
    cov /= static_cast<double>(n - 1);

    const double trace = cov.trace();
    if (!(trace > 0.0)) {
        throw NumericalError(
            "covariance has zero trace (constant training data); no shrinkage can make it "
            "positive definite");
    }
    cov.diagonal().array() += eps * trace / static_cast<double>(d);

    Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("regularized covariance is not positive definite; increase eps (now " +
                             format_double(eps) + ")");
    }
    Eigen::MatrixXd chol = llt.matrixL();
    return GaussianModel(train.geometry(), std::move(mean), std::move(chol), eps);
}

WhitenedSequence whiten(const GaussianModel& model, std::span<const double> x) {
    check_length(model, x.size());
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())) -
                        model.mean();
    model.chol().triangularView<Eigen::Lower>().solveInPlace(w);
    return {std::vector<double>(w.data(), w.data() + w.size()), model.geometry()};
}

double gaussian_loglik(const GaussianModel& model, std::span<const double> x) {
    const auto w = whiten(model, x);
    double sq = 0.0;
    for (double v : w.values) {
        sq += v * v;
    }
    const double d = static_cast<double>(model.dim());
    return -0.5 * d * std::log(2.0 * std::numbers::pi) - model.log_det_half() - 0.5 * sq;
}

RowMatrix whiten_rows(const GaussianModel& model, const SampleMatrix& data) {
    check_length(model, data.dim());
    const auto rows = static_cast<Eigen::Index>(data.size());
    RowMatrix out(rows, static_cast<Eigen::Index>(model.dim()));
    for (Eigen::Index begin = 0; begin < rows; begin += kBlockRows) {
        const Eigen::Index count = std::min(kBlockRows, rows - begin);
        Eigen::MatrixXd block = data.values().middleRows(begin, count).transpose();
        block.colwise() -= model.mean();
        model.chol().triangularView<Eigen::Lower>().solveInPlace(block);
        out.middleRows(begin, count) = block.transpose();
    }
    return out;
}

std::vector<double> loglik_rows(const GaussianModel& model, const SampleMatrix& data) {
    const RowMatrix w = whiten_rows(model, data);
    const double d = static_cast<double>(model.dim());
    const double offset = -0.5 * d * std::log(2.0 * std::numbers::pi) - model.log_det_half();
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = offset - 0.5 * w.row(static_cast<Eigen::Index>(i)).squaredNorm();
    }
    return out;
}

void save_model(const GaussianModel& model, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create model directory " + dir.string() + ": " + ec.message());
    }
    const auto d = model.dim();

    Tensor mu{Dtype::F64, {d}, {}};
    mu.data.assign(model.mean().data(), model.mean().data() + d);
    write_tensor(dir / "mu.oodt", mu);

    Tensor chol{Dtype::F64, {d, d}, std::vector<double>(d * d)};
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            chol.data[r * d + c] =
                model.chol()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    write_tensor(dir / "chol.oodt", chol);

    std::ofstream meta(dir / "meta.txt", std::ios::trunc);
    if (!meta) {
        throw IoError("cannot write " + (dir / "meta.txt").string());
    }
    const auto& g = model.geometry();
    meta << "format=oodwn-gaussian\n"
         << "version=1\n"
         << "height=" << g.height << '\n'
         << "width=" << g.width << '\n'
         << "channels=" << g.channels << '\n'
         << "dim=" << d << '\n'
         << "eps=" << format_double(model.eps()) << '\n'
         << "log_det_half=" << format_double(model.log_det_half()) << '\n';
}

GaussianModel load_model(const std::filesystem::path& dir) {
    std::ifstream meta(dir / "meta.txt");
    if (!meta) {
        throw IoError("cannot open " + (dir / "meta.txt").string());
    }
    std::map<std::string, std::string> kv;
    for (std::string line; std::getline(meta, line);) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw FormatError("model meta.txt lacks key '" + key + "'");
        }
        return it->second;
    };
    if (get("format") != "oodwn-gaussian" || get("version") != "1") {
        throw FormatError("unrecognized model format in " + dir.string());
    }
    ImageGeometry g;
    double eps = 0.0;
    try {
        g = {std::stoul(get("height")), std::stoul(get("width")), std::stoul(get("channels"))};
        eps = std::stod(get("eps"));
    } catch (const std::logic_error&) {
        throw FormatError("malformed value in " + (dir / "meta.txt").string());
    }
    g.validate();
    const auto d = g.dim();

    Tensor mu = read_tensor(dir / "mu.oodt");
    Tensor chol = read_tensor(dir / "chol.oodt");
    if (mu.shape != std::vector<std::uint64_t>{d} ||
        chol.shape != std::vector<std::uint64_t>{d, d}) {
        throw FormatError("model tensors do not match geometry " + to_string(g));
    }
    Eigen::VectorXd mean = Eigen::Map<Eigen::VectorXd>(mu.data.data(), static_cast<Eigen::Index>(d));
    Eigen::MatrixXd factor = Eigen::Map<RowMatrix>(chol.data.data(), static_cast<Eigen::Index>(d),
                                                   static_cast<Eigen::Index>(d));
    return GaussianModel(g, std::move(mean), std::move(factor), eps);
}

}  // namespace oodwn
