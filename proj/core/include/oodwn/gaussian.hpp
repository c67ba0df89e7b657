#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "oodwn/tensor_io.hpp"

namespace oodwn {

/// Default shrinkage for d = 3072 image data.
inline constexpr double kDefaultShrinkage = 1e-3;

/// Multivariate normal fitted to inlier data.
///
/// The covariance is regularized as Sigma + eps * (trace(Sigma) / d) * I and
/// factored as Sigma_reg = L * L^T. Whitening maps x to L^{-1} (x - mu),
/// which has identity covariance under the fitted population; this is the
/// residual sequence of a linear autoregressive model of the inliers.
class GaussianModel {
public:
    GaussianModel(ImageGeometry geometry, Eigen::VectorXd mean, Eigen::MatrixXd chol, double eps);

    [[nodiscard]] const ImageGeometry& geometry() const noexcept { return geometry_; }
    [[nodiscard]] std::size_t dim() const noexcept { return geometry_.dim(); }
    [[nodiscard]] const Eigen::VectorXd& mean() const noexcept { return mean_; }
    /// Lower-triangular Cholesky factor of the regularized covariance.
    [[nodiscard]] const Eigen::MatrixXd& chol() const noexcept { return chol_; }
    /// Lower-triangular inverse of chol().
    [[nodiscard]] const Eigen::MatrixXd& chol_inv() const noexcept { return chol_inv_; }
    /// Sum of log diagonal entries of chol(), i.e. half the log-determinant.
    [[nodiscard]] double log_det_half() const noexcept { return log_det_half_; }
    [[nodiscard]] double eps() const noexcept { return eps_; }

private:
    ImageGeometry geometry_;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd chol_;
    Eigen::MatrixXd chol_inv_;
    double log_det_half_ = 0.0;
    double eps_ = 0.0;
};

struct WhitenedSequence {
    std::vector<double> values;
    ImageGeometry geometry;
};

/// Two-pass fit: column means, then centered outer products (divisor n - 1).
/// Throws ArgumentError for n < 2 or eps < 0 and NumericalError when the
/// regularized covariance is not positive definite.
[[nodiscard]] GaussianModel fit_gaussian(const SampleMatrix& train, double eps = kDefaultShrinkage);

[[nodiscard]] WhitenedSequence whiten(const GaussianModel& model, std::span<const double> x);

/// Natural-log density of x under the model.
[[nodiscard]] double gaussian_loglik(const GaussianModel& model, std::span<const double> x);

/// Whitens every row; row i of the result is whiten(model, data.row(i)).
[[nodiscard]] RowMatrix whiten_rows(const GaussianModel& model, const SampleMatrix& data);

/// gaussian_loglik for every row.
[[nodiscard]] std::vector<double> loglik_rows(const GaussianModel& model, const SampleMatrix& data);

/// Persists the model as dir/mu.oodt, dir/chol.oodt (both f64) and dir/meta.txt.
void save_model(const GaussianModel& model, const std::filesystem::path& dir);
[[nodiscard]] GaussianModel load_model(const std::filesystem::path& dir);

}  // namespace oodwn
