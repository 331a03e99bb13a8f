#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bayesmv/cholesky.hpp"

namespace bayesmv {

/// An n×k history of per-period asset returns, rows ordered oldest to newest.
///
/// Construction enforces: n ≥ 2, k ≥ 1, every entry finite, k distinct
/// labels, and (when present) one timestamp per row. Timestamps are opaque.
class ReturnsWindow {
public:
    ReturnsWindow(MatrixXd data, std::vector<std::string> labels,
                  std::optional<std::vector<std::string>> periods = std::nullopt);

    /// Window with generated labels "A1".."Ak".
    explicit ReturnsWindow(MatrixXd data);

    const MatrixXd& data() const noexcept { return data_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::optional<std::vector<std::string>>& periods() const noexcept { return periods_; }

    Index n() const noexcept { return data_.rows(); }
    Index k() const noexcept { return data_.cols(); }

    /// Window restricted to the given column indices, in that order.
    ReturnsWindow select_assets(const std::vector<Index>& columns) const;

private:
    MatrixXd data_;
    std::vector<std::string> labels_;
    std::optional<std::vector<std::string>> periods_;
};

/// Sufficient statistics of a window: the sample mean x̄ and the
/// unnormalized scatter S = Σ (xᵢ − x̄)(xᵢ − x̄)ᵀ.
///
/// The factor of S is computed once at construction when n > k. A summary
/// with n ≤ k is valid but every operation that needs S⁻¹ rejects it.
class MomentSummary {
public:
    /// Builds a summary from precomputed moments. `scatter` is symmetrized.
    /// Throws SingularScatter when n > k and S is not positive definite.
    static MomentSummary from_moments(VectorXd mean, MatrixXd scatter, Index n);

    const VectorXd& mean() const noexcept { return mean_; }
    const MatrixXd& scatter() const noexcept { return scatter_; }
    Index n() const noexcept { return n_; }
    Index k() const noexcept { return mean_.size(); }

    bool has_factor() const noexcept { return factor_.has_value(); }
    /// Throws DegreesOfFreedom when n ≤ k (no factor exists).
    const Cholesky& factor() const;

    /// S⁻¹ b through the cached factor.
    VectorXd solve(const VectorXd& b) const { return factor().solve(b); }

private:
    MomentSummary(VectorXd mean, MatrixXd scatter, Index n, std::optional<Cholesky> factor)
        : mean_(std::move(mean)), scatter_(std::move(scatter)), n_(n), factor_(std::move(factor)) {}

    VectorXd mean_;
    MatrixXd scatter_;
    Index n_;
    std::optional<Cholesky> factor_;
};

struct Coefficients {
    double c;  ///< Bayesian predictive variance multiplier c_{k,n}
    double d;  ///< plug-in covariance multiplier 1/(n−1)
};

/// c_{k,n} = 1/(n−k−1) + (2n−k−1)/(n(n−k−1)(n−k−2)). Requires n > k + 2.
double bayes_coefficient(Index k, Index n);
/// d_n = 1/(n−1). Requires n ≥ 2.
double sample_coefficient(Index n);

/// Throws DegreesOfFreedom unless n > k + 2.
Coefficients coefficients(Index k, Index n);

MomentSummary estimate_moments(const ReturnsWindow& window);
/// Same as above for a bare n×k matrix; throws NonFiniteInput on NaN/inf.
MomentSummary estimate_moments(const MatrixXd& data);

/// Q = S⁻¹ − S⁻¹𝟏𝟏ᵀS⁻¹ / (𝟏ᵀS⁻¹𝟏), materialized and symmetrized.
MatrixXd q_matrix(const MomentSummary& summary);

}  // namespace bayesmv
