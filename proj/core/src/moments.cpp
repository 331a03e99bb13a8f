#include "bayesmv/moments.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "bayesmv/error.hpp"

namespace bayesmv {

namespace {

void require_finite(const MatrixXd& data) {
    for (Index j = 0; j < data.cols(); ++j) {
        for (Index i = 0; i < data.rows(); ++i) {
            if (!std::isfinite(data(i, j))) {
                std::ostringstream msg;
                msg << "non-finite return at row " << i + 1 << ", column " << j + 1;
                throw Error(ErrorCode::NonFiniteInput, msg.str());
            }
        }
    }
}

std::vector<std::string> default_labels(Index k) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(k));
    for (Index j = 0; j < k; ++j) {
        labels.push_back("A" + std::to_string(j + 1));
    }
    return labels;
}

}  // namespace

ReturnsWindow::ReturnsWindow(MatrixXd data, std::vector<std::string> labels,
                             std::optional<std::vector<std::string>> periods)
    : data_(std::move(data)), labels_(std::move(labels)), periods_(std::move(periods)) {
    if (data_.rows() < 2 || data_.cols() < 1) {
        throw Error(ErrorCode::EmptyInput, "returns window needs at least 2 periods and 1 asset");
    }
    if (static_cast<Index>(labels_.size()) != data_.cols()) {
        throw Error(ErrorCode::InvalidArgument, "label count does not match asset count");
    }
    std::set<std::string> seen;
    for (const auto& label : labels_) {
        if (!seen.insert(label).second) {
            throw Error(ErrorCode::DuplicateLabels, "duplicate asset label '" + label + "'");
        }
    }
    if (periods_ && static_cast<Index>(periods_->size()) != data_.rows()) {
        throw Error(ErrorCode::InvalidArgument, "timestamp count does not match period count");
    }
    require_finite(data_);
}

ReturnsWindow::ReturnsWindow(MatrixXd data)
    : ReturnsWindow(data, default_labels(data.cols())) {}

ReturnsWindow ReturnsWindow::select_assets(const std::vector<Index>& columns) const {
    MatrixXd sub(n(), static_cast<Index>(columns.size()));
    std::vector<std::string> labels;
    labels.reserve(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const Index col = columns[j];
        if (col < 0 || col >= k()) {
            throw Error(ErrorCode::InvalidArgument, "asset index out of range");
        }
        sub.col(static_cast<Index>(j)) = data_.col(col);
        labels.push_back(labels_[static_cast<std::size_t>(col)]);
    }
    return ReturnsWindow(std::move(sub), std::move(labels), periods_);
}

MomentSummary MomentSummary::from_moments(VectorXd mean, MatrixXd scatter, Index n) {
    const Index k = mean.size();
    if (k < 1 || scatter.rows() != k || scatter.cols() != k) {
        throw Error(ErrorCode::InvalidArgument, "mean and scatter dimensions disagree");
    }
    if (n < 2) {
        throw Error(ErrorCode::DegreesOfFreedom, "sample size must be at least 2");
    }
    if (!mean.allFinite() || !scatter.allFinite()) {
        throw Error(ErrorCode::NonFiniteInput, "non-finite moment");
    }
    MatrixXd symmetric = 0.5 * (scatter + scatter.transpose());

    std::optional<Cholesky> factor;
    if (n > k) {
        factor = Cholesky::factor(symmetric);
        if (!factor) {
            throw Error(ErrorCode::SingularScatter,
                        "scatter matrix is not positive definite (rank-deficient data?)");
        }
    }
    return MomentSummary(std::move(mean), std::move(symmetric), n, std::move(factor));
}

const Cholesky& MomentSummary::factor() const {
    if (!factor_) {
        throw Error(ErrorCode::DegreesOfFreedom,
                    "need more periods than assets (n > k), got n=" + std::to_string(n_) +
                        ", k=" + std::to_string(k()));
    }
    return *factor_;
}

double bayes_coefficient(Index k, Index n) {
    if (k < 1 || n <= k + 2) {
        throw Error(ErrorCode::DegreesOfFreedom,
                    "predictive variance needs n > k + 2, got n=" + std::to_string(n) +
                        ", k=" + std::to_string(k));
    }
    const auto nd = static_cast<double>(n);
    const auto kd = static_cast<double>(k);
    return 1.0 / (nd - kd - 1.0) +
           (2.0 * nd - kd - 1.0) / (nd * (nd - kd - 1.0) * (nd - kd - 2.0));
}

double sample_coefficient(Index n) {
    if (n < 2) {
        throw Error(ErrorCode::DegreesOfFreedom, "sample covariance needs n >= 2");
    }
    return 1.0 / static_cast<double>(n - 1);
}

Coefficients coefficients(Index k, Index n) {
    return {bayes_coefficient(k, n), sample_coefficient(n)};
}

MomentSummary estimate_moments(const MatrixXd& data) {
    if (data.rows() < 2 || data.cols() < 1) {
        throw Error(ErrorCode::EmptyInput, "returns window needs at least 2 periods and 1 asset");
    }
    require_finite(data);
    const Index n = data.rows();
    const Index k = data.cols();

    VectorXd mean(k);
    for (Index j = 0; j < k; ++j) {
        mean(j) = data.col(j).sum() / static_cast<double>(n);
    }
    const MatrixXd centered = data.rowwise() - mean.transpose();
    MatrixXd scatter = centered.transpose() * centered;
    return MomentSummary::from_moments(std::move(mean), std::move(scatter), n);
}

MomentSummary estimate_moments(const ReturnsWindow& window) {
    return estimate_moments(window.data());
}

MatrixXd q_matrix(const MomentSummary& summary) {
    const Index k = summary.k();
    const Cholesky& chol = summary.factor();
    MatrixXd inverse(k, k);
    for (Index j = 0; j < k; ++j) {
        inverse.col(j) = chol.solve(VectorXd::Unit(k, j));
    }
    const VectorXd inv_ones = inverse.rowwise().sum();
    const double denom = inv_ones.sum();
    MatrixXd q = inverse - inv_ones * inv_ones.transpose() / denom;
    return 0.5 * (q + q.transpose());
}

}  // namespace bayesmv
