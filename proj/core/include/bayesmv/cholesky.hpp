#pragma once

#include <optional>

#include <Eigen/Core>

namespace bayesmv {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Lower-triangular factorization A = L Lᵀ of a symmetric positive definite
/// matrix.
///
/// A pivot at or below `relative_pivot_floor * trace(A) / k` is treated as a
/// failure: the matrix is reported as not positive definite instead of being
/// regularized.
class Cholesky {
public:
    static constexpr double relative_pivot_floor = 1e-12;

    /// Returns std::nullopt when a pivot falls below the floor.
    static std::optional<Cholesky> factor(const MatrixXd& a);

    Index size() const noexcept { return lower_.rows(); }
    const MatrixXd& lower() const noexcept { return lower_; }

    /// A⁻¹ b via forward and back substitution.
    VectorXd solve(const VectorXd& b) const;
    /// L⁻¹ b.
    VectorXd solve_lower(const VectorXd& b) const;

    /// Factor of A + v vᵀ computed in O(k²) from this factor.
    Cholesky rank_one_update(const VectorXd& v) const;

private:
    explicit Cholesky(MatrixXd lower) : lower_(std::move(lower)) {}

    MatrixXd lower_;
};

}  // namespace bayesmv
