#include "bayesmv/cholesky.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace bayesmv {

std::optional<Cholesky> Cholesky::factor(const MatrixXd& a) {
    const Index k = a.rows();
    if (k == 0 || a.cols() != k) {
        return std::nullopt;
    }
    const double trace = a.trace();
    if (!(trace > 0.0) || !std::isfinite(trace)) {
        return std::nullopt;
    }
    const double floor = relative_pivot_floor * trace / static_cast<double>(k);

    MatrixXd l = MatrixXd::Zero(k, k);
    for (Index j = 0; j < k; ++j) {
        double pivot = a(j, j);
        for (Index p = 0; p < j; ++p) {
            pivot -= l(j, p) * l(j, p);
        }
        if (!(pivot > floor)) {
            return std::nullopt;
        }
        const double diag = std::sqrt(pivot);
        l(j, j) = diag;
        for (Index i = j + 1; i < k; ++i) {
            double sum = a(i, j);
            for (Index p = 0; p < j; ++p) {
                sum -= l(i, p) * l(j, p);
            }
            l(i, j) = sum / diag;
        }
    }
    return Cholesky(std::move(l));
}

VectorXd Cholesky::solve_lower(const VectorXd& b) const {
    return lower_.triangularView<Eigen::Lower>().solve(b);
}

VectorXd Cholesky::solve(const VectorXd& b) const {
    const VectorXd y = solve_lower(b);
    return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Cholesky Cholesky::rank_one_update(const VectorXd& v) const {
    MatrixXd l = lower_;
    VectorXd x = v;
    const Index k = l.rows();
    for (Index j = 0; j < k; ++j) {
        const double ljj = l(j, j);
        const double r = std::hypot(ljj, x(j));
        const double c = r / ljj;
        const double s = x(j) / ljj;
        l(j, j) = r;
        for (Index i = j + 1; i < k; ++i) {
            l(i, j) = (l(i, j) + s * x(i)) / c;
            x(i) = c * x(i) - s * l(i, j);
        }
    }
    return Cholesky(std::move(l));
}

}  // namespace bayesmv
