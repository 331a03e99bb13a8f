#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "bayesmv/moments.hpp"

namespace bayesmv::testing {

// n×k weekly-looking returns: a common factor plus idiosyncratic noise, with
// asset-specific drifts so that x̄ is not proportional to 𝟏.
inline MatrixXd random_returns(Index n, Index k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_real_distribution<double> drift(-0.004, 0.008);
    std::uniform_real_distribution<double> beta(0.3, 1.5);
    std::uniform_real_distribution<double> vol(0.01, 0.04);

    VectorXd mu(k), b(k), s(k);
    for (Index j = 0; j < k; ++j) {
        mu(j) = drift(rng);
        b(j) = beta(rng);
        s(j) = vol(rng);
    }
    MatrixXd x(n, k);
    for (Index i = 0; i < n; ++i) {
        const double market = 0.02 * z(rng);
        for (Index j = 0; j < k; ++j) {
            x(i, j) = mu(j) + b(j) * market + s(j) * z(rng);
        }
    }
    return x;
}

inline MomentSummary random_summary(Index n, Index k, std::uint64_t seed) {
    return estimate_moments(random_returns(n, k, seed));
}

// Fully invested weights: Gaussian entries shifted so they sum to one.
inline VectorXd random_weights(Index k, std::mt19937_64& rng, double spread = 1.0) {
    std::normal_distribution<double> z(0.0, spread);
    VectorXd w(k);
    for (Index j = 0; j < k; ++j) {
        w(j) = z(rng);
    }
    w.array() += (1.0 - w.sum()) / static_cast<double>(k);
    return w;
}

// Zero-sum perturbation direction (keeps wᵀ𝟏 unchanged).
inline VectorXd random_direction(Index k, std::mt19937_64& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    VectorXd d(k);
    for (Index j = 0; j < k; ++j) {
        d(j) = z(rng);
    }
    d.array() -= d.mean();
    return d;
}

}  // namespace bayesmv::testing
