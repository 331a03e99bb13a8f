#pragma once

#include <string>
#include <vector>

#include "bayesmv/moments.hpp"

namespace bayesmv {

enum class FrontierFamily { Bayes, Sample };

std::string to_string(FrontierFamily family);

/// Parabola (R − r_gmv)² = slope · (V − v_gmv) in mean-variance space.
struct FrontierParams {
    double r_gmv;
    double v_gmv;
    double slope;
    FrontierFamily family;
};

/// Frontier of the posterior predictive problem: v_gmv = c/(𝟏ᵀS⁻¹𝟏),
/// slope = x̄ᵀQx̄ / c. Requires n > k + 2.
FrontierParams bayes_frontier(const MomentSummary& summary);

/// Plug-in frontier: c replaced by d = 1/(n−1). Requires n > k.
FrontierParams sample_frontier(const MomentSummary& summary);

/// Upper (efficient) branch r_gmv + sqrt(slope · (V − v_gmv)).
double frontier_return_at(const FrontierParams& params, double variance);

/// sample branch − Bayesian branch at each variance.
std::vector<double> frontier_dominance_gap(const MomentSummary& summary,
                                           const std::vector<double>& variances);

/// `points` equally spaced variances on [v_min, max_multiple · v_min].
std::vector<double> variance_grid(double v_min, int points = 100, double max_multiple = 5.0);

struct FrontierPoint {
    double variance;
    double expected_return;
};

std::vector<FrontierPoint> frontier_curve(const FrontierParams& params,
                                          const std::vector<double>& variances);

}  // namespace bayesmv
