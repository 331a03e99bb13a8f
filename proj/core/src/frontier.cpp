#include "bayesmv/frontier.hpp"

#include <cmath>

#include "bayesmv/error.hpp"
#include "bayesmv/portfolio.hpp"

namespace bayesmv {

namespace {

FrontierParams frontier_with_scale(const MomentSummary& summary, double scale, FrontierFamily family) {
    const FrontierTerms t = frontier_terms(summary);
    return {t.r_gmv, scale / t.ones_inv_ones, t.mean_q_mean / scale, family};
}

}  // namespace

std::string to_string(FrontierFamily family) {
    return family == FrontierFamily::Bayes ? "BAYES" : "SAMPLE";
}

FrontierParams bayes_frontier(const MomentSummary& summary) {
    return frontier_with_scale(summary, bayes_coefficient(summary.k(), summary.n()),
                               FrontierFamily::Bayes);
}

FrontierParams sample_frontier(const MomentSummary& summary) {
    return frontier_with_scale(summary, sample_coefficient(summary.n()), FrontierFamily::Sample);
}

double frontier_return_at(const FrontierParams& params, double variance) {
    if (variance < params.v_gmv - 1e-12 * params.v_gmv) {
        throw Error(ErrorCode::BelowMinimumVariance,
                    "variance lies below the frontier's minimum variance");
    }
    const double excess = std::max(0.0, variance - params.v_gmv);
    return params.r_gmv + std::sqrt(params.slope * excess);
}

std::vector<double> frontier_dominance_gap(const MomentSummary& summary,
                                           const std::vector<double>& variances) {
    const FrontierParams bayes = bayes_frontier(summary);
    const FrontierParams sample = sample_frontier(summary);
    std::vector<double> gaps;
    gaps.reserve(variances.size());
    for (double v : variances) {
        gaps.push_back(frontier_return_at(sample, v) - frontier_return_at(bayes, v));
    }
    return gaps;
}

std::vector<double> variance_grid(double v_min, int points, double max_multiple) {
    if (points < 2 || !(v_min > 0.0) || !(max_multiple > 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "variance grid needs >= 2 points, positive v_min and a multiple > 1");
    }
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double span = (max_multiple - 1.0) * v_min;
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = v_min + span * i / (points - 1);
    }
    grid.front() = v_min;
    return grid;
}

std::vector<FrontierPoint> frontier_curve(const FrontierParams& params,
                                          const std::vector<double>& variances) {
    std::vector<FrontierPoint> curve;
    curve.reserve(variances.size());
    for (double v : variances) {
        curve.push_back({v, frontier_return_at(params, v)});
    }
    return curve;
}

}  // namespace bayesmv
