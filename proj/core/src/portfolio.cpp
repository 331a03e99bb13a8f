#include "bayesmv/portfolio.hpp"

#include <algorithm>
#include <cmath>

#include "bayesmv/error.hpp"

namespace bayesmv {

namespace {

constexpr double degenerate_frontier_tolerance = 1e-14;
constexpr double variance_clamp_tolerance = 1e-12;

void require_positive_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw Error(ErrorCode::NonPositiveGamma, "risk aversion must be positive and finite");
    }
}

// Shared structure of the γ-parameterized rules: the GMV portfolio plus a
// speculative term (γ·scale)⁻¹ Qx̄.
PortfolioSolution gamma_rule(const FrontierTerms& t, double scale, double gamma, Rule rule) {
    const double lever = 1.0 / (gamma * scale);
    return {
        t.gmv_weights() + lever * t.q_mean,
        t.r_gmv + lever * t.mean_q_mean,
        scale / t.ones_inv_ones + lever / gamma * t.mean_q_mean,
        rule,
    };
}

bool frontier_is_degenerate(const MomentSummary& summary, const FrontierTerms& t) {
    const double mean_norm2 = summary.mean().squaredNorm();
    const double q_norm = q_matrix(summary).norm();
    return t.mean_q_mean <= degenerate_frontier_tolerance * mean_norm2 * q_norm;
}

}  // namespace

std::string to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::BayesGamma: return "BAYES_GAMMA";
        case RuleKind::BayesTargetReturn: return "BAYES_TARGET_RETURN";
        case RuleKind::BayesTargetVariance: return "BAYES_TARGET_VARIANCE";
        case RuleKind::Gmv: return "GMV";
        case RuleKind::SampleGamma: return "SAMPLE_GAMMA";
        case RuleKind::PopulationGamma: return "POPULATION_GAMMA";
    }
    return "UNKNOWN";
}

FrontierTerms frontier_terms(const MomentSummary& summary) {
    const Index k = summary.k();
    FrontierTerms t;
    t.inv_ones = summary.solve(VectorXd::Ones(k));
    t.ones_inv_ones = t.inv_ones.sum();
    t.r_gmv = t.inv_ones.dot(summary.mean()) / t.ones_inv_ones;
    // Qx̄ = S⁻¹(x̄ − R_GMV 𝟏), hence x̄ᵀQx̄ = ‖L⁻¹(x̄ − R_GMV 𝟏)‖².
    const VectorXd excess = summary.mean() - t.r_gmv * VectorXd::Ones(k);
    t.q_mean = summary.solve(excess);
    t.mean_q_mean = summary.factor().solve_lower(excess).squaredNorm();
    return t;
}

PortfolioSolution gmv_weights(const MomentSummary& summary) {
    const double c = bayes_coefficient(summary.k(), summary.n());
    const FrontierTerms t = frontier_terms(summary);
    return {t.gmv_weights(), t.r_gmv, c / t.ones_inv_ones, {RuleKind::Gmv, 0.0}};
}

PortfolioSolution bayes_weights_gamma(const MomentSummary& summary, double gamma) {
    require_positive_gamma(gamma);
    const double c = bayes_coefficient(summary.k(), summary.n());
    return gamma_rule(frontier_terms(summary), c, gamma, {RuleKind::BayesGamma, gamma});
}

PortfolioSolution sample_weights_gamma(const MomentSummary& summary, double gamma) {
    require_positive_gamma(gamma);
    const double d = sample_coefficient(summary.n());
    return gamma_rule(frontier_terms(summary), d, gamma, {RuleKind::SampleGamma, gamma});
}

PortfolioSolution bayes_weights_target_return(const MomentSummary& summary, double r0) {
    if (!std::isfinite(r0)) {
        throw Error(ErrorCode::InvalidArgument, "target return must be finite");
    }
    const double c = bayes_coefficient(summary.k(), summary.n());
    const FrontierTerms t = frontier_terms(summary);
    const Rule rule{RuleKind::BayesTargetReturn, r0};
    const double v_gmv = c / t.ones_inv_ones;

    const double excess = r0 - t.r_gmv;
    if (excess == 0.0) {
        return {t.gmv_weights(), r0, v_gmv, rule};
    }
    if (frontier_is_degenerate(summary, t)) {
        throw Error(ErrorCode::DegenerateFrontier,
                    "all efficient portfolios share the GMV expected return; only r0 = R_GMV is feasible");
    }
    return {
        t.gmv_weights() + (excess / t.mean_q_mean) * t.q_mean,
        r0,
        v_gmv + c * excess * excess / t.mean_q_mean,
        rule,
    };
}

PortfolioSolution bayes_weights_target_variance(const MomentSummary& summary, double v0) {
    if (!std::isfinite(v0)) {
        throw Error(ErrorCode::InvalidArgument, "target variance must be finite");
    }
    const double c = bayes_coefficient(summary.k(), summary.n());
    const FrontierTerms t = frontier_terms(summary);
    const double v_gmv = c / t.ones_inv_ones;

    if (v0 < v_gmv * (1.0 - variance_clamp_tolerance)) {
        throw Error(ErrorCode::InfeasibleVariance,
                    "target variance is below the global minimum variance");
    }
    const double reported = std::max(v0, v_gmv);
    const Rule rule{RuleKind::BayesTargetVariance, v0};
    const double radicand = std::max(0.0, v0 / c - 1.0 / t.ones_inv_ones);
    if (radicand == 0.0) {
        return {t.gmv_weights(), t.r_gmv, reported, rule};
    }
    if (frontier_is_degenerate(summary, t)) {
        throw Error(ErrorCode::DegenerateFrontier,
                    "frontier is degenerate; extra variance buys no expected return");
    }
    const double root = std::sqrt(radicand);
    const double q_root = std::sqrt(t.mean_q_mean);
    return {
        t.gmv_weights() + (root / q_root) * t.q_mean,
        t.r_gmv + root * q_root,
        reported,
        rule,
    };
}

PortfolioSolution population_weights_gamma(const PopulationParams& params, double gamma) {
    require_positive_gamma(gamma);
    const Index k = params.mu.size();
    if (k < 1 || params.sigma.rows() != k || params.sigma.cols() != k) {
        throw Error(ErrorCode::InvalidArgument, "mu and sigma dimensions disagree");
    }
    const MatrixXd sigma = 0.5 * (params.sigma + params.sigma.transpose());
    const auto chol = Cholesky::factor(sigma);
    if (!chol) {
        throw Error(ErrorCode::SingularCovariance, "population covariance is not positive definite");
    }
    const VectorXd inv_ones = chol->solve(VectorXd::Ones(k));
    const double ones_inv_ones = inv_ones.sum();
    const double r_gmv = inv_ones.dot(params.mu) / ones_inv_ones;
    const VectorXd excess = params.mu - r_gmv * VectorXd::Ones(k);
    const VectorXd r_mu = chol->solve(excess);
    const double mu_r_mu = chol->solve_lower(excess).squaredNorm();
    return {
        inv_ones / ones_inv_ones + r_mu / gamma,
        r_gmv + mu_r_mu / gamma,
        1.0 / ones_inv_ones + mu_r_mu / (gamma * gamma),
        {RuleKind::PopulationGamma, gamma},
    };
}

}  // namespace bayesmv
