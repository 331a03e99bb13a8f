#pragma once

#include <string>

#include <Eigen/Core>

#include "bayesmv/moments.hpp"

namespace bayesmv {

enum class RuleKind {
    BayesGamma,
    BayesTargetReturn,
    BayesTargetVariance,
    Gmv,
    SampleGamma,
    PopulationGamma,
};

struct Rule {
    RuleKind kind;
    /// γ, R0 or V0 depending on `kind`; zero for Gmv.
    double parameter = 0.0;
};

std::string to_string(RuleKind kind);

/// Fully invested weights together with the analytic mean and variance the
/// producing rule attaches to them. Bayesian rules report the predictive
/// variance c·wᵀSw, the sample rule its plug-in d·wᵀSw, the population
/// rule wᵀΣw. Weights may be negative.
struct PortfolioSolution {
    VectorXd weights;
    double expected_return;
    double variance;
    Rule rule;
};

struct PopulationParams {
    VectorXd mu;
    MatrixXd sigma;
};

/// Quantities shared by every closed-form rule, evaluated with solves
/// against the cached factor of S.
struct FrontierTerms {
    VectorXd inv_ones;     ///< S⁻¹𝟏
    double ones_inv_ones;  ///< 𝟏ᵀS⁻¹𝟏
    double r_gmv;          ///< 𝟏ᵀS⁻¹x̄ / 𝟏ᵀS⁻¹𝟏
    VectorXd q_mean;       ///< Q x̄
    double mean_q_mean;    ///< x̄ᵀQx̄ ≥ 0

    VectorXd gmv_weights() const { return inv_ones / ones_inv_ones; }
};

FrontierTerms frontier_terms(const MomentSummary& summary);

PortfolioSolution gmv_weights(const MomentSummary& summary);

/// Maximizes wᵀx̄ − (c γ / 2) wᵀSw subject to wᵀ𝟏 = 1.
PortfolioSolution bayes_weights_gamma(const MomentSummary& summary, double gamma);

/// Minimum predictive variance portfolio with expected return r0.
PortfolioSolution bayes_weights_target_return(const MomentSummary& summary, double r0);

/// Maximum expected return portfolio with predictive variance v0 ≥ V_GMV.
PortfolioSolution bayes_weights_target_variance(const MomentSummary& summary, double v0);

/// Plug-in rule: same structure as bayes_weights_gamma with c replaced by
/// d = 1/(n−1). Requires only n > k.
PortfolioSolution sample_weights_gamma(const MomentSummary& summary, double gamma);

PortfolioSolution population_weights_gamma(const PopulationParams& params, double gamma);

}  // namespace bayesmv
