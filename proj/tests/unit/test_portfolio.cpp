#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bayesmv/moments.hpp"
#include "bayesmv/portfolio.hpp"
#include "expect_error.hpp"
#include "fixtures.hpp"

namespace bayesmv {
namespace {

using testing::error_of;
using testing::random_direction;
using testing::random_summary;
using testing::random_weights;

double utility(const MomentSummary& s, const VectorXd& w, double gamma) {
    const double c = bayes_coefficient(s.k(), s.n());
    return w.dot(s.mean()) - 0.5 * c * gamma * w.dot(s.scatter() * w);
}

double predictive_variance(const MomentSummary& s, const VectorXd& w) {
    return bayes_coefficient(s.k(), s.n()) * w.dot(s.scatter() * w);
}

MomentSummary summary_with(const VectorXd& mean, const MatrixXd& scatter, Index n = 30) {
    return MomentSummary::from_moments(mean, scatter, n);
}

// ── gmv_weights ──────────────────────────────────────────────────────

TEST(GmvWeightsTest, IdentityGivesEqualWeights) {
    const PortfolioSolution s = gmv_weights(summary_with(VectorXd::LinSpaced(4, 0.0, 0.3), MatrixXd::Identity(4, 4)));
    for (Index i = 0; i < 4; ++i) EXPECT_NEAR(s.weights(i), 0.25, 1e-15);
    EXPECT_EQ(s.rule.kind, RuleKind::Gmv);
}

TEST(GmvWeightsTest, DiagonalScatter) {
    VectorXd diag(2);
    diag << 1.0, 2.0;
    const PortfolioSolution s = gmv_weights(summary_with(VectorXd::Zero(2), diag.asDiagonal().toDenseMatrix()));
    EXPECT_NEAR(s.weights(0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(s.weights(1), 1.0 / 3.0, 1e-15);
}

TEST(GmvWeightsTest, MinimalVarianceAgainstRandomSearch) {
    const MomentSummary s = random_summary(52, 5, 101);
    const PortfolioSolution gmv = gmv_weights(s);
    EXPECT_NEAR(gmv.variance, predictive_variance(s, gmv.weights), 1e-9 * gmv.variance);
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 10000; ++trial) {
        const VectorXd w = random_weights(5, rng, trial % 2 == 0 ? 1.0 : 0.05);
        ASSERT_LT(gmv.variance, predictive_variance(s, w));
    }
}

TEST(GmvWeightsTest, NeedsTwoExtraDegreesOfFreedom) {
    const MomentSummary s = random_summary(7, 5, 103);
    EXPECT_EQ(error_of([&] { (void)gmv_weights(s); }), ErrorCode::DegreesOfFreedom);
}

// ── bayes_weights_gamma ──────────────────────────────────────────────

TEST(BayesGammaTest, FlatMeanGivesGmvForEveryGamma) {
    const MomentSummary base = random_summary(52, 5, 104);
    const MomentSummary flat = summary_with(VectorXd::Constant(5, 0.003), base.scatter(), 52);
    const VectorXd gmv = gmv_weights(flat).weights;
    for (double gamma : {0.5, 1.0, 10.0, 1000.0}) {
        EXPECT_LT((bayes_weights_gamma(flat, gamma).weights - gmv).lpNorm<Eigen::Infinity>(), 1e-10);
    }
}

TEST(BayesGammaTest, LargeGammaApproachesGmv) {
    const MomentSummary s = random_summary(52, 5, 105);
    const VectorXd w = bayes_weights_gamma(s, 1e8).weights;
    EXPECT_LT((w - gmv_weights(s).weights).lpNorm<Eigen::Infinity>(), 1e-6);
}

TEST(BayesGammaTest, BeatsRandomPortfoliosInUtility) {
    const MomentSummary s = random_summary(52, 5, 106);
    const PortfolioSolution opt = bayes_weights_gamma(s, 25.0);
    const double best = utility(s, opt.weights, 25.0);
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 100000; ++trial) {
        VectorXd w;
        if (trial % 2 == 0) {
            w = random_weights(5, rng);
        } else {
            const double eps = std::pow(10.0, -3.0 + 3.0 * (trial % 7) / 6.0);
            w = opt.weights + eps * random_direction(5, rng);
        }
        ASSERT_LT(utility(s, w, 25.0), best) << "trial " << trial;
    }
}

TEST(BayesGammaTest, ClosedFormsAgreeWithWeights) {
    for (std::uint64_t seed = 110; seed < 120; ++seed) {
        const MomentSummary s = random_summary(60, 6, seed);
        for (double gamma : {1.0, 10.0, 100.0}) {
            const PortfolioSolution p = bayes_weights_gamma(s, gamma);
            EXPECT_NEAR(p.weights.sum(), 1.0, 1e-10);
            EXPECT_NEAR(p.expected_return, p.weights.dot(s.mean()), 1e-9 * std::abs(p.expected_return));
            EXPECT_NEAR(p.variance, predictive_variance(s, p.weights), 1e-9 * p.variance);
            EXPECT_GT(p.variance, 0.0);
        }
    }
}

TEST(BayesGammaTest, SpeculativePartScalesInverselyWithGamma) {
    const MomentSummary s = random_summary(52, 5, 121);
    const VectorXd gmv = gmv_weights(s).weights;
    const VectorXd a = bayes_weights_gamma(s, 7.0).weights - gmv;
    const VectorXd b = bayes_weights_gamma(s, 14.0).weights - gmv;
    EXPECT_LT((a - 2.0 * b).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(BayesGammaTest, RejectsNonPositiveGamma) {
    const MomentSummary s = random_summary(52, 3, 122);
    EXPECT_EQ(error_of([&] { (void)bayes_weights_gamma(s, 0.0); }), ErrorCode::NonPositiveGamma);
    EXPECT_EQ(error_of([&] { (void)bayes_weights_gamma(s, -1.0); }), ErrorCode::NonPositiveGamma);
    EXPECT_EQ(error_of([&] { (void)sample_weights_gamma(s, 0.0); }), ErrorCode::NonPositiveGamma);
}

// ── target return / target variance ──────────────────────────────────

TEST(TargetReturnTest, GmvReturnGivesGmv) {
    const MomentSummary s = random_summary(52, 4, 130);
    const PortfolioSolution gmv = gmv_weights(s);
    const PortfolioSolution p = bayes_weights_target_return(s, gmv.expected_return);
    EXPECT_LT((p.weights - gmv.weights).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_DOUBLE_EQ(p.variance, gmv.variance);
}

TEST(TargetReturnTest, HitsTargetAndMinimizesVariance) {
    const MomentSummary s = random_summary(52, 4, 131);
    const double r0 = gmv_weights(s).expected_return + 0.01;
    const PortfolioSolution p = bayes_weights_target_return(s, r0);
    EXPECT_NEAR(p.weights.dot(s.mean()), r0, 1e-10);
    EXPECT_DOUBLE_EQ(p.expected_return, r0);
    EXPECT_NEAR(p.variance, predictive_variance(s, p.weights), 1e-9 * p.variance);

    std::mt19937_64 rng(132);
    for (int trial = 0; trial < 10000; ++trial) {
        VectorXd w = random_weights(4, rng);
        const VectorXd u = random_direction(4, rng);
        w += (r0 - w.dot(s.mean())) / u.dot(s.mean()) * u;
        ASSERT_NEAR(w.dot(s.mean()), r0, 1e-9);
        ASSERT_LE(p.variance, predictive_variance(s, w));
    }
}

TEST(TargetReturnTest, DegenerateFrontier) {
    const MomentSummary base = random_summary(52, 4, 133);
    const MomentSummary flat = summary_with(VectorXd::Constant(4, 0.002), base.scatter(), 52);
    EXPECT_EQ(error_of([&] { (void)bayes_weights_target_return(flat, 0.01); }),
              ErrorCode::DegenerateFrontier);
    const double r_gmv = gmv_weights(flat).expected_return;
    EXPECT_NO_THROW((void)bayes_weights_target_return(flat, r_gmv));
}

TEST(TargetVarianceTest, GmvVarianceGivesGmv) {
    const MomentSummary s = random_summary(52, 4, 140);
    const PortfolioSolution gmv = gmv_weights(s);
    const PortfolioSolution p = bayes_weights_target_variance(s, gmv.variance);
    EXPECT_LT((p.weights - gmv.weights).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_DOUBLE_EQ(p.expected_return, gmv.expected_return);
}

TEST(TargetVarianceTest, BelowMinimumIsInfeasible) {
    const MomentSummary s = random_summary(52, 4, 141);
    const double v_gmv = gmv_weights(s).variance;
    EXPECT_EQ(error_of([&] { (void)bayes_weights_target_variance(s, v_gmv / 2.0); }),
              ErrorCode::InfeasibleVariance);
    // Rounding just below V_GMV is clamped onto it.
    const PortfolioSolution p = bayes_weights_target_variance(s, v_gmv * (1.0 - 1e-14));
    EXPECT_DOUBLE_EQ(p.variance, v_gmv);
}

TEST(TargetVarianceTest, DoubleMinimumVarianceLiesOnFrontier) {
    const MomentSummary s = random_summary(52, 4, 142);
    const PortfolioSolution gmv = gmv_weights(s);
    const double v0 = 2.0 * gmv.variance;
    const PortfolioSolution p = bayes_weights_target_variance(s, v0);
    EXPECT_NEAR(predictive_variance(s, p.weights), v0, 1e-9 * v0);
    EXPECT_NEAR(p.expected_return, p.weights.dot(s.mean()), 1e-9 * std::abs(p.expected_return));

    const double c = bayes_coefficient(4, 52);
    const double quad = s.mean().dot(q_matrix(s) * s.mean());
    const double lhs = std::pow(p.expected_return - gmv.expected_return, 2);
    const double rhs = quad / c * (v0 - gmv.variance);
    EXPECT_NEAR(lhs, rhs, 1e-9 * rhs);
}

TEST(ParameterizationsTest, ThreeRoutesToTheSamePortfolio) {
    for (std::uint64_t seed = 150; seed < 155; ++seed) {
        const MomentSummary s = random_summary(78, 5, seed);
        for (double gamma : {1.0, 10.0, 100.0}) {
            const PortfolioSolution by_gamma = bayes_weights_gamma(s, gamma);
            const PortfolioSolution by_return = bayes_weights_target_return(s, by_gamma.expected_return);
            const PortfolioSolution by_variance = bayes_weights_target_variance(s, by_gamma.variance);
            EXPECT_LT((by_return.weights - by_gamma.weights).lpNorm<Eigen::Infinity>(), 1e-9);
            EXPECT_LT((by_variance.weights - by_gamma.weights).lpNorm<Eigen::Infinity>(), 1e-9);
        }
    }
}

// ── sample_weights_gamma ─────────────────────────────────────────────

TEST(SampleGammaTest, FlatMeanGivesGmv) {
    const MomentSummary base = random_summary(52, 5, 160);
    const MomentSummary flat = summary_with(VectorXd::Constant(5, -0.001), base.scatter(), 52);
    const VectorXd gmv = gmv_weights(flat).weights;
    EXPECT_LT((sample_weights_gamma(flat, 3.0).weights - gmv).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(SampleGammaTest, SpeculativeTermScaledByCoefficientRatio) {
    const MomentSummary s = random_summary(52, 5, 161);
    const Coefficients co = coefficients(5, 52);
    const VectorXd gmv = gmv_weights(s).weights;
    const VectorXd ws = sample_weights_gamma(s, 25.0).weights - gmv;
    const VectorXd wb = bayes_weights_gamma(s, 25.0).weights - gmv;
    EXPECT_LT((ws - (co.c / co.d) * wb).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(SampleGammaTest, PlugInVarianceUnderstatesPredictiveVariance) {
    const MomentSummary s = random_summary(52, 5, 162);
    const PortfolioSolution b = bayes_weights_gamma(s, 50.0);
    const PortfolioSolution p = sample_weights_gamma(s, 50.0);
    EXPECT_LT(p.variance, b.variance);

    // V_B − V_S = (c − d)(1/a − q/(γ²cd)), so the ordering flips for small γ.
    const FrontierTerms t = frontier_terms(s);
    const Coefficients co = coefficients(5, 52);
    for (double gamma : {0.05, 0.5, 5.0, 50.0, 500.0}) {
        const double gap = bayes_weights_gamma(s, gamma).variance - sample_weights_gamma(s, gamma).variance;
        const double predicted =
            (co.c - co.d) * (1.0 / t.ones_inv_ones - t.mean_q_mean / (gamma * gamma * co.c * co.d));
        EXPECT_NEAR(gap, predicted, 1e-9 * std::abs(predicted) + 1e-15) << "gamma=" << gamma;
    }
    const double d = sample_coefficient(52);
    EXPECT_NEAR(p.variance, d * p.weights.dot(s.scatter() * p.weights), 1e-9 * p.variance);
    EXPECT_NEAR(p.weights.sum(), 1.0, 1e-10);
}

TEST(SampleGammaTest, OnlyNeedsMorePeriodsThanAssets) {
    const MomentSummary s = random_summary(6, 5, 163);
    EXPECT_NO_THROW((void)sample_weights_gamma(s, 10.0));
    EXPECT_EQ(error_of([&] { (void)bayes_weights_gamma(s, 10.0); }), ErrorCode::DegreesOfFreedom);
}

// ── population_weights_gamma ─────────────────────────────────────────

TEST(PopulationGammaTest, HandComputedTwoAssets) {
    VectorXd mu(2);
    mu << 0.1, 0.2;
    const PortfolioSolution p = population_weights_gamma({mu, MatrixXd::Identity(2, 2)}, 1.0);
    EXPECT_NEAR(p.weights(0), 0.45, 1e-15);
    EXPECT_NEAR(p.weights(1), 0.55, 1e-15);
    // R = 0.15 + μᵀRμ = 0.15 + 0.005, V = 0.5 + 0.005.
    EXPECT_NEAR(p.expected_return, 0.155, 1e-15);
    EXPECT_NEAR(p.variance, 0.505, 1e-15);
}

TEST(PopulationGammaTest, FlatMeanAndBudget) {
    const MomentSummary s = random_summary(100, 6, 170);
    const MatrixXd sigma = s.scatter() / 99.0;
    const PortfolioSolution flat = population_weights_gamma({VectorXd::Constant(6, 0.01), sigma}, 2.0);
    const VectorXd gmv = gmv_weights(s).weights;
    EXPECT_LT((flat.weights - gmv).lpNorm<Eigen::Infinity>(), 1e-10);
    std::mt19937_64 rng(171);
    for (int i = 0; i < 20; ++i) {
        const PortfolioSolution p = population_weights_gamma({random_direction(6, rng), sigma}, 0.5 + i);
        EXPECT_NEAR(p.weights.sum(), 1.0, 1e-12);
    }
}

TEST(PopulationGammaTest, SingularCovariance) {
    MatrixXd sigma = MatrixXd::Ones(3, 3);
    EXPECT_EQ(error_of([&] { (void)population_weights_gamma({VectorXd::Zero(3), sigma}, 1.0); }),
              ErrorCode::SingularCovariance);
}

}  // namespace
}  // namespace bayesmv
