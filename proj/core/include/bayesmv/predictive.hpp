#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bayesmv/moments.hpp"

namespace bayesmv {

enum class DrawSource { Representation, HierarchicalOracle };

std::string to_string(DrawSource source);

/// Draws are generated in fixed-size blocks, each with its own sub-streams
/// derived from the master seed. Output therefore depends only on the seed
/// and the inputs, never on `threads`, and extending `b` leaves the earlier
/// draws untouched.
inline constexpr std::size_t draw_block_size = 4096;

struct SamplerOptions {
    /// Worker threads; 0 selects std::thread::hardware_concurrency().
    unsigned threads = 1;
};

/// Monte Carlo sample of one portfolio's next-period return.
struct PredictiveDraws {
    std::vector<double> values;
    std::size_t b = 0;
    std::uint64_t seed = 0;
    DrawSource source = DrawSource::Representation;
    std::string weights_id;
    double location = 0.0;  ///< wᵀx̄, the analytic predictive mean
    double scale2 = 0.0;    ///< wᵀSw
};

struct CredibleInterval {
    double lower;
    double upper;
    double alpha;
    double point;
};

struct PredictiveMoments {
    double mean;
    double variance;
};

/// Samples the predictive portfolio return through
///   wᵀx̄ + sqrt(wᵀSw)·( t₁/sqrt(n(n−k)) + sqrt(1 + t₁²/(n−k))·t₂/sqrt(n−k+1) ),
/// t₁ ~ t_{n−k} and t₂ ~ t_{n−k+1} independent.
///
/// Requires n > k, b ≥ 1 and weights summing to 1 within 1e-8.
PredictiveDraws draw_predictive(const MomentSummary& summary, const VectorXd& weights,
                                std::size_t b, std::uint64_t seed,
                                const SamplerOptions& options = {},
                                std::string weights_id = {});

/// Mean wᵀx̄ and variance c_{k,n}·wᵀSw. Requires n > k + 2.
PredictiveMoments predictive_moments(const MomentSummary& summary, const VectorXd& weights);

/// Empirical quantile with linear interpolation between order statistics at
/// 1-based rank p(B−1)+1. Reorders `values`.
double empirical_quantile(std::vector<double>& values, double p);

/// Equal-tailed interval from the α/2 and 1−α/2 empirical quantiles. Needs
/// at least 100 draws.
CredibleInterval credible_interval(const PredictiveDraws& draws, double alpha);

/// Validation sampler that walks the posterior hierarchy explicitly:
/// μ from the multivariate t posterior, Σ | μ inverse Wishart, then a normal
/// return given (μ, Σ). Must agree in distribution with draw_predictive.
PredictiveDraws oracle_draw_hierarchical(const MomentSummary& summary, const VectorXd& weights,
                                         std::size_t b, std::uint64_t seed,
                                         const SamplerOptions& options = {},
                                         std::string weights_id = {});

struct IntervalRow {
    double gamma;
    double variance;
    double expected_return;
    CredibleInterval interval;
};

/// Credible intervals of the γ-optimal portfolios, ordered by γ descending.
/// Every γ reuses `seed`, so the rows share common random numbers.
std::vector<IntervalRow> interval_report(const MomentSummary& summary,
                                         const std::vector<double>& gammas, double alpha,
                                         std::size_t b, std::uint64_t seed,
                                         const SamplerOptions& options = {});

}  // namespace bayesmv
