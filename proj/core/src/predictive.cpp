#include "bayesmv/predictive.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "bayesmv/error.hpp"
#include "bayesmv/portfolio.hpp"
#include "bayesmv/random.hpp"

namespace bayesmv {

namespace {

enum StreamTag : std::uint64_t { kT1Stream = 1, kT2Stream = 2, kOracleStream = 3 };

constexpr double weight_sum_tolerance = 1e-8;
constexpr std::size_t minimum_interval_draws = 100;

void validate_weights(const MomentSummary& summary, const VectorXd& weights) {
    if (weights.size() != summary.k()) {
        throw Error(ErrorCode::InvalidWeights, "weight vector length does not match asset count");
    }
    if (!weights.allFinite()) {
        throw Error(ErrorCode::InvalidWeights, "weights must be finite");
    }
    if (std::abs(weights.sum() - 1.0) > weight_sum_tolerance) {
        throw Error(ErrorCode::InvalidWeights, "weights must sum to 1");
    }
}

void require_sampler_dof(const MomentSummary& summary) {
    if (summary.n() <= summary.k()) {
        throw Error(ErrorCode::DegreesOfFreedom,
                    "predictive sampling needs n > k, got n=" + std::to_string(summary.n()) +
                        ", k=" + std::to_string(summary.k()));
    }
}

void require_draw_count(std::size_t b) {
    if (b < 1) {
        throw Error(ErrorCode::InvalidArgument, "draw count must be at least 1");
    }
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidAlpha, "alpha must lie in (0, 1)");
    }
}

double portfolio_scale2(const MomentSummary& summary, const VectorXd& weights) {
    return std::max(0.0, weights.dot(summary.scatter() * weights));
}

// Runs fill(block, first, last) for every block of `total` draws. Blocks are
// dealt round-robin to workers; output slots are disjoint.
void for_each_block(std::size_t total, unsigned threads,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fill) {
    const std::size_t blocks = (total + draw_block_size - 1) / draw_block_size;
    auto work = [&](std::size_t worker, std::size_t stride) {
        for (std::size_t block = worker; block < blocks; block += stride) {
            const std::size_t first = block * draw_block_size;
            fill(block, first, std::min(total, first + draw_block_size));
        }
    };
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(blocks, 1)));
    if (workers <= 1) {
        work(0, 1);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(work, w, workers);
    }
}

}  // namespace

std::string to_string(DrawSource source) {
    return source == DrawSource::Representation ? "REPRESENTATION" : "HIERARCHICAL_ORACLE";
}

PredictiveDraws draw_predictive(const MomentSummary& summary, const VectorXd& weights,
                                std::size_t b, std::uint64_t seed, const SamplerOptions& options,
                                std::string weights_id) {
    require_sampler_dof(summary);
    require_draw_count(b);
    validate_weights(summary, weights);

    PredictiveDraws out;
    out.b = b;
    out.seed = seed;
    out.source = DrawSource::Representation;
    out.weights_id = std::move(weights_id);
    out.location = weights.dot(summary.mean());
    out.scale2 = portfolio_scale2(summary, weights);
    out.values.resize(b);

    const auto n = static_cast<double>(summary.n());
    const auto dof = static_cast<double>(summary.n() - summary.k());
    const double t1_scale = 1.0 / std::sqrt(n * dof);
    const double t2_scale = 1.0 / std::sqrt(dof + 1.0);
    const double location = out.location;
    const double sd = std::sqrt(out.scale2);

    for_each_block(b, options.threads, [&](std::size_t block, std::size_t first, std::size_t last) {
        RandomStream t1_stream(derive_seed(seed, block, kT1Stream));
        RandomStream t2_stream(derive_seed(seed, block, kT2Stream));
        for (std::size_t i = first; i < last; ++i) {
            const double t1 = t1_stream.student_t(dof);
            const double t2 = t2_stream.student_t(dof + 1.0);
            const double standardized =
                t1 * t1_scale + std::sqrt(1.0 + t1 * t1 / dof) * t2 * t2_scale;
            out.values[i] = location + sd * standardized;
        }
    });
    return out;
}

PredictiveMoments predictive_moments(const MomentSummary& summary, const VectorXd& weights) {
    const double c = bayes_coefficient(summary.k(), summary.n());
    validate_weights(summary, weights);
    return {weights.dot(summary.mean()), c * portfolio_scale2(summary, weights)};
}

double empirical_quantile(std::vector<double>& values, double p) {
    if (values.empty()) {
        throw Error(ErrorCode::InsufficientDraws, "quantile of an empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "quantile level must lie in [0, 1]");
    }
    // 0-based position h = p(B−1); interpolate between floor(h) and floor(h)+1.
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(lo);
    std::nth_element(values.begin(), nth, values.end());
    const double below = *nth;
    if (frac == 0.0 || lo + 1 >= values.size()) {
        return below;
    }
    const double above = *std::min_element(nth + 1, values.end());
    return below + frac * (above - below);
}

CredibleInterval credible_interval(const PredictiveDraws& draws, double alpha) {
    require_alpha(alpha);
    if (draws.values.size() < minimum_interval_draws) {
        throw Error(ErrorCode::InsufficientDraws, "credible interval needs at least 100 draws");
    }
    std::vector<double> scratch = draws.values;
    const double lower = empirical_quantile(scratch, alpha / 2.0);
    const double upper = empirical_quantile(scratch, 1.0 - alpha / 2.0);
    return {lower, upper, alpha, draws.location};
}

PredictiveDraws oracle_draw_hierarchical(const MomentSummary& summary, const VectorXd& weights,
                                         std::size_t b, std::uint64_t seed,
                                         const SamplerOptions& options, std::string weights_id) {
    require_sampler_dof(summary);
    require_draw_count(b);
    validate_weights(summary, weights);

    PredictiveDraws out;
    out.b = b;
    out.seed = seed;
    out.source = DrawSource::HierarchicalOracle;
    out.weights_id = std::move(weights_id);
    out.location = weights.dot(summary.mean());
    out.scale2 = portfolio_scale2(summary, weights);
    out.values.resize(b);

    const Index k = summary.k();
    const Index n = summary.n();
    const auto nd = static_cast<double>(n);
    const auto mu_dof = static_cast<double>(n - k);
    const Cholesky& scatter_factor = summary.factor();
    const MatrixXd& l = scatter_factor.lower();
    const double mu_scale = 1.0 / std::sqrt(nd * mu_dof);
    const double sqrt_n = std::sqrt(nd);

    for_each_block(b, options.threads, [&](std::size_t block, std::size_t first, std::size_t last) {
        RandomStream rng(derive_seed(seed, block, kOracleStream));
        VectorXd z(k);
        MatrixXd bartlett = MatrixXd::Zero(k, k);
        for (std::size_t i = first; i < last; ++i) {
            // μ ~ t_k(n−k, x̄, S/(n(n−k))).
            for (Index j = 0; j < k; ++j) {
                z(j) = rng.normal();
            }
            const double mix = std::sqrt(mu_dof / rng.chi_square(mu_dof));
            const VectorXd deviation = (mu_scale * mix) * (l * z);

            // Σ | μ ~ IW with Σ⁻¹ ~ W_k(n, S̃⁻¹), S̃ = S + n(μ − x̄)(μ − x̄)ᵀ = M Mᵀ.
            // With Bartlett factor A of W_k(n, I): Σ = M A⁻ᵀ A⁻¹ Mᵀ, so
            // wᵀΣw = ‖A⁻¹ Mᵀ w‖².
            const Cholesky tilde = scatter_factor.rank_one_update(sqrt_n * deviation);
            for (Index r = 0; r < k; ++r) {
                bartlett(r, r) = std::sqrt(rng.chi_square(static_cast<double>(n - r)));
                for (Index c = 0; c < r; ++c) {
                    bartlett(r, c) = rng.normal();
                }
            }
            const VectorXd projected = tilde.lower().transpose() * weights;
            const VectorXd y = bartlett.triangularView<Eigen::Lower>().solve(projected);
            const double portfolio_variance = y.squaredNorm();

            const double mean = weights.dot(summary.mean() + deviation);
            out.values[i] = mean + std::sqrt(portfolio_variance) * rng.normal();
        }
    });
    return out;
}

std::vector<IntervalRow> interval_report(const MomentSummary& summary,
                                         const std::vector<double>& gammas, double alpha,
                                         std::size_t b, std::uint64_t seed,
                                         const SamplerOptions& options) {
    require_alpha(alpha);
    if (b < minimum_interval_draws) {
        throw Error(ErrorCode::InsufficientDraws, "credible interval needs at least 100 draws");
    }
    std::vector<double> ordered = gammas;
    for (double g : ordered) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw Error(ErrorCode::NonPositiveGamma, "risk aversion must be positive and finite");
        }
    }
    std::sort(ordered.begin(), ordered.end(), std::greater<>());

    std::vector<IntervalRow> rows;
    rows.reserve(ordered.size());
    for (double gamma : ordered) {
        const PortfolioSolution solution = bayes_weights_gamma(summary, gamma);
        const PredictiveDraws draws = draw_predictive(summary, solution.weights, b, seed, options);
        rows.push_back({gamma, solution.variance, solution.expected_return,
                        credible_interval(draws, alpha)});
    }
    return rows;
}

}  // namespace bayesmv
