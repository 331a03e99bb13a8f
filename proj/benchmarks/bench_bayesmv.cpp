#include <random>

#include <benchmark/benchmark.h>

#include "bayesmv/bayesmv.hpp"

namespace {

using namespace bayesmv;

MomentSummary make_summary(Index n, Index k) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> z(0.0, 0.02);
    MatrixXd x(n, k);
    for (Index i = 0; i < n; ++i) {
        const double market = z(rng);
        for (Index j = 0; j < k; ++j) x(i, j) = 0.001 * static_cast<double>(j % 7) + market + z(rng);
    }
    return estimate_moments(x);
}

VectorXd equal_weights(Index k) { return VectorXd::Constant(k, 1.0 / static_cast<double>(k)); }

void BM_EstimateMoments(benchmark::State& state) {
    const Index k = state.range(0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z(0.0, 0.02);
    MatrixXd x(2 * k + 10, k);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_moments(x));
}
BENCHMARK(BM_EstimateMoments)->Arg(5)->Arg(50)->Arg(200);

void BM_BayesWeights(benchmark::State& state) {
    const Index k = state.range(0);
    const MomentSummary s = make_summary(2 * k + 10, k);
    for (auto _ : state) benchmark::DoNotOptimize(bayes_weights_gamma(s, 25.0));
}
BENCHMARK(BM_BayesWeights)->Arg(5)->Arg(50)->Arg(200);

void BM_DrawPredictive(benchmark::State& state) {
    const MomentSummary s = make_summary(130, 10);
    const VectorXd w = equal_weights(10);
    const auto threads = static_cast<unsigned>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(draw_predictive(s, w, 100000, ++seed, {threads}));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_DrawPredictive)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_OracleDraws(benchmark::State& state) {
    const Index k = state.range(0);
    const MomentSummary s = make_summary(130, k);
    const VectorXd w = equal_weights(k);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(oracle_draw_hierarchical(s, w, 10000, ++seed));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_OracleDraws)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_CredibleInterval(benchmark::State& state) {
    const MomentSummary s = make_summary(130, 10);
    const PredictiveDraws d = draw_predictive(s, equal_weights(10), 100000, 1);
    for (auto _ : state) benchmark::DoNotOptimize(credible_interval(d, 0.05));
}
BENCHMARK(BM_CredibleInterval)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
