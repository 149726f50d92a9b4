#include <benchmark/benchmark.h>

#include "bnpid/conditional_priors.hpp"
#include "bnpid/dirichlet_process.hpp"
#include "bnpid/random_set.hpp"
#include "bnpid/scenarios.hpp"
#include "bnpid/special_functions.hpp"

using namespace bnpid;

static void BM_StickBreaking(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    std::uint64_t i = 0;
    for (auto _ : state) {
        RngStream r = substream(1, i++);
        benchmark::DoNotOptimize(stick_breaking(20, k, r));
    }
    state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_StickBreaking)->Arg(15)->Arg(167)->Arg(1000);

static void BM_PosteriorSetDraw(benchmark::State& state) {
    const auto id = static_cast<ScenarioId>(state.range(0));
    const Scenario s(default_config(id));
    RngStream dr = substream(2, 0);
    const Dataset d = s.generate_data(dr);
    std::uint64_t i = 0;
    for (auto _ : state) {
        RngStream r = substream(3, i++);
        benchmark::DoNotOptimize(s.draw_set(DrawSource::Posterior, &d, r));
    }
    state.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_PosteriorSetDraw)
    ->Arg(static_cast<int>(ScenarioId::IntervalCensored))
    ->Arg(static_cast<int>(ScenarioId::ErrorsInVariables))
    ->Arg(static_cast<int>(ScenarioId::IntervalRegression))
    ->Arg(static_cast<int>(ScenarioId::BinaryMissing));

static void BM_DrawSetBatchWorkers(benchmark::State& state) {
    const Scenario s(default_config(ScenarioId::IntervalRegression));
    RngStream dr = substream(4, 0);
    const Dataset d = s.generate_data(dr);
    for (auto _ : state) {
        benchmark::DoNotOptimize(draw_set_batch(s, DrawSource::Posterior, &d, 1000, 5, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_DrawSetBatchWorkers)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_EstimateCoverage(benchmark::State& state) {
    const Scenario s(default_config(ScenarioId::ToyAnalytic));
    const auto batch = draw_set_batch(s, DrawSource::Prior, nullptr, static_cast<std::size_t>(state.range(0)), 6);
    const auto grid = make_grid(0, 2.5, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_coverage(batch, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(grid.size()));
}
BENCHMARK(BM_EstimateCoverage)->Arg(1000)->Arg(10000);

static void BM_CredibleRegion(benchmark::State& state) {
    const Scenario s(default_config(ScenarioId::ToyAnalytic));
    const auto batch = draw_set_batch(s, DrawSource::Prior, nullptr, 10000, 7);
    for (auto _ : state) benchmark::DoNotOptimize(credible_region(batch, 0.95));
}
BENCHMARK(BM_CredibleRegion);

static void BM_BetaCdf(benchmark::State& state) {
    double x = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(beta_cdf(x, 402.0, 604.0));
        x = x < 0.99 ? x + 0.001 : 0.01;
    }
}
BENCHMARK(BM_BetaCdf);

static void BM_GammaGivenTheta(benchmark::State& state) {
    ConditionalPriorSpec spec;
    spec.family = static_cast<PriorFamily>(state.range(0));
    const SetRealization theta{IntervalSet(0.4, 0.9), 0.4, 0.9, 1.0};
    std::uint64_t i = 0;
    for (auto _ : state) {
        RngStream r = substream(8, i++);
        benchmark::DoNotOptimize(sample_gamma_given_theta(spec, theta, r));
    }
    state.SetLabel(std::string(to_string(spec.family)));
}
BENCHMARK(BM_GammaGivenTheta)->DenseRange(0, 3);

BENCHMARK_MAIN();
