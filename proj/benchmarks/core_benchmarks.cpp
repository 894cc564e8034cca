#include <benchmark/benchmark.h>

#include "gscale/dist.hpp"
#include "gscale/loctest.hpp"
#include "gscale/simgen.hpp"

using namespace gscale;

namespace {

simgen::SimulatedSample model1_sample(int pairs_per_group) {
    simgen::Model1Config cfg;
    cfg.n1 = cfg.n2 = pairs_per_group;
    cfg.margin = simgen::Margin::Gaussian;
    cfg.seed = 1234;
    return simgen::gen_model1(cfg);
}

void BM_FitOls(benchmark::State& state) {
    auto sim = model1_sample(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(regress::fit_ols(sim.sample.design, sim.sample.y));
}
BENCHMARK(BM_FitOls)->Arg(100)->Arg(1000);

void BM_FitLad(benchmark::State& state) {
    auto sim = model1_sample(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(regress::fit_lad(sim.sample.design, sim.sample.y));
}
BENCHMARK(BM_FitLad)->Arg(100)->Arg(1000);

void BM_ProfileRho(benchmark::State& state) {
    auto sim = model1_sample(static_cast<int>(state.range(0)));
    auto d = scaletest::abs_residuals(sim.sample, scaletest::Stage1::LAD).d;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            regress::profile_rho(sim.sample.design, d, *sim.sample.clusters));
}
BENCHMARK(BM_ProfileRho)->Arg(100)->Arg(1000);

void BM_GsTestLad(benchmark::State& state) {
    auto sim = model1_sample(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(scaletest::gs_test(sim.sample, scaletest::Stage1::LAD));
}
BENCHMARK(BM_GsTestLad)->Arg(100)->Arg(1000);

void BM_ChiSquareQuantile(benchmark::State& state) {
    auto chi4 = dist::DistSpec::chi_square(4.0);
    double p = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist::quantile(chi4, p));
        p += 0.0009;
        if (p >= 0.999) p = 0.001;
    }
}
BENCHMARK(BM_ChiSquareQuantile);

}  // namespace

BENCHMARK_MAIN();
