#include <benchmark/benchmark.h>

#include "oodwn/oodwn.hpp"

using namespace oodwn;

namespace {

SampleMatrix iid(std::size_t n, std::size_t d, std::uint64_t seed) {
    return sample_process({ProcessKind::IidGaussian, d, 0, 1, seed}, n);
}

}  // namespace

static void BM_BoxPierceVertical(benchmark::State& state) {
    const auto x = iid(1, 3072, 1);
    const auto lags = vertical_lags(ImageGeometry::cifar10(), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bp_statistic(x.row(0), lags));
    state.SetLabel(std::to_string(lags.size()) + " lags");
}
BENCHMARK(BM_BoxPierceVertical)->Arg(96)->Arg(1200)->Arg(2400);

static void BM_BoxPierceAllLags(benchmark::State& state) {
    const auto x = iid(1, 3072, 2);
    const auto lags = all_lags(static_cast<std::size_t>(state.range(0)), 3072);
    for (auto _ : state) benchmark::DoNotOptimize(bp_statistic(x.row(0), lags));
}
BENCHMARK(BM_BoxPierceAllLags)->Arg(20)->Arg(200);

static void BM_WhitenRows(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto model = fit_gaussian(iid(2 * d, d, 3));
    const auto batch = iid(256, d, 4);
    for (auto _ : state) benchmark::DoNotOptimize(whiten_rows(model, batch));
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_WhitenRows)->Arg(768)->Arg(3072)->Unit(benchmark::kMillisecond);

static void BM_FitGaussian(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto data = iid(2 * d, d, 5);
    for (auto _ : state) benchmark::DoNotOptimize(fit_gaussian(data));
}
BENCHMARK(BM_FitGaussian)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_Auroc(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = iid(1, n, 6), b = iid(1, n, 7);
    for (auto _ : state) benchmark::DoNotOptimize(auroc(a.row(0), b.row(0)));
    state.SetItemsProcessed(state.iterations() * 2 * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Auroc)->Arg(1000)->Arg(26032);

static void BM_Chi2Sf(benchmark::State& state) {
    const double k = static_cast<double>(state.range(0));
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chi2_sf(x, k));
        x = x < 4 * k ? x * 1.01 : 0.5;
    }
}
BENCHMARK(BM_Chi2Sf)->Arg(1)->Arg(12)->Arg(1200);

static void BM_ComplexityBits(benchmark::State& state) {
    const auto g = ImageGeometry::cifar10();
    Xoshiro256 rng(8);
    std::vector<double> img(g.dim());
    for (auto& v : img) v = static_cast<double>(rng.below(256));
    for (auto _ : state) benchmark::DoNotOptimize(generic_complexity_bits(img, g));
}
BENCHMARK(BM_ComplexityBits)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
