// Serial reference against the OpenMP path for the heavy kernels. The second benchmark
// argument selects the path: 0 serial, 1 parallel.
#include "openlimit/geometry.hpp"
#include "openlimit/limitset.hpp"
#include "openlimit/spectral.hpp"
#include "openlimit/symmetrize.hpp"

#include <benchmark/benchmark.h>

using namespace openlimit;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

const LaurentSymbol& fig3() {
    static const LaurentSymbol f = decay_symbol(7, 3.5, 4.8, 1.0, 1.0);
    return f;
}

const GbzCurve& fig3_curve() {
    static const GbzCurve c = gbz_extract(fig3(), std::nullopt, 2000);
    return c;
}

void BM_WindingRaster(benchmark::State& state) {
    const PlaneCurve c = symbol_curve(fig3(), 1.0, 8192);
    const Grid grid{bounding_box(c.points, 0.1), static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(winding_raster(c, grid, exec_of(state)));
}

void BM_RootGrid(benchmark::State& state) {
    const RootSolver solver(fig3());
    const Grid grid{default_box(fig3()), static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(root_grid(solver, grid, exec_of(state)));
}

void BM_Nudft(benchmark::State& state) {
    const GbzCurve& curve = fig3_curve();
    for (auto _ : state)
        benchmark::DoNotOptimize(nudft_coeffs(curve, fig3(), static_cast<int>(state.range(0)), exec_of(state)));
}

void BM_SimilarityTable(benchmark::State& state) {
    const GbzCurve& curve = fig3_curve();
    const int rows = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(SimilarityTable(curve, rows, -20, 20, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_WindingRaster)->ArgsProduct({{200, 800}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RootGrid)->ArgsProduct({{60, 120}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Nudft)->ArgsProduct({{128, 512}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimilarityTable)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
