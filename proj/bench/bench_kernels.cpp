// Serial reference vs OpenMP versions of the grid scan and the render kernels.

#include "lfr/renderlab.hpp"
#include "lfr/scan.hpp"

#include <benchmark/benchmark.h>

using namespace lfr;

namespace {

RenderConfig bench_cfg(int points) {
    RenderConfig c = preset_fig01();
    c.pointsPerSegment = points;
    return c;
}

ScanGrid bench_grid() {
    ScanGrid g;
    g.aLo = -2, g.aHi = 2, g.aSteps = 5;
    g.bLo = -2, g.bHi = 2, g.bSteps = 4;
    g.nMax = 6;
    return g;
}

void BM_iterate_serial(benchmark::State& st) {
    RenderConfig c = bench_cfg(int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(iterate_segment_serial(c));
}
void BM_iterate_parallel(benchmark::State& st) {
    RenderConfig c = bench_cfg(int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(iterate_segment(c));
}

void BM_rasterize_serial(benchmark::State& st) {
    PointCloud cloud = iterate_segment_serial(bench_cfg(int(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(rasterize_serial(cloud, 600, 600));
}
void BM_rasterize_parallel(benchmark::State& st) {
    PointCloud cloud = iterate_segment_serial(bench_cfg(int(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(rasterize(cloud, 600, 600));
}

void BM_scan_serial(benchmark::State& st) {
    ScanGrid g = bench_grid();
    for (auto _ : st) benchmark::DoNotOptimize(scan_grid_serial(g));
}
void BM_scan_parallel(benchmark::State& st) {
    ScanGrid g = bench_grid();
    for (auto _ : st) benchmark::DoNotOptimize(scan_grid(g));
}

}  // namespace

BENCHMARK(BM_iterate_serial)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_iterate_parallel)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rasterize_serial)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rasterize_parallel)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
