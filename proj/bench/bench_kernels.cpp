#include <benchmark/benchmark.h>

#include <cmath>

#include "hadamard/analysis.hpp"
#include "hadamard/quad.hpp"

using namespace hadamard;

namespace {

const Surface& bench_surface() {
    static const Surface f = Surface::expression(
        [](double u, double v) { return std::exp(u * v) + std::sin(3 * u) * v * v; },
        [](double u, double v) { return (1 + u * v) * std::exp(u * v) + 6 * std::cos(3 * u) * v; });
    return f;
}

void BM_ScanGap(benchmark::State& state) {
    const ScanSpec spec{BoundFamily::T2, 2.0};
    const Rect r(0, 1, 0, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_gap(spec, bench_surface(), r, SExponent(0.5), static_cast<int>(state.range(0))));
}

void BM_ScanGapSerial(benchmark::State& state) {
    const ScanSpec spec{BoundFamily::T2, 2.0};
    const Rect r(0, 1, 0, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            scan_gap_serial(spec, bench_surface(), r, SExponent(0.5), static_cast<int>(state.range(0))));
}

const BivariateFn& bench_fn() {
    static const BivariateFn g = [](double u, double v) { return std::exp(u * v) * std::cos(u + 2 * v); };
    return g;
}

void BM_TensorGL(benchmark::State& state) {
    const auto& rule = gauss_legendre(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tensor_gl_2d(bench_fn(), 0, 1, 0, 1, rule));
}

void BM_TensorGLSerial(benchmark::State& state) {
    const auto& rule = gauss_legendre(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tensor_gl_2d_serial(bench_fn(), 0, 1, 0, 1, rule));
}

}  // namespace

BENCHMARK(BM_ScanGap)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanGapSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TensorGL)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TensorGLSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
