// Serial versus OpenMP versions of the oracle kernels.
// Thread count follows MAJORANT_THREADS / OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "majorant/oracle.hpp"

using namespace majorant;

namespace {

// Infeasible pair: the search cannot exit early, so every row is scanned.
constexpr std::array<double, 2> kSigma{1.0, 1.0};
constexpr std::array<double, 2> kAlpha{1.0, 0.0};

template <auto Search>
void BM_GridSearch(benchmark::State& state) {
    const auto points = std::size_t(state.range(0));
    const double accept = grid_tolerance(kSigma, points);
    for (auto _ : state) benchmark::DoNotOptimize(Search(kSigma, kAlpha, points, accept));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(points * points * points));
}

Matrix abs_gaussian(std::size_t n) {
    Rng rng(1);
    return polar(FactorElement(gaussian_matrix(n, n, rng))).positive;
}

template <auto Samples>
void BM_KyFan(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const Matrix abs_t = abs_gaussian(n);
    for (auto _ : state) benchmark::DoNotOptimize(Samples(abs_t, n / 4, 256, 7));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * 256);
}

std::vector<Matrix> batch(std::size_t n, std::size_t count) {
    Rng rng(2);
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(gaussian_matrix(n, n, rng));
    return out;
}

template <auto Margins>
void BM_ExpectationMargins(benchmark::State& state) {
    const std::vector<Matrix> b = batch(std::size_t(state.range(0)), 64);
    for (auto _ : state) benchmark::DoNotOptimize(Margins(b));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * 64);
}

}  // namespace

BENCHMARK(BM_GridSearch<grid_search_2x2_serial>)->Name("grid_search/serial")->Arg(100)->Arg(200);
BENCHMARK(BM_GridSearch<grid_search_2x2_parallel>)->Name("grid_search/parallel")->Arg(100)->Arg(200)->UseRealTime();
BENCHMARK(BM_KyFan<kyfan_samples_serial>)->Name("kyfan/serial")->Arg(16)->Arg(64);
BENCHMARK(BM_KyFan<kyfan_samples_parallel>)->Name("kyfan/parallel")->Arg(16)->Arg(64)->UseRealTime();
BENCHMARK(BM_ExpectationMargins<expectation_margins_serial>)->Name("expectation_margins/serial")->Arg(16)->Arg(64);
BENCHMARK(BM_ExpectationMargins<expectation_margins_parallel>)
    ->Name("expectation_margins/parallel")
    ->Arg(16)
    ->Arg(64)
    ->UseRealTime();

int main(int argc, char** argv) {
    configure_threads();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
