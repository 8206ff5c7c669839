#include "mzfric/history.hpp"
#include "mzfric/kernel.hpp"
#include "mzfric/modal_model.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

void BM_kernel_table_serial(benchmark::State& state) {
    const auto s = mzfric::build_string(1.0, 0.1, 0.4, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mzfric::build_kernel_table_serial(s, 5e-4, 2.0));
}

void BM_kernel_table_parallel(benchmark::State& state) {
    const auto s = mzfric::build_string(1.0, 0.1, 0.4, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mzfric::build_kernel_table(s, 5e-4, 2.0));
}

struct History {
    std::vector<double> w;
    std::vector<double> df;
    explicit History(std::size_t n) : w(n), df(n) {
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = std::exp(-1e-3 * static_cast<double>(i)) * std::cos(0.01 * static_cast<double>(i));
            df[i] = std::sin(0.003 * static_cast<double>(i));
        }
    }
};

void BM_history_serial(benchmark::State& state) {
    const auto q = static_cast<std::size_t>(state.range(0));
    const History h(q);
    for (auto _ : state) benchmark::DoNotOptimize(mzfric::history_convolution_serial(h.w, h.df, q));
}

void BM_history_parallel(benchmark::State& state) {
    const auto q = static_cast<std::size_t>(state.range(0));
    const History h(q);
    for (auto _ : state) benchmark::DoNotOptimize(mzfric::history_convolution(h.w, h.df, q));
}

void BM_resolvent_scan(benchmark::State& state) {
    const auto s = mzfric::build_string(1.0, 0.0, 0.4, 500);
    for (auto _ : state) benchmark::DoNotOptimize(mzfric::resolvent_scan(s, 1.0, 2000.0, 20000));
}

}  // namespace

BENCHMARK(BM_kernel_table_serial)->Arg(160)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel_table_parallel)->Arg(160)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_history_serial)->Arg(4000)->Arg(16000)->Arg(64000);
BENCHMARK(BM_history_parallel)->Arg(4000)->Arg(16000)->Arg(64000);
BENCHMARK(BM_resolvent_scan)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
