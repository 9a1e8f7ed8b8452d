#include <benchmark/benchmark.h>

#include "qsearch/algorithms.hpp"
#include "qsearch/costbench.hpp"
#include "qsearch/statevector.hpp"
#include "qsearch/transpiler.hpp"

namespace {

using namespace qsearch;

void BM_HadamardSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector sv = uniform_state(n);
    Circuit layer(n);
    for (int q = 0; q < n; ++q) layer.append(Gate::h(q));
    for (auto _ : state) {
        sv = simulate(layer, sv);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * n *
                            static_cast<std::int64_t>(sv.dim()));
}
BENCHMARK(BM_HadamardSweep)->DenseRange(12, 20, 4);

void BM_FullSearch(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const std::uint64_t x = (std::uint64_t{1} << n) - 2;
    for (auto _ : state) {
        const SearchResult r = run_search({n, x});
        benchmark::DoNotOptimize(r.probability);
    }
    state.counters["u0_calls"] =
        static_cast<double>(call_count_closed_form(n));
}
BENCHMARK(BM_FullSearch)->DenseRange(4, 14, 2)->Unit(benchmark::kMillisecond);

void BM_GroverBaseline(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const std::uint64_t x = 1;
    const long long t = grover_plan(n, x).iterations;
    for (auto _ : state) {
        const StateVector out =
            simulate(grover_circuit(n, x, t), uniform_state(n));
        benchmark::DoNotOptimize(out.amplitudes().data());
    }
}
BENCHMARK(BM_GroverBaseline)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_LowerAndRouteSearch(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit circuit = deterministic_search_circuit({n, 0});
    for (auto _ : state) {
        const Circuit lowered = lower_circuit(circuit, Strategy::AncillaChain);
        const auto [rows, cols] = grid_dims_for(lowered.width());
        const CouplingMap grid = grid_map(rows, cols);
        const RoutedCircuit routed = route(lowered, grid, snake_layout(grid));
        benchmark::DoNotOptimize(routed.swap_count);
    }
}
BENCHMARK(BM_LowerAndRouteSearch)
    ->DenseRange(4, 10, 2)
    ->Unit(benchmark::kMillisecond);

void BM_AnalyticSweep(benchmark::State& state) {
    SweepConfig config;
    config.n_min = 4;
    config.n_max = 40;
    config.strategy = Strategy::ZeroAncilla;
    config.diffusion_only = true;
    for (auto _ : state) {
        const CostReport report = sweep(config);
        benchmark::DoNotOptimize(report.rows.size());
    }
}
BENCHMARK(BM_AnalyticSweep)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
