#include <lbga/engine.hpp>
#include <lbga/quality.hpp>
#include <lbga/synth.hpp>
#include <lbga/walktrap.hpp>

#include <benchmark/benchmark.h>

namespace {

// vertices per block, 4 blocks, p = 0.3, r = 0.05
lbga::Graph sbm(std::size_t block) {
    lbga::SbmSpec spec{{block, block, block, block}, lbga::uniformBlockMatrix(4, 0.3, 0.05)};
    return lbga::generateSbm(spec, 1).first;
}

void BM_Walktrap(benchmark::State& state) {
    const lbga::Graph g = sbm(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lbga::walktrap(g));
    }
    state.counters["edges"] = static_cast<double>(g.numberOfEdges());
}
BENCHMARK(BM_Walktrap)->Arg(25)->Arg(50)->Arg(125)->Unit(benchmark::kMillisecond);

void BM_NeighborhoodOverlapSweep(benchmark::State& state) {
    const lbga::Graph g = sbm(125);
    const auto clusters = lbga::walktrap(g);
    const auto measure = lbga::makeQualityMeasure("consistent-no");
    for (auto _ : state) {
        double total = 0.0;
        for (const lbga::Edge& e : g.edges()) {
            total += measure->score(g, clusters, e);
        }
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.numberOfEdges()));
}
BENCHMARK(BM_NeighborhoodOverlapSweep)->Unit(benchmark::kMillisecond);

// a handful of full rounds on GSBM-2
void BM_Rounds(benchmark::State& state) {
    const auto data = lbga::findPreset("GSBM-2")->generate(1);
    const lbga::Walktrap algo;
    const auto measure = lbga::makeQualityMeasure(state.range(0) ? "consistent-no" : "ec");
    lbga::LbgaParams params;
    params.maxRounds = 5;
    params.patience = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lbga::run(data.layers, algo, *measure, params));
    }
    state.SetLabel(measure->name());
}
BENCHMARK(BM_Rounds)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GeneratePreset(benchmark::State& state) {
    const auto preset = *lbga::findPreset("GSBM-3");
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(preset.generate(seed++));
    }
}
BENCHMARK(BM_GeneratePreset)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
