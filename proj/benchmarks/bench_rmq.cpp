#include <benchmark/benchmark.h>

#include "grmq/oracle.hpp"
#include "grmq/query_engine.hpp"
#include "grmq/workload.hpp"

using namespace grmq;

namespace {

HierarchyConfig cfg_for(std::int64_t strategy, std::uint64_t n) {
    HierarchyConfig cfg = HierarchyConfig::defaults_for(n);
    if (strategy == 1) {
        cfg.strategy = ScanStrategy::LaneGroup;
        cfg.chunk_size = 32;
        cfg.group_size = 16;
        cfg.cutoff = 64;
    }
    return cfg;
}

}  // namespace

static void BM_Build(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    auto values = gen_array(n, 1);
    for (auto _ : state) {
        auto h = MinHierarchy::build(values, cfg_for(state.range(1), n));
        benchmark::DoNotOptimize(h.upper_mins().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Build)->ArgsProduct({{1 << 16, 1 << 20, 1 << 22}, {0, 1}});

static void BM_BatchQuery(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    const std::uint64_t m = 1 << 14;
    auto h = MinHierarchy::build(gen_array(n, 1), cfg_for(state.range(1), n));
    auto batch = gen_queries({n, m, RangeClass::Mixed, 2});
    for (auto _ : state) {
        auto res = execute_batch(h, batch, Scheduling::WarpLocalQueue);
        benchmark::DoNotOptimize(res.results.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
}
BENCHMARK(BM_BatchQuery)->ArgsProduct({{1 << 16, 1 << 20, 1 << 22}, {0, 1}});

static void BM_FullScanBaseline(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    auto values = gen_array(n, 1);
    auto batch = gen_queries({n, 256, RangeClass::Mixed, 2});
    for (auto _ : state) {
        for (const Query& q : batch.queries)
            benchmark::DoNotOptimize(full_scan_rmq(values, q.l, q.r));
    }
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_FullScanBaseline)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
