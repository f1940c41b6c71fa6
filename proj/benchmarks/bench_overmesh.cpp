#include <benchmark/benchmark.h>

#include "overmesh/graph.hpp"
#include "overmesh/mesh.hpp"
#include "overmesh/metrics.hpp"

namespace {

using namespace overmesh;

OverlayGraph make_mesh(std::size_t n) {
    OverlayGraph g;
    const TieBreakPolicy policy = TieBreakPolicy::lowest_id();
    for (NodeId id = 1; id <= n; ++id) join(g, id, policy);
    return g;
}

void BM_JoinGrowth(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        OverlayGraph g = make_mesh(n);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_JoinGrowth)->Arg(50)->Arg(200)->Arg(500);

void BM_IsBiconnected(benchmark::State& state) {
    const OverlayGraph g = make_mesh(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(is_biconnected(g));
}
BENCHMARK(BM_IsBiconnected)->Arg(50)->Arg(200)->Arg(500);

void BM_ArticulationPoints(benchmark::State& state) {
    const OverlayGraph g = make_mesh(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(articulation_points(g));
}
BENCHMARK(BM_ArticulationPoints)->Arg(50)->Arg(200)->Arg(500);

void BM_AvgHops(benchmark::State& state) {
    const OverlayGraph g = make_mesh(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(avg_hops(g));
}
BENCHMARK(BM_AvgHops)->Arg(50)->Arg(200);

void BM_PruneRedundant(benchmark::State& state) {
    const OverlayGraph base = make_mesh(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        state.PauseTiming();
        OverlayGraph g = base;
        state.ResumeTiming();
        benchmark::DoNotOptimize(prune_redundant(g));
    }
}
BENCHMARK(BM_PruneRedundant)->Arg(50)->Arg(200);

void BM_RepairFailure(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const OverlayGraph base = make_mesh(n);
    const NodeId victim = static_cast<NodeId>(n / 2);
    for (auto _ : state) {
        state.PauseTiming();
        OverlayGraph g = base;
        state.ResumeTiming();
        benchmark::DoNotOptimize(repair_failure(g, victim));
    }
}
BENCHMARK(BM_RepairFailure)->Arg(50)->Arg(200)->Arg(500);

void BM_DisjointPathPair(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const OverlayGraph g = make_mesh(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(has_two_node_disjoint_paths(g, 1, static_cast<NodeId>(n)));
}
BENCHMARK(BM_DisjointPathPair)->Arg(50)->Arg(200)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
