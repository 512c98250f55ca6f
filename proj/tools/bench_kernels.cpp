// Serial vs OpenMP enumeration kernels on random hypergraphs and dypergraphs.

#include <benchmark/benchmark.h>

#include <random>

#include "rootpack/conditions.hpp"
#include "rootpack/kernels.hpp"

using namespace rootpack;

namespace {

Hypergraph bench_hypergraph(int n, int m)
{
    std::mt19937_64 gen(1234);
    std::vector<VertexList> hes;
    for (int i = 0; i < m; ++i) {
        VertexList x;
        for (int v = 0; v < n; ++v)
            if (gen() % 3 == 0) x.push_back(v);
        while (x.size() < 2) x = {static_cast<int>(gen() % (n - 1)), n - 1};
        hes.push_back(x);
    }
    return Hypergraph(n, hes);
}

Dypergraph bench_dypergraph(int n, int m)
{
    std::mt19937_64 gen(4321);
    std::vector<Hyperarc> arcs;
    for (int i = 0; i < m; ++i) {
        const int head = static_cast<int>(gen() % n);
        VertexList tails;
        for (int v = 0; v < n; ++v)
            if (v != head && gen() % 3 == 0) tails.push_back(v);
        if (tails.empty()) tails.push_back((head + 1) % n);
        arcs.push_back({tails, head});
    }
    return Dypergraph(n, arcs);
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_PartitionEnteringCounts(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto table = PartitionTable::get(PartitionTable::Kind::partitions, n, 12);
    const auto inc = Incidence::of(bench_hypergraph(n, 3 * n));
    for (auto _ : state) benchmark::DoNotOptimize(entering_counts(*table, inc, exec_of(state)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * table->size()));
}

void BM_PartitionConditionScan(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto hg = bench_hypergraph(n, 4 * n);
    // Loose bounds so the scan visits every partition.
    const auto spec = PackingSpec::exact(1, {n});
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_partition_conditions(Incidence::of(hg), spec, 12, exec_of(state)));
}

void BM_SubpartitionConditionScan(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto d = bench_dypergraph(n, 3 * n);
    const auto spec = PackingSpec::exact(1, {n});
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_subpartition_conditions(Incidence::of(d), spec, 10, exec_of(state)));
}

void BM_RemovalScan(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto hg = bench_hypergraph(n, 3 * n);
    const auto table = PartitionTable::get(PartitionTable::Kind::partitions, n, 12);
    const auto counts = entering_counts(*table, Incidence::of(hg), Exec::parallel);
    const std::vector<long> need(static_cast<std::size_t>(n) + 1, -1);
    const VertexList x{0, 1, 2, n - 1};
    for (auto _ : state) benchmark::DoNotOptimize(scan_removal(*table, counts, need, x, 1, exec_of(state)));
}

} // namespace

BENCHMARK(BM_PartitionEnteringCounts)->ArgsProduct({{9, 10, 11}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartitionConditionScan)->ArgsProduct({{9, 10, 11}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubpartitionConditionScan)->ArgsProduct({{8, 9}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RemovalScan)->ArgsProduct({{10, 11}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
