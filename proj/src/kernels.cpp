#include "rootpack/kernels.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace rootpack {

Incidence Incidence::of(const Graph& g)
{
    Incidence inc;
    inc.n = g.vertex_count();
    for (const auto& e : g.edges()) {
        inc.verts.push_back(e.u);
        inc.verts.push_back(e.v);
        inc.offsets.push_back(static_cast<int>(inc.verts.size()));
    }
    return inc;
}

Incidence Incidence::of(const Hypergraph& g)
{
    Incidence inc;
    inc.n = g.vertex_count();
    for (const auto& x : g.hyperedges()) {
        inc.verts.insert(inc.verts.end(), x.begin(), x.end());
        inc.offsets.push_back(static_cast<int>(inc.verts.size()));
    }
    return inc;
}

Incidence Incidence::of(const Digraph& d)
{
    Incidence inc;
    inc.n = d.vertex_count();
    inc.directed = true;
    for (const auto& a : d.arcs()) {
        inc.verts.push_back(a.tail);
        inc.heads.push_back(a.head);
        inc.offsets.push_back(static_cast<int>(inc.verts.size()));
    }
    return inc;
}

Incidence Incidence::of(const Dypergraph& d)
{
    Incidence inc;
    inc.n = d.vertex_count();
    inc.directed = true;
    for (const auto& a : d.hyperarcs()) {
        inc.verts.insert(inc.verts.end(), a.tails.begin(), a.tails.end());
        inc.heads.push_back(a.head);
        inc.offsets.push_back(static_cast<int>(inc.verts.size()));
    }
    return inc;
}

std::vector<long> condition_needs(const PackingSpec& spec, int n)
{
    const auto lower = members_of(spec.lower);
    const auto upper = members_of(spec.upper);
    const long slack = static_cast<long>(spec.upper[0]) - spec.lower_sum();
    std::vector<long> need(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) {
        const long hp = static_cast<long>(spec.h) * p;
        need[static_cast<std::size_t>(p)] = std::max(hp - slack - capped_sum(lower, p), hp - capped_sum(upper, p));
    }
    return need;
}

namespace {

inline int label_of(std::uint64_t code, int v)
{
    return static_cast<int>((code >> (4 * v)) & 0xF);
}

inline bool element_enters(const Incidence& inc, int i, std::uint64_t code, bool sub)
{
    const int* b = inc.verts.data() + inc.offsets[static_cast<std::size_t>(i)];
    const int* e = inc.verts.data() + inc.offsets[static_cast<std::size_t>(i) + 1];
    if (inc.directed) {
        const int hl = label_of(code, inc.heads[static_cast<std::size_t>(i)]);
        if (sub && hl == 0) return false;
        for (const int* t = b; t != e; ++t) {
            if (label_of(code, *t) != hl) return true;
        }
        return false;
    }
    // Two different labels mean at least one real block is both met and left.
    const int first = label_of(code, *b);
    for (const int* t = b + 1; t != e; ++t) {
        if (label_of(code, *t) != first) return true;
    }
    return false;
}

// Labels of x (other than `skip`) span more than one value.
inline bool mixed_labels(std::span<const int> x, int skip, std::uint64_t code)
{
    int first = -1;
    for (int v : x) {
        if (v == skip) continue;
        const int l = label_of(code, v);
        if (first == -1) {
            first = l;
        } else if (l != first) {
            return true;
        }
    }
    return false;
}

inline int removal_delta(std::span<const int> x, int removed, std::uint64_t code)
{
    return (mixed_labels(x, -1, code) && !mixed_labels(x, removed, code)) ? 1 : 0;
}

void require_partition_table(const PartitionTable& table)
{
    if (table.subpartitions()) throw std::invalid_argument("removal scans need a partition table");
}

} // namespace

int entering_count_code(const Incidence& inc, std::uint64_t code, bool subpartition)
{
    int count = 0;
    for (int i = 0; i < inc.size(); ++i) count += element_enters(inc, i, code, subpartition) ? 1 : 0;
    return count;
}

ScanResult scan_conditions(const PartitionTable& table, const Incidence& inc, std::span<const long> need, Exec exec)
{
    const bool sub = table.subpartitions();
    const auto total = static_cast<long long>(table.size());
    ScanResult r;
    if (exec == Exec::serial) {
        for (long long idx = 0; idx < total; ++idx) {
            ++r.scanned;
            const auto u = static_cast<std::size_t>(idx);
            if (entering_count_code(inc, table.codes[u], sub) < need[table.block_counts[u]]) {
                r.first_violation = idx;
                break;
            }
        }
        return r;
    }
    long long best = LLONG_MAX;
#pragma omp parallel for reduction(min : best) schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        if (idx < best && entering_count_code(inc, table.codes[u], sub) < need[table.block_counts[u]]) best = idx;
    }
    r.first_violation = best == LLONG_MAX ? -1 : best;
    // Match the serial count: entries up to and including the first violation.
    r.scanned = best == LLONG_MAX ? table.size() : static_cast<std::size_t>(best) + 1;
    return r;
}

std::vector<int> entering_counts(const PartitionTable& table, const Incidence& inc, Exec exec)
{
    const bool sub = table.subpartitions();
    const auto total = static_cast<long long>(table.size());
    std::vector<int> out(table.size());
    if (exec == Exec::serial) {
        for (long long idx = 0; idx < total; ++idx) {
            out[static_cast<std::size_t>(idx)] = entering_count_code(inc, table.codes[static_cast<std::size_t>(idx)], sub);
        }
        return out;
    }
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        out[static_cast<std::size_t>(idx)] = entering_count_code(inc, table.codes[static_cast<std::size_t>(idx)], sub);
    }
    return out;
}

long long scan_removal(const PartitionTable& table, std::span<const int> counts, std::span<const long> need,
                       std::span<const int> x, int removed, Exec exec)
{
    require_partition_table(table);
    const auto total = static_cast<long long>(table.size());
    if (exec == Exec::serial) {
        for (long long idx = 0; idx < total; ++idx) {
            const auto u = static_cast<std::size_t>(idx);
            const int e = counts[u] - removal_delta(x, removed, table.codes[u]);
            if (e < need[table.block_counts[u]]) return idx;
        }
        return -1;
    }
    long long best = LLONG_MAX;
#pragma omp parallel for reduction(min : best) schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        if (idx >= best) continue;
        const int e = counts[u] - removal_delta(x, removed, table.codes[u]);
        if (e < need[table.block_counts[u]]) best = idx;
    }
    return best == LLONG_MAX ? -1 : best;
}

void apply_removal(const PartitionTable& table, std::vector<int>& counts, std::span<const int> x, int removed,
                   Exec exec)
{
    require_partition_table(table);
    const auto total = static_cast<long long>(table.size());
    if (exec == Exec::serial) {
        for (long long idx = 0; idx < total; ++idx) {
            const auto u = static_cast<std::size_t>(idx);
            counts[u] -= removal_delta(x, removed, table.codes[u]);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        counts[u] -= removal_delta(x, removed, table.codes[u]);
    }
}

} // namespace rootpack
