#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rootpack/core.hpp"
#include "rootpack/partitions.hpp"

namespace rootpack {

/// Execution policy for the enumeration kernels. Both policies return identical results;
/// the parallel one reduces to the smallest violating table index.
enum class Exec { serial, parallel };

/// Flattened element list of a host structure. For directed hosts `verts` holds tails
/// and `heads` the head per element; for undirected hosts `heads` is empty.
struct Incidence {
    int n = 0;
    std::vector<int> offsets{0};
    std::vector<int> verts;
    std::vector<int> heads;
    bool directed = false;

    int size() const { return static_cast<int>(offsets.size()) - 1; }
    std::span<const int> element(int i) const
    {
        const auto b = static_cast<std::size_t>(offsets[static_cast<std::size_t>(i)]);
        const auto e = static_cast<std::size_t>(offsets[static_cast<std::size_t>(i) + 1]);
        return std::span<const int>(verts).subspan(b, e - b);
    }

    static Incidence of(const Graph& g);
    static Incidence of(const Hypergraph& g);
    static Incidence of(const Digraph& d);
    static Incidence of(const Dypergraph& d);
};

/// Per block count p (0..n), the least e(P) that satisfies both root-budget conditions:
///   ell'(0) - ell(K) + ell_p(K) + e >= h p   and   ell'_p(K) + e >= h p.
std::vector<long> condition_needs(const PackingSpec& spec, int n);

/// e(P) for one table entry.
int entering_count_code(const Incidence& inc, std::uint64_t code, bool subpartition);

struct ScanResult {
    long long first_violation = -1; // table index, -1 when every entry satisfies its need
    std::size_t scanned = 0;
};

/// First table entry with e(P) < need[|P|].
ScanResult scan_conditions(const PartitionTable& table, const Incidence& inc, std::span<const long> need, Exec exec);

/// e(P) for every table entry.
std::vector<int> entering_counts(const PartitionTable& table, const Incidence& inc, Exec exec);

/// First partition violating its need once vertex `removed` is dropped from the undirected
/// element with vertex set `x`; `counts` are the current e(P) values. Partition tables only.
long long scan_removal(const PartitionTable& table, std::span<const int> counts, std::span<const long> need,
                       std::span<const int> x, int removed, Exec exec);

/// Applies an accepted removal to `counts` in place.
void apply_removal(const PartitionTable& table, std::vector<int>& counts, std::span<const int> x, int removed,
                   Exec exec);

} // namespace rootpack
