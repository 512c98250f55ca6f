#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rootpack/core.hpp"

namespace rootpack {

/// Exhaustive packing search shared by every brute-force oracle.
///
/// Each element (edge, hyperedge or hyperarc) offers candidate trimmed pairs. A member is a
/// set of elements with one chosen pair each; the chosen pairs must form a forest (and, for
/// directed instances, a branching: distinct heads). A member's core is the set of vertices
/// touched by its pairs plus any extra isolated roots. The search accepts an assignment when
/// cores cover every vertex exactly h times and root counts meet the spec bounds.
struct OracleInstance {
    int n = 0;
    bool directed = false;
    std::vector<std::vector<std::pair<int, int>>> candidates; // per element: (u, v) or (tail, head)
    PackingSpec spec;

    static OracleInstance of(const Graph& g, const PackingSpec& spec);
    static OracleInstance of(const Hypergraph& g, const PackingSpec& spec);
    static OracleInstance of(const Dypergraph& d, const PackingSpec& spec);
};

struct OracleLimits {
    int max_elements = 10;
    int max_vertices = 8;
    int max_coverage = 20; // h * |V|
};

struct OracleMember {
    std::vector<int> elements;                // increasing
    std::vector<std::pair<int, int>> pairs;   // chosen pair per element
    VertexList core;
    VertexList roots; // one per component; for directed members the in-degree-0 core vertices
};

struct OracleSolution {
    std::vector<OracleMember> members;
};

struct OracleStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
};

/// First packing in search order, or nullopt. Throws CapExceeded beyond `limits`.
std::optional<OracleSolution> search_packing(const OracleInstance& inst, const OracleLimits& limits = {},
                                             OracleStats* stats = nullptr);

} // namespace rootpack
