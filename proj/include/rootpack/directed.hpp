#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rootpack/conditions.hpp"
#include "rootpack/core.hpp"
#include "rootpack/oracles.hpp"
#include "rootpack/partitions.hpp"

namespace rootpack {

/// h|V| >= ell(0) plus both conditions over every subpartition of V. Throws SpecError on an
/// invalid spec and CapExceeded above `opts.subpartition_cap` vertices.
ConditionReport check_subpartition_conditions(const Dypergraph& d, const PackingSpec& spec, const SolveOptions& opts = {});
ConditionReport check_subpartition_conditions(const Digraph& d, const PackingSpec& spec, const SolveOptions& opts = {});

/// Number of hyperarcs entering the vertex set `mask` (head inside, some tail outside).
int in_degree(const Dypergraph& d, std::uint32_t mask);

/// Degree-constrained simple bipartite graph problem between S = {0..s-1} and T = {0..t-1}:
/// find E with |Gamma(Y)| >= p(Y) for Y subset of T, f <= deg <= g, alpha <= |E| <= beta.
struct BipartiteRealizationInstance {
    int s = 0;
    int t = 0;
    std::vector<int> f_s, g_s;
    std::vector<int> f_t, g_t;
    long alpha = 0;
    long beta = 0;
    std::function<long(std::uint32_t)> p; // on vertex masks of T; p(0) = 0

    /// S = members, T = V, f = 0 and g = h on T, [ell(i), ell'(i)] on s_i, totals [ell(0), ell'(0)],
    /// p(Y) = h - d^-(Y).
    static BipartiteRealizationInstance from_packing(const Dypergraph& d, const PackingSpec& spec);
};

struct BipartiteReport {
    bool holds = true;
    int inequality = 0;    // 1..4 when violated
    std::vector<int> x;    // subset of S
    VertexList y;          // subset of T
    Blocks blocks;         // subpartition of T - Y
    long lhs = 0;
    long rhs = 0;
    std::size_t scanned = 0;
};

/// The four inequalities over every X subset of S, Y subset of T and subpartition of T - Y.
/// Throws CapExceeded when |S| + |T| > 10.
BipartiteReport check_bfbg_conditions(const BipartiteRealizationInstance& inst);

/// Exhaustive search; neighbor set (mask over T) per vertex of S. Asserts agreement with
/// check_bfbg_conditions. Throws CapExceeded when |S| * |T| > 20.
std::optional<std::vector<std::uint32_t>> realize_bipartite(const BipartiteRealizationInstance& inst);

/// True iff p(X) + p(Y) <= p(X & Y) + p(X | Y) whenever X and Y intersect.
bool is_intersecting_supermodular(int t, const std::function<long(std::uint32_t)>& p);

/// |S_X| + d^-(X) >= h for nonempty X and |S_v| <= h, for a fixed family of root sets.
ConditionReport check_root_family_conditions(const Dypergraph& d, const std::vector<VertexList>& roots, int h);

/// h-regular packing of S_i-hyperbranchings with the given root sets by exhaustive search.
/// Asserts agreement with check_root_family_conditions. Throws CapExceeded above 8
/// hyperarcs or 6 vertices.
std::optional<HyperbranchingPacking> pack_hyperbranchings_exhaustive(const Dypergraph& d,
                                                                     const std::vector<VertexList>& roots, int h);

using BranchingPackResult = PackResult<HyperbranchingPacking>;

/// Bounded h-regular hyperbranching packing: translate to the bipartite problem, realize it,
/// read root sets off the neighbor sets and pack for those roots.
BranchingPackResult pack_branchings_bounded_desk(const Dypergraph& d, const PackingSpec& spec,
                                                 const SolveOptions& opts = {});

/// Replays every trim (tail of the hyperarc -> its head), then checks disjointness,
/// branching shape, root bounds, total roots and exact h-coverage of cores.
Diagnostics verify_hyperbranching_packing(const Dypergraph& d, const HyperbranchingPacking& packing,
                                          const PackingSpec& spec);

/// Exhaustive search over packings, independent of the bipartite route.
std::optional<HyperbranchingPacking> brute_force_hyperbranching_packing(const Dypergraph& d, const PackingSpec& spec,
                                                                        const OracleLimits& limits = {});

/// Recomputes the per-member entering bounds of a packing on one subpartition and checks
/// the inequalities that chain them to both subpartition conditions.
Diagnostics check_packing_entering_bounds(const Dypergraph& d, const HyperbranchingPacking& packing,
                                          const PackingSpec& spec, const Subpartition& p);

/// Disjoint union of directed paths with the given arc counts, asking for a 1-regular packing
/// of 2 branchings with half the total arcs each.
struct PartitionReduction {
    Digraph digraph;
    int h = 1;
    int k = 2;
    int ell = 0;
    bool odd_total = false; // total is odd: the instance is negative by construction
};

PartitionReduction reduce_partition_instance(const std::vector<int>& weights);

/// Subset of indices with half the total weight, if any. Throws CapExceeded above 24 weights.
std::optional<std::vector<int>> solve_partition(const std::vector<int>& weights);

/// Whether d has an h-regular packing of k branchings with exactly `ell` arcs each.
/// Throws CapExceeded above 14 arcs or k > 4.
bool has_regular_branching_packing_with_arcs(const Digraph& d, int h, int k, int ell);

} // namespace rootpack
