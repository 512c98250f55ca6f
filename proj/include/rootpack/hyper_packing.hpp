#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rootpack/conditions.hpp"
#include "rootpack/core.hpp"
#include "rootpack/oracles.hpp"

namespace rootpack {

struct TrimStep {
    int hyperedge = 0;
    int removed = 0;

    friend bool operator==(const TrimStep&, const TrimStep&) = default;
};

/// Record of a trimming: the final pair of every hyperedge and the removals that produced it.
struct TrimWitness {
    std::vector<std::pair<int, int>> pairs; // per hyperedge, u < v
    std::vector<TrimStep> removals;

    /// Applies the removals to `original`; the result is the trimmed graph as a hypergraph.
    Hypergraph replay(const Hypergraph& original) const;
};

struct TrimResult {
    Graph graph; // edge i is the trimmed form of hyperedge i
    TrimWitness witness;
    std::optional<Infeasibility> infeasible;

    bool ok() const { return !infeasible; }
};

/// Raised when the conditions hold but no vertex of some hyperedge can be removed.
class TrimmingContradiction : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// h|V| >= ell(0) plus both partition conditions on the hypergraph. Throws SpecError on an
/// invalid spec and CapExceeded above the partition cap.
ConditionReport check_conditions_33(const Hypergraph& hg, const PackingSpec& spec, const SolveOptions& opts = {});

/// Removes vertices from hyperedges of size >= 3 one at a time, keeping the conditions,
/// until every hyperedge is an edge. Hyperedges and candidate vertices are scanned by index.
TrimResult trim_to_graph(const Hypergraph& hg, const PackingSpec& spec, const SolveOptions& opts = {},
                         const std::function<void(const Hypergraph&, const TrimStep&)>& on_step = {});

using HyperforestPackResult = PackResult<RootedHyperforestPacking>;

/// Trim, pack the graph, then lift each edge to its hyperedge and orient every tree away from its root.
HyperforestPackResult pack_hyperforests(const Hypergraph& hg, const PackingSpec& spec, const SolveOptions& opts = {});

/// Checks hyperedge-disjointness, witness replay (an S_i-branching on each core), root bounds,
/// total roots and exact h-coverage of cores.
Diagnostics verify_hyperforest_packing(const Hypergraph& hg, const RootedHyperforestPacking& packing,
                                       const PackingSpec& spec);

/// Shared verifier for undirected and directed members; `trim_problem` returns an empty string
/// when a trim choice is admissible for its element.
Diagnostics verify_branching_packing(int n, int elements, const std::function<std::string(const TrimChoice&)>& trim_problem,
                                     const RootedHyperforestPacking& packing, const PackingSpec& spec);

/// Exhaustive search for trims (tail, head inside each hyperedge) turning the member into an
/// S-branching whose core is exactly `core`.
std::optional<std::vector<TrimChoice>> find_hyperforest_witness(const Hypergraph& hg, std::span<const int> member,
                                                                std::span<const int> roots, std::span<const int> core);

/// Exhaustive hyperforest packing search.
std::optional<RootedHyperforestPacking> brute_force_hyperforest_packing(const Hypergraph& hg, const PackingSpec& spec,
                                                                        const OracleLimits& limits = {});

/// Orients a forest given by (element, pair) lists away from `roots`, one root per component.
std::vector<TrimChoice> orient_from_roots(int n, std::span<const int> elements,
                                          std::span<const std::pair<int, int>> pairs, std::span<const int> roots);

} // namespace rootpack
