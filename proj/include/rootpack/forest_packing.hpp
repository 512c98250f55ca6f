#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rootpack/conditions.hpp"
#include "rootpack/core.hpp"
#include "rootpack/oracles.hpp"

namespace rootpack {

using ForestPackResult = PackResult<RootedForestPacking>;

/// Partition condition for k spanning forests with ell(i) components:
/// ell_|P|(K) + e(P) >= k|P|, after checking |V| >= ell(i).
ConditionReport check_condition_25(const Graph& g, int k, std::span<const int> ell, const SolveOptions& opts = {});

/// Same question through the sum of truncated graphic matroids: r*(E) >= k|V| - ell(K).
bool check_condition_25_matroid(const Graph& g, int k, std::span<const int> ell);

/// r*(E) of the sum of graphic matroids truncated at |V| - ell(i).
int truncated_sum_rank(const Graph& g, std::span<const int> ell);

/// k edge-disjoint spanning forests, forest i with exactly ell(i) components; otherwise the
/// components of the matroid dual set as a violating partition. Throws SpecError unless
/// 1 <= ell(i) <= |V|.
ForestPackResult pack_spanning_forests(const Graph& g, int k, std::span<const int> ell);

/// Exchange-loop snapshot. `fixed` are promoted forests, `active` the rest; indices refer
/// to members sorted by decreasing root count.
struct RegularPackingState {
    std::vector<std::vector<int>> fixed;
    std::vector<std::vector<int>> active;
    int promoted = 0;
    std::vector<int> target; // sorted ell(1..k)
};

struct RegularPackingOptions {
    bool check_invariants = true;
    std::function<void(const RegularPackingState&, std::string_view event)> trace;
};

/// Conditions for an h-regular packing of k = |ell| forests with ell(i) components.
ConditionReport check_conditions_27(const Graph& g, int h, std::span<const int> ell, const SolveOptions& opts = {});

/// h-regular packing of k = |ell| forests, forest i with exactly ell(i) components.
ForestPackResult pack_regular_forests(const Graph& g, int h, std::span<const int> ell,
                                      const RegularPackingOptions& opts = {});

/// Conditions for the bounded problem: h|V| >= ell(0) plus both partition conditions.
/// Throws SpecError on an invalid spec.
ConditionReport check_conditions_28(const Graph& g, const PackingSpec& spec, const SolveOptions& opts = {});

/// Root counts ell* with ell(i) <= ell*(i) <= ell'(i) for the bounded packing.
/// If ell'(0) >= h|V| the counts are water-filled up to h|V|; otherwise ell is raised one unit
/// at a time until the total reaches ell'(0). `min_entering` (least e(P) per block count)
/// enables the per-step check of the lower condition for ell*.
std::vector<int> bounded_root_targets(const PackingSpec& spec, int n, std::span<const int> min_entering = {},
                                      bool check_invariants = true);

/// h-regular packing of k rooted forests with ell(i) <= |S_i| <= ell'(i) and
/// ell(0) <= sum |S_i| <= ell'(0). Conditions are prechecked when |V| is within the partition cap.
ForestPackResult pack_regular_forests_bounded(const Graph& g, const PackingSpec& spec, const SolveOptions& opts = {});

/// Exhaustive search for any packing meeting `spec`.
std::optional<RootedForestPacking> brute_force_regular_packing(const Graph& g, const PackingSpec& spec,
                                                               const OracleLimits& limits = {});

/// Connected components of (V, edges), ordered by smallest vertex.
Blocks forest_components(const Graph& g, std::span<const int> edges);

} // namespace rootpack
