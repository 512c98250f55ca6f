#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootpack/core.hpp"
#include "rootpack/kernels.hpp"
#include "rootpack/partitions.hpp"

namespace rootpack {

/// Named feasibility conditions. Partition conditions (with n = |P|, e = e(P)):
///   lower:  ell'(0) - ell(K) + ell_n(K) + e >= h n
///   upper:  ell'_n(K) + e >= h n
enum class Condition {
    member_roots_exceed_vertices, // ell(i) > |V|
    coverage_below_total_roots,   // h|V| < ell(0) (or ell(K) for fixed root counts)
    partition_lower,
    partition_upper,
    subpartition_lower,
    subpartition_upper,
    root_multiplicity,  // a vertex is a designated root of more than h members
    root_set_deficit,   // |S_X| + d^-(X) < h for some nonempty X
    constructive_failure,
};

std::string to_string(Condition c);

struct ConditionReport {
    bool holds = true;
    std::optional<Condition> violated;
    Blocks witness; // violating (sub)partition, or a vertex set for set conditions
    std::string detail;
    std::size_t scanned = 0;
};

struct SolveOptions {
    int partition_cap = EnumerationCaps{}.partitions;
    int subpartition_cap = 9;
    Exec exec = Exec::parallel;
    bool check_invariants = true;
};

/// Both partition conditions over every partition of V; the first violated entry in
/// enumeration order is reported, lower condition before upper.
ConditionReport scan_partition_conditions(const Incidence& inc, const PackingSpec& spec, int cap, Exec exec);

/// Both conditions over every subpartition of V.
ConditionReport scan_subpartition_conditions(const Incidence& inc, const PackingSpec& spec, int cap, Exec exec);

/// Which of the two conditions fails for a (sub)partition with `blocks` blocks and entering count `e`.
std::optional<Condition> failing_condition(const PackingSpec& spec, int blocks, long e, bool subpartition);

/// Value of each side for reports: "lhs < rhs" text.
std::string describe_failure(const PackingSpec& spec, int blocks, long e, Condition c);

struct Infeasibility {
    Condition condition;
    Blocks witness;
    std::string detail;
};

template <class Packing>
struct PackResult {
    std::optional<Packing> packing;
    std::optional<Infeasibility> infeasible;
    std::vector<int> root_counts; // per member, when feasible

    bool feasible() const { return packing.has_value(); }
};

/// Converts a failed report into an Infeasibility (report must not hold).
Infeasibility to_infeasibility(const ConditionReport& r);

} // namespace rootpack
