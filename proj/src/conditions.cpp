#include "rootpack/conditions.hpp"

#include <fmt/format.h>

namespace rootpack {

std::string to_string(Condition c)
{
    switch (c) {
    case Condition::member_roots_exceed_vertices: return "member-roots-exceed-vertices";
    case Condition::coverage_below_total_roots: return "coverage-below-total-roots";
    case Condition::partition_lower: return "partition-lower";
    case Condition::partition_upper: return "partition-upper";
    case Condition::subpartition_lower: return "subpartition-lower";
    case Condition::subpartition_upper: return "subpartition-upper";
    case Condition::root_multiplicity: return "root-multiplicity";
    case Condition::root_set_deficit: return "root-set-deficit";
    case Condition::constructive_failure: return "constructive-failure";
    }
    return "unknown";
}

namespace {

long lower_value(const PackingSpec& spec, int blocks, long e)
{
    return spec.upper[0] - spec.lower_sum() + capped_sum(members_of(spec.lower), blocks) + e;
}

long upper_value(const PackingSpec& spec, int blocks, long e)
{
    return capped_sum(members_of(spec.upper), blocks) + e;
}

ConditionReport scan(const Incidence& inc, const PackingSpec& spec, int cap, Exec exec, PartitionTable::Kind kind)
{
    const auto table = PartitionTable::get(kind, inc.n, cap);
    const auto need = condition_needs(spec, inc.n);
    const auto res = scan_conditions(*table, inc, need, exec);
    ConditionReport r;
    r.scanned = res.scanned;
    if (res.first_violation < 0) return r;
    const auto idx = static_cast<std::size_t>(res.first_violation);
    const bool sub = kind == PartitionTable::Kind::subpartitions;
    const int blocks = table->block_counts[idx];
    const long e = entering_count_code(inc, table->codes[idx], sub);
    r.holds = false;
    r.violated = failing_condition(spec, blocks, e, sub);
    r.witness = table->blocks_at(idx);
    r.detail = describe_failure(spec, blocks, e, *r.violated);
    return r;
}

} // namespace

std::optional<Condition> failing_condition(const PackingSpec& spec, int blocks, long e, bool subpartition)
{
    const long hp = static_cast<long>(spec.h) * blocks;
    if (lower_value(spec, blocks, e) < hp) return subpartition ? Condition::subpartition_lower : Condition::partition_lower;
    if (upper_value(spec, blocks, e) < hp) return subpartition ? Condition::subpartition_upper : Condition::partition_upper;
    return std::nullopt;
}

std::string describe_failure(const PackingSpec& spec, int blocks, long e, Condition c)
{
    const long hp = static_cast<long>(spec.h) * blocks;
    const bool lower = c == Condition::partition_lower || c == Condition::subpartition_lower;
    const long lhs = lower ? lower_value(spec, blocks, e) : upper_value(spec, blocks, e);
    return fmt::format("{} blocks, {} entering: {} < {}", blocks, e, lhs, hp);
}

ConditionReport scan_partition_conditions(const Incidence& inc, const PackingSpec& spec, int cap, Exec exec)
{
    return scan(inc, spec, cap, exec, PartitionTable::Kind::partitions);
}

ConditionReport scan_subpartition_conditions(const Incidence& inc, const PackingSpec& spec, int cap, Exec exec)
{
    return scan(inc, spec, cap, exec, PartitionTable::Kind::subpartitions);
}

Infeasibility to_infeasibility(const ConditionReport& r)
{
    if (r.holds || !r.violated) throw std::logic_error("report holds; nothing to convert");
    return {*r.violated, r.witness, r.detail};
}

} // namespace rootpack
