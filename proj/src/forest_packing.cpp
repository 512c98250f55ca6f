#include "rootpack/forest_packing.hpp"

#include <algorithm>
#include <climits>
#include <fmt/format.h>
#include <map>
#include <numeric>

#include "rootpack/kernels.hpp"
#include "rootpack/matroids.hpp"
#include "rootpack/partitions.hpp"

namespace rootpack {

Blocks forest_components(const Graph& g, std::span<const int> edges)
{
    UnionFind uf(g.vertex_count());
    for (int e : edges) uf.unite(g.edge(e).u, g.edge(e).v);
    std::map<int, VertexList> by_root;
    for (int v = 0; v < g.vertex_count(); ++v) by_root[uf.find(v)].push_back(v);
    Blocks out;
    for (auto& [_, b] : by_root) out.push_back(std::move(b));
    std::sort(out.begin(), out.end(), [](const VertexList& a, const VertexList& b) { return a.front() < b.front(); });
    return out;
}

namespace {

void require_member_bounds(int k, std::span<const int> ell, bool check_upper, int n)
{
    if (k < 1 || static_cast<int>(ell.size()) != k) {
        throw SpecError(fmt::format("expected {} root counts, got {}", k, ell.size()));
    }
    for (std::size_t i = 0; i < ell.size(); ++i) {
        if (ell[i] < 1) throw SpecError(fmt::format("root count of member {} must be positive", i + 1));
        if (check_upper && ell[i] > n) {
            throw SpecError(fmt::format("member {} needs {} components but |V| = {}", i + 1, ell[i], n));
        }
    }
}

std::optional<int> member_above_vertices(std::span<const int> ell, int n)
{
    for (std::size_t i = 0; i < ell.size(); ++i) {
        if (ell[i] > n) return static_cast<int>(i) + 1;
    }
    return std::nullopt;
}

VertexList all_vertices(int n)
{
    VertexList v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

RootedForest spanning_member(const Graph& g, std::vector<int> edges)
{
    std::sort(edges.begin(), edges.end());
    RootedForest f;
    for (const auto& b : forest_components(g, edges)) f.roots.push_back(b.front());
    f.edges = std::move(edges);
    f.support = all_vertices(g.vertex_count());
    return f;
}

int components_of(const Graph& g, std::span<const int> edges)
{
    UnionFind uf(g.vertex_count());
    for (int e : edges) uf.unite(g.edge(e).u, g.edge(e).v);
    return uf.component_count();
}

// Infeasibility from a partition that must violate `spec`; throws if it does not.
Infeasibility partition_witness(const Graph& g, Blocks blocks, const PackingSpec& spec, std::string_view source)
{
    const auto p = Partition::from_blocks(g.vertex_count(), std::move(blocks));
    const long e = entering_count(g, p);
    const auto failing = failing_condition(spec, p.size(), e, false);
    if (!failing) {
        throw std::logic_error(fmt::format("{} produced a partition that satisfies the conditions", source));
    }
    return {*failing, p.blocks, describe_failure(spec, p.size(), e, *failing)};
}

} // namespace

int truncated_sum_rank(const Graph& g, std::span<const int> ell)
{
    const int n = g.vertex_count();
    auto graphic = std::make_shared<GraphicMatroid>(g);
    MatroidList ms;
    for (int l : ell) ms.push_back(std::make_shared<TruncatedMatroid>(graphic, std::max(0, n - l)));
    std::vector<int> all(static_cast<std::size_t>(g.edge_count()));
    std::iota(all.begin(), all.end(), 0);
    return matroid_partition(ms, all).size();
}

ConditionReport check_condition_25(const Graph& g, int k, std::span<const int> ell, const SolveOptions& opts)
{
    require_member_bounds(k, ell, false, g.vertex_count());
    if (auto i = member_above_vertices(ell, g.vertex_count())) {
        ConditionReport r;
        r.holds = false;
        r.violated = Condition::member_roots_exceed_vertices;
        r.detail = fmt::format("member {} needs {} components but |V| = {}", *i, ell[static_cast<std::size_t>(*i - 1)],
                               g.vertex_count());
        return r;
    }
    const auto spec = PackingSpec::spanning({ell.begin(), ell.end()});
    return scan_partition_conditions(Incidence::of(g), spec, opts.partition_cap, opts.exec);
}

bool check_condition_25_matroid(const Graph& g, int k, std::span<const int> ell)
{
    require_member_bounds(k, ell, false, g.vertex_count());
    if (member_above_vertices(ell, g.vertex_count())) return false;
    const long target = static_cast<long>(k) * g.vertex_count() - std::accumulate(ell.begin(), ell.end(), 0L);
    return truncated_sum_rank(g, ell) >= target;
}

ForestPackResult pack_spanning_forests(const Graph& g, int k, std::span<const int> ell)
{
    const int n = g.vertex_count();
    require_member_bounds(k, ell, true, n);
    auto graphic = std::make_shared<GraphicMatroid>(g);
    MatroidList ms;
    for (int l : ell) ms.push_back(std::make_shared<TruncatedMatroid>(graphic, n - l));
    std::vector<int> all(static_cast<std::size_t>(g.edge_count()));
    std::iota(all.begin(), all.end(), 0);
    const auto res = matroid_partition(ms, all);

    const long target = static_cast<long>(k) * n - std::accumulate(ell.begin(), ell.end(), 0L);
    ForestPackResult out;
    if (res.size() == target) {
        // Every class is then a forest with exactly |V| - ell(i) edges.
        RootedForestPacking packing;
        for (int i = 0; i < k; ++i) {
            auto member = spanning_member(g, res.classes[static_cast<std::size_t>(i)]);
            if (static_cast<int>(member.roots.size()) != ell[static_cast<std::size_t>(i)]) {
                throw std::logic_error(fmt::format("class {} has {} components, expected {}", i + 1, member.roots.size(),
                                                   ell[static_cast<std::size_t>(i)]));
            }
            packing.members.push_back(std::move(member));
        }
        out.packing = std::move(packing);
        out.root_counts.assign(ell.begin(), ell.end());
        return out;
    }
    // The components of the dual set give a partition with too few entering edges.
    out.infeasible = partition_witness(g, forest_components(g, res.dual), PackingSpec::spanning({ell.begin(), ell.end()}),
                                       "matroid dual set");
    return out;
}

ConditionReport check_conditions_27(const Graph& g, int h, std::span<const int> ell, const SolveOptions& opts)
{
    const int n = g.vertex_count();
    if (h < 1) throw SpecError("h must be positive");
    require_member_bounds(static_cast<int>(ell.size()), ell, false, n);
    ConditionReport r;
    if (auto i = member_above_vertices(ell, n)) {
        r.holds = false;
        r.violated = Condition::member_roots_exceed_vertices;
        r.detail = fmt::format("member {} needs {} components but |V| = {}", *i, ell[static_cast<std::size_t>(*i - 1)], n);
        return r;
    }
    const long total = std::accumulate(ell.begin(), ell.end(), 0L);
    if (static_cast<long>(h) * n < total) {
        r.holds = false;
        r.violated = Condition::coverage_below_total_roots;
        r.detail = fmt::format("h|V| = {} < {} total components", static_cast<long>(h) * n, total);
        return r;
    }
    return scan_partition_conditions(Incidence::of(g), PackingSpec::exact(h, {ell.begin(), ell.end()}), opts.partition_cap,
                                     opts.exec);
}

namespace {

struct ExchangeRun {
    const Graph& g;
    int n;
    int h;
    std::vector<int> target; // sorted, 1-based: target[0] = |V|
    std::vector<std::vector<int>> forests;
    int promoted = 0;
    const RegularPackingOptions& opts;

    int comps(int f) const { return n - static_cast<int>(forests[static_cast<std::size_t>(f)].size()); }

    long active_target_sum() const
    {
        long s = 0;
        for (std::size_t j = static_cast<std::size_t>(promoted) + 1; j < target.size(); ++j) s += target[j];
        return s;
    }

    int min_active() const
    {
        int best = promoted;
        for (int f = promoted + 1; f < h; ++f) {
            if (comps(f) < comps(best)) best = f;
        }
        return best;
    }

    void report(std::string_view event) const
    {
        if (!opts.trace) return;
        RegularPackingState s;
        s.fixed.assign(forests.begin(), forests.begin() + promoted);
        s.active.assign(forests.begin() + promoted, forests.end());
        s.promoted = promoted;
        s.target.assign(target.begin() + 1, target.end());
        opts.trace(s, event);
    }

    void check_state() const
    {
        if (!opts.check_invariants) return;
        std::vector<int> owner(static_cast<std::size_t>(g.edge_count()), -1);
        for (int f = 0; f < h; ++f) {
            for (int e : forests[static_cast<std::size_t>(f)]) {
                if (owner[static_cast<std::size_t>(e)] != -1) throw std::logic_error(fmt::format("edge {} in two forests", e));
                owner[static_cast<std::size_t>(e)] = f;
            }
            if (components_of(g, forests[static_cast<std::size_t>(f)]) != comps(f)) {
                throw std::logic_error(fmt::format("forest {} contains a cycle", f + 1));
            }
        }
        for (int f = 0; f < promoted; ++f) {
            if (comps(f) != target[static_cast<std::size_t>(f) + 1]) {
                throw std::logic_error(fmt::format("promoted forest {} has {} components, expected {}", f + 1, comps(f),
                                                   target[static_cast<std::size_t>(f) + 1]));
            }
        }
        long s = 0;
        for (int f = promoted; f < h; ++f) s += comps(f);
        if (s != active_target_sum()) {
            throw std::logic_error(fmt::format("active component total is {} (expected {})", s, active_target_sum()));
        }
        if (promoted < h && comps(min_active()) < target[static_cast<std::size_t>(promoted) + 1]) {
            throw std::logic_error("least active component count fell below the next target");
        }
    }

    // Moves the smallest active forest to the promoted block or transfers one edge into it;
    // returns false when neither applies.
    bool step()
    {
        const int fmin = min_active();
        if (comps(fmin) == target[static_cast<std::size_t>(promoted) + 1]) {
            std::swap(forests[static_cast<std::size_t>(fmin)], forests[static_cast<std::size_t>(promoted)]);
            ++promoted;
            report("promote");
            return true;
        }
        UnionFind uf(n);
        for (int e : forests[static_cast<std::size_t>(fmin)]) uf.unite(g.edge(e).u, g.edge(e).v);
        for (int f = promoted; f < h; ++f) {
            if (f == fmin) continue;
            auto& edges = forests[static_cast<std::size_t>(f)];
            for (std::size_t idx = 0; idx < edges.size(); ++idx) {
                const int a = edges[idx];
                if (uf.same(g.edge(a).u, g.edge(a).v)) continue;
                edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(idx));
                auto& dst = forests[static_cast<std::size_t>(fmin)];
                dst.insert(std::lower_bound(dst.begin(), dst.end(), a), a);
                report("exchange");
                return true;
            }
        }
        return false;
    }
};

} // namespace

ForestPackResult pack_regular_forests(const Graph& g, int h, std::span<const int> ell, const RegularPackingOptions& opts)
{
    const int n = g.vertex_count();
    const int k = static_cast<int>(ell.size());
    if (h < 1) throw SpecError("h must be positive");
    require_member_bounds(k, ell, false, n);
    const auto spec = PackingSpec::exact(h, {ell.begin(), ell.end()});

    ForestPackResult out;
    if (auto i = member_above_vertices(ell, n)) {
        out.infeasible = Infeasibility{Condition::member_roots_exceed_vertices, {},
                                       fmt::format("member {} needs {} components but |V| = {}", *i,
                                                   ell[static_cast<std::size_t>(*i - 1)], n)};
        return out;
    }
    const long total = spec.lower_sum();
    if (static_cast<long>(h) * n < total) {
        out.infeasible = Infeasibility{Condition::coverage_below_total_roots, {},
                                       fmt::format("h|V| = {} < {} total components", static_cast<long>(h) * n, total)};
        return out;
    }
    if (k < h) {
        out.infeasible = partition_witness(g, {all_vertices(n)}, spec, "member count");
        return out;
    }
    if (k == h) return pack_spanning_forests(g, k, ell);

    // Work with counts sorted in decreasing order; order[j] is the original member index.
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return ell[static_cast<std::size_t>(a)] > ell[static_cast<std::size_t>(b)]; });
    std::vector<int> target{n};
    for (int j : order) target.push_back(ell[static_cast<std::size_t>(j)]);

    auto tail_sum = [&](int from) {
        long s = 0;
        for (int j = from + 1; j <= k; ++j) s += target[static_cast<std::size_t>(j)];
        return s;
    };
    int split = 0;
    for (int i = 0; i < h; ++i) {
        if (static_cast<long>(h - i) * target[static_cast<std::size_t>(i)] >= tail_sum(i)) split = i;
    }
    const long rest = tail_sum(split);
    const int slots = h - split;
    const auto even = static_cast<int>((rest + slots - 1) / slots);
    const auto high = static_cast<int>(rest - static_cast<long>(slots) * (even - 1));
    std::vector<int> spanning_counts;
    for (int j = 1; j <= split; ++j) spanning_counts.push_back(target[static_cast<std::size_t>(j)]);
    for (int s = 0; s < slots; ++s) spanning_counts.push_back(s < high ? even : even - 1);

    auto inner = pack_spanning_forests(g, h, spanning_counts);
    if (!inner.feasible()) {
        out.infeasible = partition_witness(g, inner.infeasible->witness, spec, "spanning packing of evenly spread counts");
        return out;
    }

    ExchangeRun run{g, n, h, target, {}, split, opts};
    for (auto& f : inner.packing->members) run.forests.push_back(f.edges);
    run.check_state();
    run.report("start");
    while (run.step()) run.check_state();

    // Split the components of the active forests among members promoted+1..k.
    const int fmin = run.min_active();
    const auto min_blocks = forest_components(g, run.forests[static_cast<std::size_t>(fmin)]);
    const int p = static_cast<int>(min_blocks.size());
    std::vector<int> block_of(static_cast<std::size_t>(n));
    for (int b = 0; b < p; ++b) {
        for (int v : min_blocks[static_cast<std::size_t>(b)]) block_of[static_cast<std::size_t>(v)] = b;
    }
    struct Piece {
        int forest;
        int block;
        VertexList vertices;
        std::vector<int> edges;
    };
    std::vector<Piece> pieces;
    for (int f = run.promoted; f < h; ++f) {
        const auto& edges = run.forests[static_cast<std::size_t>(f)];
        for (auto& comp : forest_components(g, edges)) {
            const int b = block_of[static_cast<std::size_t>(comp.front())];
            for (int v : comp) {
                if (block_of[static_cast<std::size_t>(v)] != b) {
                    throw std::logic_error("a component crosses the blocks of the least-component forest");
                }
            }
            Piece piece{f - run.promoted, b, std::move(comp), {}};
            for (int e : edges) {
                if (std::binary_search(piece.vertices.begin(), piece.vertices.end(), g.edge(e).u)) piece.edges.push_back(e);
            }
            pieces.push_back(std::move(piece));
        }
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        if (a.forest != b.forest) return a.forest < b.forest;
        if (a.block != b.block) return a.block < b.block;
        return a.vertices.front() < b.vertices.front();
    });
    if (static_cast<long>(pieces.size()) != run.active_target_sum()) {
        throw std::logic_error("active components do not match the remaining targets");
    }

    std::vector<RootedForest> sorted_members;
    for (int j = 0; j < run.promoted; ++j) sorted_members.push_back(spanning_member(g, run.forests[static_cast<std::size_t>(j)]));
    std::size_t next = 0;
    for (int j = run.promoted + 1; j <= k; ++j) {
        const int want = target[static_cast<std::size_t>(j)];
        if (opts.check_invariants && want >= p) throw std::logic_error("window longer than the block count");
        RootedForest member;
        for (int c = 0; c < want; ++c, ++next) {
            const auto& piece = pieces[next];
            member.edges.insert(member.edges.end(), piece.edges.begin(), piece.edges.end());
            member.support.insert(member.support.end(), piece.vertices.begin(), piece.vertices.end());
            member.roots.push_back(piece.vertices.front());
        }
        std::sort(member.edges.begin(), member.edges.end());
        member.support = sorted_unique(std::move(member.support));
        std::sort(member.roots.begin(), member.roots.end());
        if (opts.check_invariants && forest_shape(g, member.edges, member.support).components != want) {
            throw std::logic_error(fmt::format("member built from window {} has overlapping components", j));
        }
        sorted_members.push_back(std::move(member));
    }

    RootedForestPacking packing;
    packing.members.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        packing.members[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] =
            std::move(sorted_members[static_cast<std::size_t>(j)]);
    }
    if (opts.check_invariants) {
        const auto diag = verify_regular_forest_packing(g, packing, spec);
        if (!diag.ok()) throw std::logic_error("regular packing failed verification: " + diag.problems.front());
    }
    out.packing = std::move(packing);
    out.root_counts.assign(ell.begin(), ell.end());
    return out;
}

ConditionReport check_conditions_28(const Graph& g, const PackingSpec& spec, const SolveOptions& opts)
{
    const int n = g.vertex_count();
    require_valid_spec(spec, n);
    if (static_cast<long>(spec.h) * n < spec.lower[0]) {
        ConditionReport r;
        r.holds = false;
        r.violated = Condition::coverage_below_total_roots;
        r.detail = fmt::format("h|V| = {} < ell(0) = {}", static_cast<long>(spec.h) * n, spec.lower[0]);
        return r;
    }
    return scan_partition_conditions(Incidence::of(g), spec, opts.partition_cap, opts.exec);
}

std::vector<int> bounded_root_targets(const PackingSpec& spec, int n, std::span<const int> min_entering,
                                      bool check_invariants)
{
    const auto lower = members_of(spec.lower);
    const auto upper = members_of(spec.upper);
    std::vector<int> star(lower.begin(), lower.end());
    const long hn = static_cast<long>(spec.h) * n;

    if (spec.upper[0] >= hn) {
        long remaining = hn - spec.lower_sum();
        for (std::size_t i = 0; i < star.size() && remaining > 0; ++i) {
            const long add = std::min<long>(upper[i] - star[i], remaining);
            star[i] += static_cast<int>(add);
            remaining -= add;
        }
        if (remaining != 0) throw std::logic_error("upper bounds cannot absorb h|V| roots");
        return star;
    }

    auto sum = [&] { return std::accumulate(star.begin(), star.end(), 0L); };
    auto exceeds_upper = [&](int p) {
        return spec.upper[0] - sum() + capped_sum(star, p) > capped_sum(upper, p);
    };
    while (sum() < spec.upper[0]) {
        int first_fail = 0;
        while (first_fail <= n && exceeds_upper(first_fail)) ++first_fail;
        const int pstar = first_fail - 1;
        if (pstar < 0 || pstar >= n) throw std::logic_error("no threshold block count for the root-count increment");
        std::size_t j = 0;
        while (j < star.size() && !(star[j] <= pstar && pstar < upper[j])) ++j;
        if (j == star.size()) throw std::logic_error(fmt::format("no member can grow at threshold {}", pstar));
        ++star[j];
        if (!check_invariants) continue;
        if (sum() > spec.upper[0]) throw std::logic_error("root counts exceed ell'(0)");
        for (std::size_t i = 0; i < star.size(); ++i) {
            if (star[i] < lower[i] || star[i] > upper[i]) throw std::logic_error("root count left its bounds");
        }
        for (std::size_t p = 0; p < min_entering.size(); ++p) {
            if (min_entering[p] == INT_MAX) continue;
            const long lhs = spec.upper[0] - sum() + capped_sum(star, static_cast<int>(p)) + min_entering[p];
            if (lhs < static_cast<long>(spec.h) * static_cast<long>(p)) {
                throw std::logic_error(fmt::format("lower condition for the raised counts fails at {} blocks", p));
            }
        }
    }
    return star;
}

ForestPackResult pack_regular_forests_bounded(const Graph& g, const PackingSpec& spec, const SolveOptions& opts)
{
    const int n = g.vertex_count();
    require_valid_spec(spec, n);
    ForestPackResult out;
    const long hn = static_cast<long>(spec.h) * n;
    if (hn < spec.lower[0]) {
        out.infeasible = Infeasibility{Condition::coverage_below_total_roots, {},
                                       fmt::format("h|V| = {} < ell(0) = {}", hn, spec.lower[0])};
        return out;
    }

    std::vector<int> min_entering;
    bool prechecked = false;
    if (n <= opts.partition_cap) {
        const auto inc = Incidence::of(g);
        const auto report = scan_partition_conditions(inc, spec, opts.partition_cap, opts.exec);
        if (!report.holds) {
            out.infeasible = to_infeasibility(report);
            return out;
        }
        prechecked = true;
        if (opts.check_invariants) {
            const auto table = PartitionTable::get(PartitionTable::Kind::partitions, n, opts.partition_cap);
            const auto counts = entering_counts(*table, inc, opts.exec);
            min_entering.assign(static_cast<std::size_t>(n) + 1, INT_MAX);
            for (std::size_t i = 0; i < counts.size(); ++i) {
                auto& slot = min_entering[table->block_counts[i]];
                slot = std::min(slot, counts[i]);
            }
        }
    }

    const auto star = bounded_root_targets(spec, n, min_entering, opts.check_invariants);

    if (spec.upper[0] >= hn) {
        // h edgeless spanning forests; singletons ordered by (forest, vertex), consecutive runs per member.
        RootedForestPacking packing;
        long next = 0;
        for (int count : star) {
            RootedForest member;
            for (int c = 0; c < count; ++c, ++next) member.roots.push_back(static_cast<int>(next % n));
            std::sort(member.roots.begin(), member.roots.end());
            member.support = member.roots;
            packing.members.push_back(std::move(member));
        }
        out.packing = std::move(packing);
    } else {
        RegularPackingOptions inner_opts;
        inner_opts.check_invariants = opts.check_invariants;
        auto inner = pack_regular_forests(g, spec.h, star, inner_opts);
        if (!inner.feasible()) {
            if (prechecked) throw std::logic_error("conditions hold but the construction failed");
            const auto& w = *inner.infeasible;
            if (w.witness.empty()) {
                out.infeasible = Infeasibility{Condition::constructive_failure, {}, w.detail};
            } else {
                out.infeasible = partition_witness(g, w.witness, spec, "regular packing");
            }
            return out;
        }
        out.packing = std::move(inner.packing);
    }
    if (opts.check_invariants) {
        const auto diag = verify_regular_forest_packing(g, *out.packing, spec);
        if (!diag.ok()) throw std::logic_error("bounded packing failed verification: " + diag.problems.front());
    }
    out.root_counts = star;
    return out;
}

std::optional<RootedForestPacking> brute_force_regular_packing(const Graph& g, const PackingSpec& spec,
                                                               const OracleLimits& limits)
{
    const auto sol = search_packing(OracleInstance::of(g, spec), limits);
    if (!sol) return std::nullopt;
    RootedForestPacking packing;
    for (const auto& m : sol->members) packing.members.push_back({m.elements, m.core, m.roots});
    return packing;
}

} // namespace rootpack
