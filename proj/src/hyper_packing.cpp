#include "rootpack/hyper_packing.hpp"

#include <algorithm>
#include <deque>
#include <fmt/format.h>
#include <set>

#include "rootpack/forest_packing.hpp"
#include "rootpack/kernels.hpp"
#include "rootpack/partitions.hpp"

namespace rootpack {

Hypergraph TrimWitness::replay(const Hypergraph& original) const
{
    auto edges = original.hyperedges();
    for (const auto& step : removals) {
        auto& x = edges.at(static_cast<std::size_t>(step.hyperedge));
        auto it = std::find(x.begin(), x.end(), step.removed);
        if (it == x.end()) {
            throw std::invalid_argument(fmt::format("replay: vertex {} not in hyperedge {}", step.removed, step.hyperedge));
        }
        x.erase(it);
    }
    return Hypergraph(original.vertex_count(), std::move(edges));
}

ConditionReport check_conditions_33(const Hypergraph& hg, const PackingSpec& spec, const SolveOptions& opts)
{
    const int n = hg.vertex_count();
    require_valid_spec(spec, n);
    if (static_cast<long>(spec.h) * n < spec.lower[0]) {
        ConditionReport r;
        r.holds = false;
        r.violated = Condition::coverage_below_total_roots;
        r.detail = fmt::format("h|V| = {} < ell(0) = {}", static_cast<long>(spec.h) * n, spec.lower[0]);
        return r;
    }
    return scan_partition_conditions(Incidence::of(hg), spec, opts.partition_cap, opts.exec);
}

TrimResult trim_to_graph(const Hypergraph& hg, const PackingSpec& spec, const SolveOptions& opts,
                         const std::function<void(const Hypergraph&, const TrimStep&)>& on_step)
{
    const int n = hg.vertex_count();
    TrimResult out;
    const auto initial = check_conditions_33(hg, spec, opts);
    if (!initial.holds) {
        out.infeasible = to_infeasibility(initial);
        return out;
    }

    const auto table = PartitionTable::get(PartitionTable::Kind::partitions, n, opts.partition_cap);
    const auto need = condition_needs(spec, n);
    auto counts = entering_counts(*table, Incidence::of(hg), opts.exec);
    auto edges = hg.hyperedges();

    for (;;) {
        auto it = std::find_if(edges.begin(), edges.end(), [](const VertexList& x) { return x.size() >= 3; });
        if (it == edges.end()) break;
        const int idx = static_cast<int>(it - edges.begin());
        auto& x = *it;
        bool removed = false;
        for (int v : VertexList(x)) {
            if (scan_removal(*table, counts, need, x, v, opts.exec) >= 0) continue;
            apply_removal(*table, counts, x, v, opts.exec);
            x.erase(std::find(x.begin(), x.end(), v));
            const TrimStep step{idx, v};
            out.witness.removals.push_back(step);
            removed = true;
            if (opts.check_invariants || on_step) {
                const Hypergraph current(n, edges);
                if (opts.check_invariants &&
                    !scan_partition_conditions(Incidence::of(current), spec, opts.partition_cap, opts.exec).holds) {
                    throw std::logic_error(fmt::format("removing {} from hyperedge {} broke the conditions", v, idx));
                }
                if (on_step) on_step(current, step);
            }
            break;
        }
        if (!removed) {
            throw TrimmingContradiction(
                fmt::format("conditions hold but no vertex of hyperedge {} can be removed", idx));
        }
    }

    std::vector<Edge> graph_edges;
    for (const auto& x : edges) {
        out.witness.pairs.emplace_back(x[0], x[1]);
        graph_edges.push_back({x[0], x[1]});
    }
    out.graph = Graph(n, std::move(graph_edges));
    return out;
}

std::vector<TrimChoice> orient_from_roots(int n, std::span<const int> elements,
                                          std::span<const std::pair<int, int>> pairs, std::span<const int> roots)
{
    std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(n));
    for (std::size_t pos = 0; pos < pairs.size(); ++pos) {
        adj[static_cast<std::size_t>(pairs[pos].first)].emplace_back(pairs[pos].second, pos);
        adj[static_cast<std::size_t>(pairs[pos].second)].emplace_back(pairs[pos].first, pos);
    }
    std::vector<TrimChoice> trims(pairs.size());
    std::vector<char> done(pairs.size(), 0);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue;
    for (int r : roots) {
        seen[static_cast<std::size_t>(r)] = 1;
        queue.push_back(r);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (const auto& [w, pos] : adj[static_cast<std::size_t>(u)]) {
                if (done[pos]) continue;
                done[pos] = 1;
                trims[pos] = {elements[pos], u, w};
                if (seen[static_cast<std::size_t>(w)]) throw std::logic_error("orientation met a vertex twice");
                seen[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
        }
    }
    if (std::find(done.begin(), done.end(), 0) != done.end()) {
        throw std::logic_error("a component of the forest has no root");
    }
    return trims;
}

Diagnostics verify_branching_packing(int n, int elements, const std::function<std::string(const TrimChoice&)>& trim_problem,
                                     const RootedHyperforestPacking& packing, const PackingSpec& spec)
{
    Diagnostics d;
    if (static_cast<int>(packing.members.size()) != spec.k) {
        d.add(fmt::format("member count: expected {}, got {}", spec.k, packing.members.size()));
        return d;
    }
    if (spec.lower.size() != static_cast<std::size_t>(spec.k) + 1 || spec.upper.size() != spec.lower.size()) {
        d.add("spec: bounds arrays must have length k+1");
        return d;
    }
    std::vector<int> owner(static_cast<std::size_t>(elements), -1);
    std::vector<int> coverage(static_cast<std::size_t>(n), 0);
    long total_roots = 0;
    for (std::size_t i = 0; i < packing.members.size(); ++i) {
        const auto& m = packing.members[i];
        const auto id = i + 1;
        bool shape_ok = true;
        for (int e : m.elements) {
            if (e < 0 || e >= elements) {
                d.add(fmt::format("member {}: element {} out of range", id, e));
                shape_ok = false;
                continue;
            }
            auto& o = owner[static_cast<std::size_t>(e)];
            if (o != -1) d.add(fmt::format("disjointness: element {} used by members {} and {}", e, o + 1, id));
            o = static_cast<int>(i);
        }
        if (m.trims.size() != m.elements.size()) {
            d.add(fmt::format("witness: member {} has {} trims for {} elements", id, m.trims.size(), m.elements.size()));
            shape_ok = false;
        }
        const std::set<int> root_set(m.roots.begin(), m.roots.end());
        if (root_set.size() != m.roots.size()) d.add(fmt::format("roots: member {} repeats a root", id));
        for (int r : m.roots) {
            if (r < 0 || r >= n) {
                d.add(fmt::format("roots: member {} root {} out of range", id, r));
                shape_ok = false;
            }
        }
        const int r_count = static_cast<int>(root_set.size());
        total_roots += r_count;
        if (r_count < spec.lower[id] || r_count > spec.upper[id]) {
            d.add(fmt::format("root bounds: member {} has {} roots, allowed [{}, {}]", id, r_count, spec.lower[id],
                              spec.upper[id]));
        }
        if (!shape_ok) continue;

        std::set<int> heads;
        bool trims_ok = true;
        for (std::size_t pos = 0; pos < m.trims.size(); ++pos) {
            const auto& t = m.trims[pos];
            if (t.element != m.elements[pos]) {
                d.add(fmt::format("witness: member {} trim {} names element {} instead of {}", id, pos, t.element,
                                  m.elements[pos]));
                trims_ok = false;
                continue;
            }
            if (t.tail < 0 || t.tail >= n || t.head < 0 || t.head >= n) {
                d.add(fmt::format("witness: member {} element {} has an out-of-range trim", id, t.element));
                trims_ok = false;
                continue;
            }
            if (auto problem = trim_problem(t); !problem.empty()) {
                d.add(fmt::format("witness: member {} element {}: {}", id, t.element, problem));
                trims_ok = false;
            }
            if (!heads.insert(t.head).second) {
                d.add(fmt::format("in-degree: member {} vertex {} has two entering arcs", id, t.head));
            }
            if (root_set.count(t.head)) d.add(fmt::format("roots: member {} root {} has an entering arc", id, t.head));
        }
        std::set<int> core = root_set;
        core.insert(heads.begin(), heads.end());
        if (trims_ok) {
            UnionFind uf(n);
            for (const auto& t : m.trims) {
                if (!core.count(t.tail)) d.add(fmt::format("witness: member {} tail {} lies outside the core", id, t.tail));
                if (!uf.unite(t.tail, t.head)) d.add(fmt::format("cycle: member {} arcs contain a cycle", id));
            }
        }
        for (int v : core) ++coverage[static_cast<std::size_t>(v)];
    }
    if (total_roots < spec.lower[0] || total_roots > spec.upper[0]) {
        d.add(fmt::format("total roots: {} outside [{}, {}]", total_roots, spec.lower[0], spec.upper[0]));
    }
    for (int v = 0; v < n; ++v) {
        if (coverage[static_cast<std::size_t>(v)] != spec.h) {
            d.add(fmt::format("coverage: vertex {} lies in {} cores, expected {}", v, coverage[static_cast<std::size_t>(v)],
                              spec.h));
        }
    }
    return d;
}

Diagnostics verify_hyperforest_packing(const Hypergraph& hg, const RootedHyperforestPacking& packing,
                                       const PackingSpec& spec)
{
    auto problem = [&](const TrimChoice& t) -> std::string {
        const auto& x = hg.hyperedge(t.element);
        if (t.tail == t.head) return "tail equals head";
        if (!std::binary_search(x.begin(), x.end(), t.tail) || !std::binary_search(x.begin(), x.end(), t.head)) {
            return "trimmed pair is not inside the hyperedge";
        }
        return {};
    };
    return verify_branching_packing(hg.vertex_count(), hg.edge_count(), problem, packing, spec);
}

HyperforestPackResult pack_hyperforests(const Hypergraph& hg, const PackingSpec& spec, const SolveOptions& opts)
{
    HyperforestPackResult out;
    auto trim = trim_to_graph(hg, spec, opts);
    if (!trim.ok()) {
        out.infeasible = trim.infeasible;
        return out;
    }
    auto forests = pack_regular_forests_bounded(trim.graph, spec, opts);
    if (!forests.feasible()) throw std::logic_error("the trimmed graph keeps the conditions but packing failed");

    RootedHyperforestPacking packing;
    for (const auto& f : forests.packing->members) {
        BranchingMember m;
        m.elements = f.edges;
        m.roots = f.roots;
        std::vector<std::pair<int, int>> pairs;
        for (int e : f.edges) pairs.push_back(trim.witness.pairs[static_cast<std::size_t>(e)]);
        m.trims = orient_from_roots(hg.vertex_count(), m.elements, pairs, m.roots);
        packing.members.push_back(std::move(m));
    }
    if (opts.check_invariants) {
        const auto diag = verify_hyperforest_packing(hg, packing, spec);
        if (!diag.ok()) throw std::logic_error("lifted packing failed verification: " + diag.problems.front());
    }
    out.packing = std::move(packing);
    out.root_counts = forests.root_counts;
    return out;
}

std::optional<std::vector<TrimChoice>> find_hyperforest_witness(const Hypergraph& hg, std::span<const int> member,
                                                                std::span<const int> roots, std::span<const int> core)
{
    const int n = hg.vertex_count();
    if (core.size() > 12) throw CapExceeded("witness search supports cores of at most 12 vertices");
    if (member.size() > 8) throw CapExceeded("witness search supports at most 8 hyperedges");
    const std::set<int> core_set(core.begin(), core.end());
    const std::set<int> root_set(roots.begin(), roots.end());
    for (int r : roots) {
        if (!core_set.count(r)) return std::nullopt;
    }
    // Every non-root core vertex needs exactly one entering arc.
    if (core_set.size() - root_set.size() != member.size()) return std::nullopt;

    std::vector<TrimChoice> trims(member.size());
    std::set<int> heads;
    auto rec = [&](auto&& self, std::size_t pos, const UnionFind& uf) -> bool {
        if (pos == member.size()) return true;
        const auto& x = hg.hyperedge(member[pos]);
        for (int head : x) {
            if (!core_set.count(head) || root_set.count(head) || heads.count(head)) continue;
            for (int tail : x) {
                if (tail == head || !core_set.count(tail)) continue;
                UnionFind next = uf;
                if (!next.unite(tail, head)) continue;
                heads.insert(head);
                trims[pos] = {member[pos], tail, head};
                if (self(self, pos + 1, next)) return true;
                heads.erase(head);
            }
        }
        return false;
    };
    if (!rec(rec, 0, UnionFind(n))) return std::nullopt;
    return trims;
}

std::optional<RootedHyperforestPacking> brute_force_hyperforest_packing(const Hypergraph& hg, const PackingSpec& spec,
                                                                        const OracleLimits& limits)
{
    const auto sol = search_packing(OracleInstance::of(hg, spec), limits);
    if (!sol) return std::nullopt;
    RootedHyperforestPacking packing;
    for (const auto& m : sol->members) {
        BranchingMember b;
        b.elements = m.elements;
        b.roots = m.roots;
        b.trims = orient_from_roots(hg.vertex_count(), m.elements, m.pairs, m.roots);
        packing.members.push_back(std::move(b));
    }
    return packing;
}

} // namespace rootpack
