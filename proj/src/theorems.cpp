#include "rootpack/theorems.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <numeric>

#include "rootpack/directed.hpp"
#include "rootpack/forest_packing.hpp"
#include "rootpack/hyper_packing.hpp"
#include "rootpack/partitions.hpp"

namespace rootpack {

namespace {

std::vector<TheoremInfo> build_registry()
{
    std::vector<TheoremInfo> out;
    struct Shape {
        bool regular;
        RootModel roots;
        const char* text;
    };
    const Shape directed_shapes[] = {
        {false, RootModel::single, "k spanning arborescences"},
        {false, RootModel::uniform, "k spanning branchings with ell roots each"},
        {false, RootModel::per_member, "k spanning branchings with ell(i) roots"},
        {false, RootModel::bounded, "k spanning branchings with bounded root counts"},
        {true, RootModel::single, "h-regular packing of k arborescences"},
        {true, RootModel::uniform, "h-regular packing of k branchings with ell roots each"},
        {true, RootModel::per_member, "h-regular packing of k branchings with ell(i) roots"},
        {true, RootModel::bounded, "h-regular packing of k branchings with bounded root counts"},
    };
    int id = 8;
    for (HostKind host : {HostKind::digraph, HostKind::dypergraph}) {
        for (const auto& s : directed_shapes) {
            std::string text = s.text;
            if (host == HostKind::dypergraph) text += " (hyper)";
            out.push_back({fmt::format("T{}", id++), host, s.regular, s.roots, text});
        }
    }
    out.push_back({"T24", HostKind::graph, false, RootModel::single, "k spanning trees"});
    out.push_back({"T25", HostKind::graph, false, RootModel::per_member, "k spanning forests with ell(i) components"});
    out.push_back({"T26", HostKind::graph, false, RootModel::bounded, "k spanning forests with bounded root counts"});
    out.push_back({"T27", HostKind::graph, true, RootModel::per_member, "h-regular packing of k forests with ell(i) components"});
    out.push_back({"T28", HostKind::graph, true, RootModel::bounded, "h-regular packing of k forests with bounded root counts"});
    out.push_back({"T29", HostKind::hypergraph, false, RootModel::single, "k spanning hypertrees"});
    out.push_back({"T30", HostKind::hypergraph, false, RootModel::per_member, "k spanning hyperforests with ell(i) roots"});
    out.push_back({"T31", HostKind::hypergraph, true, RootModel::per_member, "h-regular packing of k hyperforests with ell(i) roots"});
    out.push_back({"T32", HostKind::hypergraph, false, RootModel::bounded, "k spanning hyperforests with bounded root counts"});
    out.push_back({"T33", HostKind::hypergraph, true, RootModel::bounded, "h-regular packing of k hyperforests with bounded root counts"});
    return out;
}

bool is_directed(HostKind k) { return k == HostKind::digraph || k == HostKind::dypergraph; }

Digraph to_digraph(const Dypergraph& d)
{
    std::vector<Arc> arcs;
    for (const auto& a : d.hyperarcs()) arcs.push_back({a.tails.front(), a.head});
    return Digraph(d.vertex_count(), std::move(arcs));
}

Graph to_graph(const Hypergraph& hg)
{
    std::vector<Edge> edges;
    for (const auto& x : hg.hyperedges()) edges.push_back({x[0], x[1]});
    return Graph(hg.vertex_count(), std::move(edges));
}

std::vector<int> member_values(const TheoremInfo& info, const PackingSpec& given)
{
    const auto k = static_cast<std::size_t>(given.k);
    switch (info.roots) {
    case RootModel::single: return std::vector<int>(k, 1);
    case RootModel::uniform:
        if (given.lower.size() < 2) throw SpecError("uniform root count needs lower[1]");
        return std::vector<int>(k, given.lower[1]);
    default:
        if (given.lower.size() != k + 1) throw SpecError("lower must have length k+1");
        return {given.lower.begin() + 1, given.lower.end()};
    }
}

ConditionReport failed(Condition c, std::string detail, Blocks witness = {})
{
    ConditionReport r;
    r.holds = false;
    r.violated = c;
    r.detail = std::move(detail);
    r.witness = std::move(witness);
    return r;
}

} // namespace

const std::vector<TheoremInfo>& theorem_registry()
{
    static const auto registry = build_registry();
    return registry;
}

const TheoremInfo& theorem_info(std::string_view id)
{
    for (const auto& t : theorem_registry()) {
        if (t.id == id) return t;
    }
    throw std::invalid_argument(fmt::format("unknown theorem id '{}'", id));
}

int vertex_count(const Host& host)
{
    return std::visit([](const auto& h) { return h.vertex_count(); }, host);
}

PackingSpec instantiate(const TheoremInfo& info, const PackingSpec& given)
{
    if (given.k < 1) throw SpecError("k must be positive");
    const int h = info.regular ? given.h : given.k;
    if (info.roots == RootModel::bounded) {
        PackingSpec spec = given;
        spec.h = h;
        return spec;
    }
    return PackingSpec::exact(h, member_values(info, given));
}

Host adapt_host(const TheoremInfo& info, const Host& host)
{
    switch (info.host) {
    case HostKind::digraph:
        if (auto d = std::get_if<Digraph>(&host)) return *d;
        if (auto d = std::get_if<Dypergraph>(&host); d && d->is_digraph()) return to_digraph(*d);
        break;
    case HostKind::dypergraph:
        if (auto d = std::get_if<Digraph>(&host)) return Dypergraph::from_digraph(*d);
        if (auto d = std::get_if<Dypergraph>(&host)) return *d;
        break;
    case HostKind::graph:
        if (auto g = std::get_if<Graph>(&host)) return *g;
        if (auto g = std::get_if<Hypergraph>(&host); g && g->is_graph()) return to_graph(*g);
        break;
    case HostKind::hypergraph:
        if (auto g = std::get_if<Graph>(&host)) return Hypergraph::from_graph(*g);
        if (auto g = std::get_if<Hypergraph>(&host)) return *g;
        break;
    }
    throw InvalidInstance(fmt::format("{} does not apply to this instance type", info.id));
}

ConditionReport check_unified(const TheoremInfo& info, const Host& host, const PackingSpec& given, const SolveOptions& opts)
{
    const auto spec = instantiate(info, given);
    const auto adapted = adapt_host(info, host);
    const int n = vertex_count(adapted);
    if (info.roots != RootModel::bounded) {
        for (int i = 1; i <= spec.k; ++i) {
            if (spec.lower[static_cast<std::size_t>(i)] > n) {
                return failed(Condition::member_roots_exceed_vertices,
                              fmt::format("member {} needs {} roots but |V| = {}", i, spec.lower[static_cast<std::size_t>(i)], n));
            }
        }
    }
    if (is_directed(info.host)) {
        const auto d = info.host == HostKind::digraph ? Dypergraph::from_digraph(std::get<Digraph>(adapted))
                                                      : std::get<Dypergraph>(adapted);
        return check_subpartition_conditions(d, spec, opts);
    }
    const auto hg = info.host == HostKind::graph ? Hypergraph::from_graph(std::get<Graph>(adapted))
                                                 : std::get<Hypergraph>(adapted);
    return check_conditions_33(hg, spec, opts);
}

ConditionReport check_dedicated(const TheoremInfo& info, const Host& host, const PackingSpec& given, const SolveOptions& opts)
{
    const auto adapted = adapt_host(info, host);
    const int n = vertex_count(adapted);
    const bool directed = is_directed(info.host);
    const long k = given.k;
    const long h = info.regular ? given.h : given.k;
    if (k < 1 || h < 1) throw SpecError("h and k must be positive");

    std::vector<int> ell;
    PackingSpec bounds;
    if (info.roots == RootModel::bounded) {
        bounds = given;
        bounds.h = static_cast<int>(h);
        require_valid_spec(bounds, n);
    } else {
        ell = member_values(info, given);
    }
    const long ell_sum = std::accumulate(ell.begin(), ell.end(), 0L);
    const long ell_one = ell.empty() ? 0 : ell.front();
    const Condition cond = directed ? Condition::subpartition_lower : Condition::partition_lower;

    // Hypotheses that do not range over partitions.
    if (info.roots == RootModel::uniform && ell_one > n && !info.regular) {
        return failed(Condition::member_roots_exceed_vertices, fmt::format("ell = {} exceeds |V| = {}", ell_one, n));
    }
    if (info.roots == RootModel::per_member) {
        for (std::size_t i = 0; i < ell.size(); ++i) {
            if (ell[i] > n) {
                return failed(Condition::member_roots_exceed_vertices,
                              fmt::format("ell({}) = {} exceeds |V| = {}", i + 1, ell[i], n));
            }
        }
    }
    if (info.regular) {
        long needed = 0;
        switch (info.roots) {
        case RootModel::single: needed = k; break;
        case RootModel::uniform: needed = k * ell_one; break;
        case RootModel::per_member: needed = ell_sum; break;
        case RootModel::bounded: needed = bounds.lower[0]; break;
        }
        if (info.roots == RootModel::uniform && k < h) {
            VertexList all(static_cast<std::size_t>(n));
            std::iota(all.begin(), all.end(), 0);
            return failed(cond, fmt::format("k = {} < h = {}", k, h), {all});
        }
        if (h * n < needed) {
            return failed(Condition::coverage_below_total_roots, fmt::format("h|V| = {} < {}", h * n, needed));
        }
    }

    auto entering = [&](const Subpartition& p) -> long {
        return std::visit([&](const auto& g) { return static_cast<long>(entering_count(g, p)); }, adapted);
    };
    auto capped = [](std::span<const int> v, long p) {
        long s = 0;
        for (int x : v) s += std::min<long>(x, p);
        return s;
    };
    auto evaluate = [&](const Subpartition& sp) -> std::optional<ConditionReport> {
        const long p = sp.size();
        const long e = entering(sp);
        auto fail = [&](Condition c, long lhs, long rhs) {
            return failed(c, fmt::format("{} blocks, {} entering: {} < {}", p, e, lhs, rhs), sp.blocks);
        };
        switch (info.roots) {
        case RootModel::single:
            if (info.regular ? e < h * p - k : e < k * (p - 1)) return fail(cond, e, info.regular ? h * p - k : k * (p - 1));
            break;
        case RootModel::uniform:
            if (info.regular ? e + k * ell_one < h * p : e < k * (p - ell_one)) {
                return info.regular ? fail(cond, e + k * ell_one, h * p) : fail(cond, e, k * (p - ell_one));
            }
            break;
        case RootModel::per_member:
            if (capped(ell, p) + e < h * p) return fail(cond, capped(ell, p) + e, h * p);
            break;
        case RootModel::bounded: {
            const long lower = bounds.upper[0] - bounds.lower_sum() + capped(members_of(bounds.lower), p) + e;
            if (lower < h * p) return fail(cond, lower, h * p);
            const long upper = capped(members_of(bounds.upper), p) + e;
            if (upper < h * p) {
                return fail(directed ? Condition::subpartition_upper : Condition::partition_upper, upper, h * p);
            }
            break;
        }
        }
        return std::nullopt;
    };

    ConditionReport report;
    if (directed) {
        SubpartitionStream stream(n, opts.subpartition_cap);
        while (auto sp = stream.next()) {
            ++report.scanned;
            if (auto r = evaluate(*sp)) {
                r->scanned = report.scanned;
                return *r;
            }
        }
    } else {
        PartitionStream stream(n, opts.partition_cap);
        while (auto p = stream.next()) {
            ++report.scanned;
            if (auto r = evaluate(Subpartition::of(*p))) {
                r->scanned = report.scanned;
                return *r;
            }
        }
    }
    return report;
}

bool TheoremCheck::agree() const
{
    if (unified.holds != dedicated.holds) return false;
    return !matroid || *matroid == unified.holds;
}

TheoremCheck check_theorem(const TheoremInfo& info, const Host& host, const PackingSpec& given, const SolveOptions& opts)
{
    TheoremCheck out;
    out.spec = instantiate(info, given);
    out.unified = check_unified(info, host, given, opts);
    out.dedicated = check_dedicated(info, host, given, opts);
    if (info.host == HostKind::graph && info.roots == RootModel::per_member && !info.regular) {
        const auto g = std::get<Graph>(adapt_host(info, host));
        out.matroid = check_condition_25_matroid(g, out.spec.k, members_of(out.spec.lower));
    }
    return out;
}

} // namespace rootpack
