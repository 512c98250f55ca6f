#include "rootpack/core.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <set>

namespace rootpack {

namespace {

void check_vertex(int v, int n, const char* what)
{
    if (v < 0 || v >= n) {
        throw InvalidInstance(fmt::format("{} references vertex {} outside 0..{}", what, v, n - 1));
    }
}

} // namespace

VertexList sorted_unique(VertexList v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
{
    if (n_ < 0) throw InvalidInstance("negative vertex count");
    for (const auto& e : edges_) {
        check_vertex(e.u, n_, "edge");
        check_vertex(e.v, n_, "edge");
        if (e.u == e.v) throw InvalidInstance(fmt::format("self-loop at vertex {}", e.u));
    }
}

Hypergraph::Hypergraph(int n, std::vector<VertexList> hyperedges) : n_(n), hyperedges_(std::move(hyperedges))
{
    if (n_ < 0) throw InvalidInstance("negative vertex count");
    for (auto& x : hyperedges_) {
        for (int v : x) check_vertex(v, n_, "hyperedge");
        x = sorted_unique(std::move(x));
        if (x.size() < 2) throw InvalidInstance("hyperedge with fewer than two distinct vertices");
    }
}

Hypergraph Hypergraph::from_graph(const Graph& g)
{
    std::vector<VertexList> xs;
    xs.reserve(g.edges().size());
    for (const auto& e : g.edges()) xs.push_back({e.u, e.v});
    return Hypergraph(g.vertex_count(), std::move(xs));
}

bool Hypergraph::is_graph() const
{
    return std::all_of(hyperedges_.begin(), hyperedges_.end(), [](const VertexList& x) { return x.size() == 2; });
}

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs))
{
    if (n_ < 0) throw InvalidInstance("negative vertex count");
    for (const auto& a : arcs_) {
        check_vertex(a.tail, n_, "arc");
        check_vertex(a.head, n_, "arc");
        if (a.tail == a.head) throw InvalidInstance(fmt::format("self-loop at vertex {}", a.head));
    }
}

Dypergraph::Dypergraph(int n, std::vector<Hyperarc> hyperarcs) : n_(n), arcs_(std::move(hyperarcs))
{
    if (n_ < 0) throw InvalidInstance("negative vertex count");
    for (auto& a : arcs_) {
        check_vertex(a.head, n_, "hyperarc head");
        for (int t : a.tails) check_vertex(t, n_, "hyperarc tail");
        a.tails = sorted_unique(std::move(a.tails));
        if (a.tails.empty()) throw InvalidInstance("hyperarc without tails");
        if (std::binary_search(a.tails.begin(), a.tails.end(), a.head)) {
            throw InvalidInstance(fmt::format("hyperarc head {} is also a tail", a.head));
        }
    }
}

Dypergraph Dypergraph::from_digraph(const Digraph& d)
{
    std::vector<Hyperarc> xs;
    xs.reserve(d.arcs().size());
    for (const auto& a : d.arcs()) xs.push_back({{a.tail}, a.head});
    return Dypergraph(d.vertex_count(), std::move(xs));
}

bool Dypergraph::is_digraph() const
{
    return std::all_of(arcs_.begin(), arcs_.end(), [](const Hyperarc& a) { return a.tails.size() == 1; });
}

long PackingSpec::lower_sum() const
{
    return lower.size() <= 1 ? 0 : std::accumulate(lower.begin() + 1, lower.end(), 0L);
}

long PackingSpec::upper_sum() const
{
    return upper.size() <= 1 ? 0 : std::accumulate(upper.begin() + 1, upper.end(), 0L);
}

PackingSpec PackingSpec::exact(int h, std::vector<int> members)
{
    PackingSpec s;
    s.h = h;
    s.k = static_cast<int>(members.size());
    const int total = std::accumulate(members.begin(), members.end(), 0);
    s.lower.push_back(total);
    s.lower.insert(s.lower.end(), members.begin(), members.end());
    s.upper = s.lower;
    return s;
}

PackingSpec PackingSpec::spanning(std::vector<int> members)
{
    const int k = static_cast<int>(members.size());
    return exact(k, std::move(members));
}

std::string to_string(SpecViolation v)
{
    switch (v) {
    case SpecViolation::malformed: return "malformed";
    case SpecViolation::upper_sum_below_total: return "upper-sum-below-total";
    case SpecViolation::total_upper_below_lower: return "total-upper-below-lower";
    case SpecViolation::total_lower_below_sum: return "total-lower-below-sum";
    case SpecViolation::member_upper_exceeds_vertices: return "member-upper-exceeds-vertices";
    case SpecViolation::member_upper_below_lower: return "member-upper-below-lower";
    }
    return "unknown";
}

std::vector<SpecIssue> validate_spec(const PackingSpec& spec, int n)
{
    std::vector<SpecIssue> out;
    auto malformed = [&](std::string msg) { out.push_back({SpecViolation::malformed, 0, std::move(msg)}); };
    if (n < 1) malformed("vertex set is empty");
    if (spec.k < 1) malformed("k must be positive");
    if (spec.h < 1) malformed("h must be positive");
    const auto want = static_cast<std::size_t>(std::max(spec.k, 0) + 1);
    if (spec.lower.size() != want || spec.upper.size() != want) {
        malformed(fmt::format("bounds arrays must have length k+1 = {}", want));
        return out;
    }
    for (std::size_t i = 0; i < want; ++i) {
        if (spec.lower[i] < 1 || spec.upper[i] < 1) {
            malformed(fmt::format("bounds at index {} must be positive", i));
        }
    }
    if (!out.empty()) return out;

    const long lk = spec.lower_sum();
    const long uk = spec.upper_sum();
    if (uk < spec.upper[0]) {
        out.push_back({SpecViolation::upper_sum_below_total, 0,
                       fmt::format("sum of member upper bounds {} < total upper bound {}", uk, spec.upper[0])});
    }
    if (spec.upper[0] < spec.lower[0]) {
        out.push_back({SpecViolation::total_upper_below_lower, 0,
                       fmt::format("total upper bound {} < total lower bound {}", spec.upper[0], spec.lower[0])});
    }
    if (spec.lower[0] < lk) {
        out.push_back({SpecViolation::total_lower_below_sum, 0,
                       fmt::format("total lower bound {} < sum of member lower bounds {}", spec.lower[0], lk)});
    }
    for (int i = 1; i <= spec.k; ++i) {
        const auto si = static_cast<std::size_t>(i);
        if (spec.upper[si] > n) {
            out.push_back({SpecViolation::member_upper_exceeds_vertices, i,
                           fmt::format("member {} upper bound {} exceeds |V| = {}", i, spec.upper[si], n)});
        }
        if (spec.upper[si] < spec.lower[si]) {
            out.push_back({SpecViolation::member_upper_below_lower, i,
                           fmt::format("member {} upper bound {} < lower bound {}", i, spec.upper[si], spec.lower[si])});
        }
    }
    return out;
}

void require_valid_spec(const PackingSpec& spec, int n)
{
    auto issues = validate_spec(spec, n);
    if (!issues.empty()) throw SpecError(issues.front().message);
}

CappedBounds ell_p(std::span<const int> ell, int p)
{
    if (p < 0) throw std::invalid_argument("cap must be non-negative");
    CappedBounds out;
    out.values.reserve(ell.size());
    for (int x : ell) {
        out.values.push_back(std::min(x, p));
        out.sum += out.values.back();
    }
    return out;
}

long capped_sum(std::span<const int> members, int p)
{
    long s = 0;
    for (int x : members) s += std::min(x, p);
    return s;
}

UnionFind::UnionFind(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1), components_(n)
{
    std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x)
{
    auto ux = static_cast<std::size_t>(x);
    while (parent_[ux] != static_cast<int>(ux)) {
        parent_[ux] = parent_[static_cast<std::size_t>(parent_[ux])];
        ux = static_cast<std::size_t>(parent_[ux]);
    }
    return static_cast<int>(ux);
}

bool UnionFind::unite(int a, int b)
{
    int ra = find(a);
    int rb = find(b);
    if (ra == rb) return false;
    if (size_[static_cast<std::size_t>(ra)] < size_[static_cast<std::size_t>(rb)]) std::swap(ra, rb);
    parent_[static_cast<std::size_t>(rb)] = ra;
    size_[static_cast<std::size_t>(ra)] += size_[static_cast<std::size_t>(rb)];
    --components_;
    return true;
}

VertexList BranchingMember::core() const
{
    VertexList c = roots;
    for (const auto& t : trims) c.push_back(t.head);
    return sorted_unique(std::move(c));
}

bool Diagnostics::mentions(std::string_view needle) const
{
    return std::any_of(problems.begin(), problems.end(),
                       [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

ForestShape forest_shape(const Graph& g, std::span<const int> edges, std::span<const int> support)
{
    ForestShape shape;
    const int n = g.vertex_count();
    std::vector<char> in_support(static_cast<std::size_t>(n), 0);
    for (int v : support) in_support[static_cast<std::size_t>(v)] = 1;
    UnionFind uf(n);
    int merges = 0;
    for (int ei : edges) {
        const auto& e = g.edge(ei);
        if (!in_support[static_cast<std::size_t>(e.u)] || !in_support[static_cast<std::size_t>(e.v)]) {
            shape.edges_inside_support = false;
        }
        if (uf.unite(e.u, e.v)) {
            ++merges;
        } else {
            shape.acyclic = false;
        }
    }
    shape.components = static_cast<int>(support.size()) - merges;
    return shape;
}

Diagnostics verify_regular_forest_packing(const Graph& g, const RootedForestPacking& packing,
                                          const PackingSpec& spec)
{
    Diagnostics d;
    const int n = g.vertex_count();
    if (static_cast<int>(packing.members.size()) != spec.k) {
        d.add(fmt::format("member count: expected {}, got {}", spec.k, packing.members.size()));
        return d;
    }
    if (spec.lower.size() != static_cast<std::size_t>(spec.k + 1) || spec.upper.size() != spec.lower.size()) {
        d.add("spec: bounds arrays must have length k+1");
        return d;
    }
    std::vector<int> owner(static_cast<std::size_t>(g.edge_count()), -1);
    std::vector<int> coverage(static_cast<std::size_t>(n), 0);
    long total_roots = 0;
    for (std::size_t i = 0; i < packing.members.size(); ++i) {
        const auto& m = packing.members[i];
        bool indices_ok = true;
        for (int e : m.edges) {
            if (e < 0 || e >= g.edge_count()) {
                d.add(fmt::format("member {}: edge index {} out of range", i + 1, e));
                indices_ok = false;
                continue;
            }
            auto& o = owner[static_cast<std::size_t>(e)];
            if (o != -1) d.add(fmt::format("disjointness: edge {} used by members {} and {}", e, o + 1, i + 1));
            o = static_cast<int>(i);
        }
        if (!std::is_sorted(m.support.begin(), m.support.end()) ||
            std::adjacent_find(m.support.begin(), m.support.end()) != m.support.end()) {
            d.add(fmt::format("member {}: support is not a sorted set", i + 1));
            continue;
        }
        bool support_ok = true;
        for (int v : m.support) {
            if (v < 0 || v >= n) {
                d.add(fmt::format("member {}: support vertex {} out of range", i + 1, v));
                support_ok = false;
            } else {
                ++coverage[static_cast<std::size_t>(v)];
            }
        }
        if (!indices_ok || !support_ok) continue;

        const auto shape = forest_shape(g, m.edges, m.support);
        if (!shape.edges_inside_support) d.add(fmt::format("member {}: edge leaves the support", i + 1));
        if (!shape.acyclic) d.add(fmt::format("member {}: edges contain a cycle", i + 1));

        // one root per component
        UnionFind uf(n);
        for (int e : m.edges) uf.unite(g.edge(e).u, g.edge(e).v);
        std::set<int> root_components;
        for (int r : m.roots) {
            if (!std::binary_search(m.support.begin(), m.support.end(), r)) {
                d.add(fmt::format("roots: member {} root {} not in support", i + 1, r));
                continue;
            }
            if (!root_components.insert(uf.find(r)).second) {
                d.add(fmt::format("roots: member {} has two roots in one component", i + 1));
            }
        }
        if (shape.edges_inside_support && shape.acyclic &&
            static_cast<int>(root_components.size()) != shape.components) {
            d.add(fmt::format("roots: member {} has {} components but {} rooted", i + 1, shape.components,
                              root_components.size()));
        }
        const int r = static_cast<int>(m.roots.size());
        total_roots += r;
        const auto si = i + 1;
        if (r < spec.lower[si] || r > spec.upper[si]) {
            d.add(fmt::format("root bounds: member {} has {} roots, allowed [{}, {}]", si, r, spec.lower[si],
                              spec.upper[si]));
        }
    }
    if (total_roots < spec.lower[0] || total_roots > spec.upper[0]) {
        d.add(fmt::format("total roots: {} outside [{}, {}]", total_roots, spec.lower[0], spec.upper[0]));
    }
    for (int v = 0; v < n; ++v) {
        if (coverage[static_cast<std::size_t>(v)] != spec.h) {
            d.add(fmt::format("coverage: vertex {} lies in {} supports, expected {}", v,
                              coverage[static_cast<std::size_t>(v)], spec.h));
        }
    }
    return d;
}

} // namespace rootpack
