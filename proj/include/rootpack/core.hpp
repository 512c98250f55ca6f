#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rootpack {

// Sorted list of vertex indices.
using VertexList = std::vector<int>;
// Blocks of a partition or subpartition, each a sorted VertexList.
using Blocks = std::vector<VertexList>;

class InvalidInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when an exhaustive routine is asked to work beyond its configured size.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    int u = 0;
    int v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
    int tail = 0;
    int head = 0;
    friend bool operator==(const Arc&, const Arc&) = default;
};

struct Hyperarc {
    VertexList tails;
    int head = 0;
    friend bool operator==(const Hyperarc&, const Hyperarc&) = default;
};

/// Undirected multigraph on vertices 0..n-1. Self-loops are rejected.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_.at(static_cast<std::size_t>(i)); }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// Hypergraph on vertices 0..n-1; every hyperedge has at least two distinct vertices.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(int n, std::vector<VertexList> hyperedges);

    static Hypergraph from_graph(const Graph& g);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(hyperedges_.size()); }
    const std::vector<VertexList>& hyperedges() const { return hyperedges_; }
    const VertexList& hyperedge(int i) const { return hyperedges_.at(static_cast<std::size_t>(i)); }
    bool is_graph() const;

private:
    int n_ = 0;
    std::vector<VertexList> hyperedges_;
};

class Digraph {
public:
    Digraph() = default;
    Digraph(int n, std::vector<Arc> arcs);

    int vertex_count() const { return n_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
};

/// Directed hypergraph: each hyperarc has one head and a nonempty tail set not containing it.
class Dypergraph {
public:
    Dypergraph() = default;
    Dypergraph(int n, std::vector<Hyperarc> hyperarcs);

    static Dypergraph from_digraph(const Digraph& d);

    int vertex_count() const { return n_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Hyperarc>& hyperarcs() const { return arcs_; }
    const Hyperarc& hyperarc(int i) const { return arcs_.at(static_cast<std::size_t>(i)); }
    bool is_digraph() const;

private:
    int n_ = 0;
    std::vector<Hyperarc> arcs_;
};

/// Root-budget problem statement shared by every packing problem in the library.
///
/// `lower[0]`/`upper[0]` bound the total number of roots; `lower[i]`/`upper[i]`
/// for 1 <= i <= k bound the roots (components) of member i. `h` is the number
/// of members every vertex must belong to.
struct PackingSpec {
    int h = 1;
    int k = 1;
    std::vector<int> lower;
    std::vector<int> upper;

    /// Sum of lower[1..k].
    long lower_sum() const;
    /// Sum of upper[1..k].
    long upper_sum() const;

    /// ell = ell' per member and total bounds equal to the sum.
    static PackingSpec exact(int h, std::vector<int> members);
    /// Spanning version (h = k) of `exact`.
    static PackingSpec spanning(std::vector<int> members);

    friend bool operator==(const PackingSpec&, const PackingSpec&) = default;
};

enum class SpecViolation {
    malformed,            // wrong array sizes, non-positive entries, k or h < 1, empty vertex set
    upper_sum_below_total,   // ell'(K) < ell'(0)
    total_upper_below_lower, // ell'(0) < ell(0)
    total_lower_below_sum,   // ell(0) < ell(K)
    member_upper_exceeds_vertices, // ell'(i) > |V|
    member_upper_below_lower,      // ell'(i) < ell(i)
};

struct SpecIssue {
    SpecViolation kind;
    int index = 0; // member index for per-member issues, 0 otherwise
    std::string message;
};

/// Returns every violated hypothesis on the bounds; empty means valid.
std::vector<SpecIssue> validate_spec(const PackingSpec& spec, int n);

/// Throws SpecError with the first issue when the spec is invalid.
void require_valid_spec(const PackingSpec& spec, int n);

std::string to_string(SpecViolation v);

/// i -> min{ell(i), p} over member values; `sum` is the capped total.
struct CappedBounds {
    std::vector<int> values;
    long sum = 0;
};

CappedBounds ell_p(std::span<const int> ell, int p);

/// Capped total min{ell(i), p} summed over i, for members 1..k of a spec-style array.
long capped_sum(std::span<const int> members, int p);

/// Members 1..k of a bounds array (drops the total entry).
inline std::span<const int> members_of(const std::vector<int>& bounds)
{
    return std::span<const int>(bounds).subspan(1);
}

/// Union-find with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(int n = 0);

    int find(int x);
    bool unite(int a, int b);
    bool same(int a, int b) { return find(a) == find(b); }
    int component_count() const { return components_; }
    int size() const { return static_cast<int>(parent_.size()); }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    int components_ = 0;
};

/// A forest member: edge indices into a host graph, a vertex support, and one root per component.
struct RootedForest {
    std::vector<int> edges;
    VertexList support;
    VertexList roots;

    friend bool operator==(const RootedForest&, const RootedForest&) = default;
};

struct RootedForestPacking {
    std::vector<RootedForest> members;

    friend bool operator==(const RootedForestPacking&, const RootedForestPacking&) = default;
};

/// Chosen trimmed arc tail->head for one element (hyperedge or hyperarc) of a member.
struct TrimChoice {
    int element = 0;
    int tail = 0;
    int head = 0;

    friend bool operator==(const TrimChoice&, const TrimChoice&) = default;
};

/// A hyperforest/hyperbranching member. The core is the set of heads plus the roots.
struct BranchingMember {
    std::vector<int> elements;
    VertexList roots;
    std::vector<TrimChoice> trims; // one per element, same order

    VertexList core() const;

    friend bool operator==(const BranchingMember&, const BranchingMember&) = default;
};

struct RootedHyperforestPacking {
    std::vector<BranchingMember> members;

    friend bool operator==(const RootedHyperforestPacking&, const RootedHyperforestPacking&) = default;
};

using HyperbranchingPacking = RootedHyperforestPacking;

/// Human-readable verification findings; empty means the object verified.
struct Diagnostics {
    std::vector<std::string> problems;

    bool ok() const { return problems.empty(); }
    void add(std::string s) { problems.push_back(std::move(s)); }
    bool mentions(std::string_view needle) const;
};

/// Checks a packing of rooted forests: edge-disjointness, each member a forest on its
/// support with exactly one root per component, root bounds, and exact h-coverage of supports.
Diagnostics verify_regular_forest_packing(const Graph& g, const RootedForestPacking& packing,
                                          const PackingSpec& spec);

/// Number of connected components of (support, edges) and whether edges are acyclic on it.
struct ForestShape {
    bool acyclic = true;
    bool edges_inside_support = true;
    int components = 0;
};

ForestShape forest_shape(const Graph& g, std::span<const int> edges, std::span<const int> support);

VertexList sorted_unique(VertexList v);

} // namespace rootpack
