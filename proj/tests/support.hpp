#pragma once

// Random instance generators and definition-level oracles shared by the unit tests and the
// acceptance runner. The oracles here deliberately avoid the library's enumeration tables
// and kernels so they can cross-check them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rootpack/core.hpp"
#include "rootpack/partitions.hpp"

namespace rptest {

using namespace rootpack;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline Edge random_edge(Rng& rng, int n)
{
    int u = rng.uniform(0, n - 1);
    int v = rng.uniform(0, n - 2);
    if (v >= u) ++v;
    return {std::min(u, v), std::max(u, v)};
}

inline Graph random_graph(Rng& rng, int n, int m)
{
    std::vector<Edge> edges;
    if (n >= 2)
        for (int i = 0; i < m; ++i) edges.push_back(random_edge(rng, n));
    return Graph(n, std::move(edges));
}

inline VertexList random_subset(Rng& rng, int n, int size)
{
    VertexList all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    std::shuffle(all.begin(), all.end(), rng.engine());
    all.resize(static_cast<std::size_t>(size));
    std::sort(all.begin(), all.end());
    return all;
}

inline Hypergraph random_hypergraph(Rng& rng, int n, int m, int max_size)
{
    std::vector<VertexList> hes;
    if (n >= 2)
        for (int i = 0; i < m; ++i) hes.push_back(random_subset(rng, n, rng.uniform(2, std::min(n, max_size))));
    return Hypergraph(n, std::move(hes));
}

inline Dypergraph random_dypergraph(Rng& rng, int n, int m, int max_tails)
{
    std::vector<Hyperarc> arcs;
    if (n >= 2)
        for (int i = 0; i < m; ++i) {
            int head = rng.uniform(0, n - 1);
            VertexList others;
            for (int v = 0; v < n; ++v)
                if (v != head) others.push_back(v);
            std::shuffle(others.begin(), others.end(), rng.engine());
            others.resize(static_cast<std::size_t>(rng.uniform(1, std::min<int>(max_tails, static_cast<int>(others.size())))));
            std::sort(others.begin(), others.end());
            arcs.push_back({others, head});
        }
    return Dypergraph(n, std::move(arcs));
}

inline Partition random_partition(Rng& rng, int n)
{
    int parts = rng.uniform(1, n);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& l : labels) l = rng.uniform(0, parts - 1);
    // Compact labels to a canonical numbering.
    std::vector<int> map(static_cast<std::size_t>(parts), -1);
    int next = 0;
    for (auto& l : labels) {
        auto& m = map[static_cast<std::size_t>(l)];
        if (m < 0) m = next++;
        l = m;
    }
    return Partition::from_labels(labels);
}

/// Random spec that passes validate_spec for `n` vertices.
inline PackingSpec random_valid_spec(Rng& rng, int n, int h, int k)
{
    PackingSpec s;
    s.h = h;
    s.k = k;
    s.lower.assign(static_cast<std::size_t>(k) + 1, 0);
    s.upper.assign(static_cast<std::size_t>(k) + 1, 0);
    long lsum = 0;
    long usum = 0;
    for (int i = 1; i <= k; ++i) {
        int lo = rng.uniform(1, n);
        int hi = rng.uniform(lo, n);
        s.lower[static_cast<std::size_t>(i)] = lo;
        s.upper[static_cast<std::size_t>(i)] = hi;
        lsum += lo;
        usum += hi;
    }
    int l0 = static_cast<int>(lsum + rng.uniform(0, static_cast<int>(usum - lsum)));
    int u0 = l0 + rng.uniform(0, static_cast<int>(usum - l0));
    s.lower[0] = l0;
    s.upper[0] = u0;
    return s;
}

/// Every set partition of {0..n-1}, built by inserting vertices one at a time.
inline std::vector<Blocks> naive_partitions(int n)
{
    std::vector<Blocks> out;
    Blocks cur;
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            out.push_back(cur);
            return;
        }
        // Index loop: the recursion appends to cur, which would invalidate references.
        for (std::size_t i = 0; i < cur.size(); ++i) {
            cur[i].push_back(v);
            rec(v + 1);
            cur[i].pop_back();
        }
        cur.push_back({v});
        rec(v + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

/// Every subpartition: each vertex either stays out or joins a block.
inline std::vector<Blocks> naive_subpartitions(int n)
{
    std::vector<Blocks> out;
    Blocks cur;
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            out.push_back(cur);
            return;
        }
        rec(v + 1);
        // Index loop: the recursion appends to cur, which would invalidate references.
        for (std::size_t i = 0; i < cur.size(); ++i) {
            cur[i].push_back(v);
            rec(v + 1);
            cur[i].pop_back();
        }
        cur.push_back({v});
        rec(v + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

inline bool contains(const VertexList& b, int v) { return std::find(b.begin(), b.end(), v) != b.end(); }

/// Undirected element X enters some block B: X meets B and leaves it.
inline int naive_entering(const std::vector<VertexList>& elements, const Blocks& blocks)
{
    int count = 0;
    for (const auto& x : elements) {
        bool enters = false;
        for (const auto& b : blocks) {
            bool in = false;
            bool out = false;
            for (int v : x) (contains(b, v) ? in : out) = true;
            if (in && out) enters = true;
        }
        count += enters;
    }
    return count;
}

/// Hyperarc enters B: head in B and some tail outside B.
inline int naive_entering(const std::vector<Hyperarc>& arcs, const Blocks& blocks)
{
    int count = 0;
    for (const auto& a : arcs) {
        bool enters = false;
        for (const auto& b : blocks)
            if (contains(b, a.head))
                for (int t : a.tails)
                    if (!contains(b, t)) enters = true;
        count += enters;
    }
    return count;
}

inline std::vector<VertexList> elements_of(const Graph& g)
{
    std::vector<VertexList> out;
    for (const auto& e : g.edges()) out.push_back({e.u, e.v});
    return out;
}

inline long naive_capped(const std::vector<int>& bounds, int p)
{
    long s = 0;
    for (std::size_t i = 1; i < bounds.size(); ++i) s += std::min(bounds[i], p);
    return s;
}

/// Both root-budget conditions and coverage, evaluated straight from their definitions over
/// the given family of (sub)partitions.
inline bool naive_conditions(const PackingSpec& s, int n, const std::vector<Blocks>& family,
                             const std::function<int(const Blocks&)>& entering)
{
    if (static_cast<long>(s.h) * n < s.lower[0]) return false;
    long lsum = 0;
    for (int i = 1; i <= s.k; ++i) lsum += s.lower[static_cast<std::size_t>(i)];
    for (const auto& blocks : family) {
        int p = static_cast<int>(blocks.size());
        long e = entering(blocks);
        long hp = static_cast<long>(s.h) * p;
        if (s.upper[0] - lsum + naive_capped(s.lower, p) + e < hp) return false;
        if (naive_capped(s.upper, p) + e < hp) return false;
    }
    return true;
}

inline bool naive_conditions_graph(const Hypergraph& hg, const PackingSpec& s)
{
    const auto els = hg.hyperedges();
    return naive_conditions(s, hg.vertex_count(), naive_partitions(hg.vertex_count()),
                            [&](const Blocks& b) { return naive_entering(els, b); });
}

inline bool naive_conditions_directed(const Dypergraph& d, const PackingSpec& s)
{
    const auto& arcs = d.hyperarcs();
    return naive_conditions(s, d.vertex_count(), naive_subpartitions(d.vertex_count()),
                            [&](const Blocks& b) { return naive_entering(arcs, b); });
}

} // namespace rptest
