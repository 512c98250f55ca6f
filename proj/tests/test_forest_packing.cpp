#include <doctest.h>

#include "rootpack/forest_packing.hpp"
#include "support.hpp"

using namespace rootpack;

namespace {

Graph k4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// Every assignment of edges to members or "unused": does some assignment give forests
// with exactly ell(i) components each?
bool naive_spanning_exists(const Graph& g, const std::vector<int>& ell)
{
    const int k = static_cast<int>(ell.size());
    const int m = g.edge_count();
    std::vector<int> color(static_cast<std::size_t>(m), 0);
    for (;;) {
        bool ok = true;
        for (int c = 1; c <= k && ok; ++c) {
            UnionFind uf(g.vertex_count());
            for (int e = 0; e < m && ok; ++e)
                if (color[static_cast<std::size_t>(e)] == c) ok = uf.unite(g.edge(e).u, g.edge(e).v);
            ok = ok && uf.component_count() == ell[static_cast<std::size_t>(c - 1)];
        }
        if (ok) return true;
        int i = 0;
        while (i < m && color[static_cast<std::size_t>(i)] == k) color[static_cast<std::size_t>(i++)] = 0;
        if (i == m) return false;
        ++color[static_cast<std::size_t>(i)];
    }
}

bool naive_condition_25(const Graph& g, const std::vector<int>& ell)
{
    return rptest::naive_conditions_graph(Hypergraph::from_graph(g), PackingSpec::spanning(ell));
}

} // namespace

TEST_CASE("spanning forest condition examples")
{
    std::vector<int> ones{1, 1};
    CHECK(check_condition_25(k4(), 2, ones).holds);
    CHECK(naive_condition_25(k4(), ones));

    Graph edge(2, {{0, 1}});
    auto r = check_condition_25(edge, 2, ones);
    CHECK_FALSE(r.holds);
    CHECK(r.witness == Blocks{{0}, {1}});
    CHECK_FALSE(naive_condition_25(edge, ones));

    rptest::Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        int n = rng.uniform(1, 6);
        auto g = rptest::random_graph(rng, n, rng.uniform(0, 6));
        std::vector<int> all{n};
        CHECK(check_condition_25(g, 1, all).holds);
        CHECK(check_condition_25_matroid(g, 1, all));
    }
}

TEST_CASE("matroid form of the spanning condition")
{
    std::vector<int> ones{1, 1};
    CHECK(check_condition_25_matroid(k4(), 2, ones));
    CHECK(truncated_sum_rank(k4(), ones) == 6);
    Graph path(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(check_condition_25_matroid(path, 2, ones));
    CHECK_FALSE(naive_spanning_exists(path, ones));
    std::vector<int> two_one{2, 1};
    CHECK(check_condition_25_matroid(k4(), 2, two_one));
    CHECK(naive_spanning_exists(k4(), two_one));
}

TEST_CASE("spanning forests on small graphs")
{
    std::vector<int> ones{1, 1};
    auto r = pack_spanning_forests(k4(), 2, ones);
    REQUIRE(r.feasible());
    CHECK(verify_regular_forest_packing(k4(), *r.packing, PackingSpec::spanning(ones)).ok());
    CHECK(naive_spanning_exists(k4(), ones));

    Graph two(2, {});
    std::vector<int> both{2};
    auto t = pack_spanning_forests(two, 1, both);
    REQUIRE(t.feasible());
    CHECK(t.packing->members[0].edges.empty());
    CHECK(t.packing->members[0].roots == VertexList{0, 1});

    Graph path(3, {{0, 1}, {1, 2}});
    auto p = pack_spanning_forests(path, 2, ones);
    REQUIRE_FALSE(p.feasible());
    auto sp = Subpartition::from_blocks(3, p.infeasible->witness);
    CHECK(sp.size() >= 1);
    CHECK(rptest::naive_capped({0, 1, 1}, sp.size()) + entering_count(path, sp) < 2L * sp.size());

    std::vector<int> too_many{4};
    CHECK_THROWS_AS(pack_spanning_forests(path, 1, too_many), SpecError);
}

TEST_CASE("spanning forest checkers agree on random graphs")
{
    rptest::Rng rng(52);
    for (int trial = 0; trial < 150; ++trial) {
        int n = rng.uniform(1, 5);
        auto g = rptest::random_graph(rng, n, rng.uniform(0, 7));
        int k = rng.uniform(1, 3);
        std::vector<int> ell(static_cast<std::size_t>(k));
        for (auto& x : ell) x = rng.uniform(1, n);
        bool cond = check_condition_25(g, k, ell).holds;
        CHECK(cond == naive_condition_25(g, ell));
        CHECK(cond == check_condition_25_matroid(g, k, ell));
        auto r = pack_spanning_forests(g, k, ell);
        CHECK(cond == r.feasible());
        if (r.feasible()) CHECK(verify_regular_forest_packing(g, *r.packing, PackingSpec::spanning(ell)).ok());
        if (g.edge_count() <= 6) CHECK(cond == naive_spanning_exists(g, ell));
    }
}

TEST_CASE("regular forest packing examples")
{
    std::vector<int> twos{2, 2};
    auto r = pack_regular_forests(k4(), 1, twos);
    REQUIRE(r.feasible());
    CHECK(verify_regular_forest_packing(k4(), *r.packing, PackingSpec::exact(1, twos)).ok());
    CHECK(brute_force_regular_packing(k4(), PackingSpec::exact(1, twos)).has_value());

    Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    std::vector<int> ones{1, 1, 1};
    auto t = pack_regular_forests(tri, 1, ones);
    REQUIRE(t.feasible());
    CHECK(verify_regular_forest_packing(tri, *t.packing, PackingSpec::exact(1, ones)).ok());
    for (const auto& m : t.packing->members) CHECK(m.support.size() == 1);
    CHECK(brute_force_regular_packing(tri, PackingSpec::exact(1, ones)).has_value());

    std::vector<int> spanning{1, 1};
    auto s = pack_regular_forests(k4(), 2, spanning);
    REQUIRE(s.feasible());
    CHECK(verify_regular_forest_packing(k4(), *s.packing, PackingSpec::spanning(spanning)).ok());
}

TEST_CASE("exchange loop keeps its invariants")
{
    rptest::Rng rng(53);
    int traced = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.uniform(2, 6);
        auto g = rptest::random_graph(rng, n, rng.uniform(0, 10));
        int k = rng.uniform(2, 4);
        int h = rng.uniform(1, k - 1);
        std::vector<int> ell(static_cast<std::size_t>(k));
        for (auto& x : ell) x = rng.uniform(1, n);

        int last_promoted = 0;
        RegularPackingOptions opts;
        opts.trace = [&](const RegularPackingState& s, std::string_view) {
            ++traced;
            long sum = 0;
            int cmin = n;
            std::vector<int> owner(static_cast<std::size_t>(g.edge_count()), 0);
            for (const auto* list : {&s.fixed, &s.active})
                for (const auto& f : *list) {
                    UnionFind uf(n);
                    for (int e : f) {
                        CHECK(uf.unite(g.edge(e).u, g.edge(e).v));
                        CHECK(++owner[static_cast<std::size_t>(e)] == 1);
                    }
                    if (list == &s.active) {
                        sum += uf.component_count();
                        cmin = std::min(cmin, uf.component_count());
                    }
                }
            long remaining = 0;
            for (std::size_t j = static_cast<std::size_t>(s.promoted); j < s.target.size(); ++j) remaining += s.target[j];
            CHECK(sum == remaining);
            CHECK(s.promoted >= last_promoted);
            last_promoted = s.promoted;
            if (!s.active.empty()) CHECK(cmin >= s.target[static_cast<std::size_t>(s.promoted)]);
        };
        auto r = pack_regular_forests(g, h, ell, opts);
        CHECK(r.feasible() == check_conditions_27(g, h, ell).holds);
        if (r.feasible()) CHECK(verify_regular_forest_packing(g, *r.packing, PackingSpec::exact(h, ell)).ok());
    }
    CHECK(traced > 0);
}

TEST_CASE("bounded forest packing examples")
{
    PackingSpec degenerate{2, 2, {2, 1, 1}, {2, 1, 1}};
    auto r = pack_regular_forests_bounded(k4(), degenerate);
    REQUIRE(r.feasible());
    CHECK(verify_regular_forest_packing(k4(), *r.packing, degenerate).ok());
    std::vector<int> ones{1, 1};
    CHECK(r.packing == pack_spanning_forests(k4(), 2, ones).packing);

    Graph isolated(3, {});
    PackingSpec three{1, 3, {3, 1, 1, 1}, {3, 1, 1, 1}};
    auto t = pack_regular_forests_bounded(isolated, three);
    REQUIRE(t.feasible());
    for (const auto& m : t.packing->members) CHECK(m.support.size() == 1);

    PackingSpec loose{2, 3, {3, 1, 1, 1}, {4, 2, 2, 2}};
    auto l = pack_regular_forests_bounded(k4(), loose);
    REQUIRE(l.feasible());
    CHECK(verify_regular_forest_packing(k4(), *l.packing, loose).ok());
    int total = 0;
    for (const auto& m : l.packing->members) {
        CHECK(m.roots.size() >= 1);
        CHECK(m.roots.size() <= 2);
        total += static_cast<int>(m.roots.size());
    }
    CHECK(total >= 3);
    CHECK(total <= 4);
    CHECK(brute_force_regular_packing(k4(), loose).has_value());
}

TEST_CASE("root targets stay within bounds and reach the total")
{
    rptest::Rng rng(54);
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.uniform(1, 6);
        int k = rng.uniform(1, 4);
        auto spec = rptest::random_valid_spec(rng, n, rng.uniform(1, k), k);
        if (static_cast<long>(spec.h) * n < spec.lower[0]) continue;
        auto t = bounded_root_targets(spec, n);
        REQUIRE(static_cast<int>(t.size()) == k);
        long sum = 0;
        for (int i = 0; i < k; ++i) {
            CHECK(t[static_cast<std::size_t>(i)] >= spec.lower[static_cast<std::size_t>(i) + 1]);
            CHECK(t[static_cast<std::size_t>(i)] <= spec.upper[static_cast<std::size_t>(i) + 1]);
            sum += t[static_cast<std::size_t>(i)];
        }
        CHECK(sum == std::min<long>(spec.upper[0], static_cast<long>(spec.h) * n));
    }
}

TEST_CASE("brute force regular packing examples")
{
    CHECK(brute_force_regular_packing(k4(), PackingSpec::spanning({1, 1})).has_value());
    CHECK_FALSE(brute_force_regular_packing(Graph(2, {{0, 1}}), PackingSpec::spanning({1, 1})).has_value());
    auto one = brute_force_regular_packing(Graph(1, {}), PackingSpec::exact(1, {1}));
    REQUIRE(one.has_value());
    CHECK(one->members[0].roots == VertexList{0});
    CHECK_THROWS_AS(brute_force_regular_packing(Graph(2, std::vector<Edge>(11, Edge{0, 1})), PackingSpec::exact(1, {1})),
                    CapExceeded);
}

TEST_CASE("regular and bounded packings agree with brute force")
{
    rptest::Rng rng(55);
    for (int trial = 0; trial < 80; ++trial) {
        int n = rng.uniform(1, 4);
        auto g = rptest::random_graph(rng, n, rng.uniform(0, 6));
        int k = rng.uniform(1, 3);
        int h = rng.uniform(1, k);
        auto spec = rptest::random_valid_spec(rng, n, h, k);
        auto r = pack_regular_forests_bounded(g, spec);
        bool cond = check_conditions_28(g, spec).holds;
        CHECK(r.feasible() == cond);
        CHECK(brute_force_regular_packing(g, spec).has_value() == cond);
        CHECK(cond == rptest::naive_conditions_graph(Hypergraph::from_graph(g), spec));
        if (r.feasible()) CHECK(verify_regular_forest_packing(g, *r.packing, spec).ok());
    }
}
