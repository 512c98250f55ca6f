#include <doctest.h>

#include <set>

#include "rootpack/theorems.hpp"
#include "support.hpp"

using namespace rootpack;

TEST_CASE("registry covers T8 through T33")
{
    const auto& reg = theorem_registry();
    CHECK(reg.size() == 26);
    std::set<std::string> ids;
    for (const auto& t : reg) ids.insert(t.id);
    for (int i = 8; i <= 33; ++i) CHECK(ids.count("T" + std::to_string(i)) == 1);
    CHECK(theorem_info("T25").host == HostKind::graph);
    CHECK(theorem_info("T8").roots == RootModel::single);
    CHECK_FALSE(theorem_info("T8").regular);
    CHECK(theorem_info("T33").roots == RootModel::bounded);
    CHECK_THROWS_AS(theorem_info("T7"), std::invalid_argument);
}

TEST_CASE("instantiation fixes the unused fields")
{
    PackingSpec given{1, 2, {5, 2, 3}, {6, 3, 3}};
    auto single = instantiate(theorem_info("T8"), given);
    CHECK(single == PackingSpec::spanning({1, 1}));
    auto per = instantiate(theorem_info("T25"), given);
    CHECK(per == PackingSpec::spanning({2, 3}));
    auto regular = instantiate(theorem_info("T27"), given);
    CHECK(regular == PackingSpec::exact(1, {2, 3}));
    CHECK(instantiate(theorem_info("T33"), given) == given);
}

TEST_CASE("host adaptation")
{
    Graph g(2, {{0, 1}});
    Host host = g;
    CHECK(std::holds_alternative<Hypergraph>(adapt_host(theorem_info("T29"), host)));
    Host hyper = Hypergraph(3, {{0, 1, 2}});
    CHECK_THROWS_AS(adapt_host(theorem_info("T25"), hyper), InvalidInstance);
    Host dyper = Dypergraph(2, {{{0}, 1}});
    CHECK(std::holds_alternative<Digraph>(adapt_host(theorem_info("T8"), dyper)));
    CHECK_THROWS_AS(adapt_host(theorem_info("T8"), host), InvalidInstance);
}

TEST_CASE("unified and dedicated checkers agree on every theorem")
{
    rptest::Rng rng(81);
    for (const auto& info : theorem_registry()) {
        for (int trial = 0; trial < 25; ++trial) {
            int n = rng.uniform(1, 4);
            int k = rng.uniform(1, 3);
            int h = rng.uniform(1, 3);
            auto spec = rptest::random_valid_spec(rng, n, h, k);
            Host host;
            switch (info.host) {
            case HostKind::graph: host = rptest::random_graph(rng, n, rng.uniform(0, 6)); break;
            case HostKind::hypergraph: host = rptest::random_hypergraph(rng, n, rng.uniform(0, 5), 4); break;
            case HostKind::digraph:
                host = Dypergraph::from_digraph(Digraph(n, [&] {
                    std::vector<Arc> arcs;
                    if (n >= 2)
                        for (int i = rng.uniform(0, 6); i > 0; --i) {
                            auto e = rptest::random_edge(rng, n);
                            arcs.push_back(rng.coin() ? Arc{e.u, e.v} : Arc{e.v, e.u});
                        }
                    return arcs;
                }()));
                break;
            case HostKind::dypergraph: host = rptest::random_dypergraph(rng, n, rng.uniform(0, 5), 3); break;
            }
            try {
                auto c = check_theorem(info, host, spec);
                INFO(info.id);
                CHECK(c.agree());
                CHECK(c.unified.holds == c.dedicated.holds);
                if (c.matroid) CHECK(*c.matroid == c.unified.holds);
            } catch (const SpecError&) {
                // Theorems that keep the given bounds may reject them; both checkers must then refuse.
                CHECK(info.roots != RootModel::single);
            }
        }
    }
}

TEST_CASE("dedicated spanning condition on a known failure")
{
    Host host = Dypergraph(2, {});
    auto c = check_theorem(theorem_info("T8"), host, PackingSpec::spanning({1}));
    CHECK_FALSE(c.unified.holds);
    CHECK_FALSE(c.dedicated.holds);
    CHECK(c.dedicated.witness == Blocks{{0}, {1}});
}
