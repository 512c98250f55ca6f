// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "rootpack/cli.hpp"
#include "rootpack/directed.hpp"
#include "rootpack/forest_packing.hpp"
#include "rootpack/hyper_packing.hpp"
#include "rootpack/io.hpp"
#include "rootpack/matroids.hpp"
#include "rootpack/theorems.hpp"
#include "support.hpp"

using namespace rootpack;
using rptest::Rng;

namespace {

constexpr std::uint64_t base_seed = 20240601;

const SolveOptions serial_opts{EnumerationCaps{}.partitions, 9, Exec::serial, true};

struct Tally {
    long cases = 0;
    long failures = 0;
    long positives = 0;
    std::string first_failure;

    bool pass() const { return failures == 0 && cases > 0; }
};

// Runs `body(i, positive)` for every case in parallel. A case fails when it returns a
// nonempty message or throws.
Tally run_cases(long count, const std::function<std::string(long, bool&)>& body)
{
    Tally t;
    t.cases = count;
    long failures = 0;
    long positives = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : failures, positives)
    for (long i = 0; i < count; ++i) {
        std::string why;
        bool positive = false;
        try {
            why = body(i, positive);
        } catch (const std::exception& e) {
            why = fmt::format("exception: {}", e.what());
        }
        positives += positive;
        if (!why.empty()) {
            ++failures;
#pragma omp critical
            if (t.first_failure.empty()) t.first_failure = fmt::format("case {}: {}", i, why);
        }
    }
    t.failures = failures;
    t.positives = positives;
    return t;
}

std::string summary(const Tally& t)
{
    auto s = fmt::format("{} cases, {} feasible, {} failures", t.cases, t.positives, t.failures);
    if (!t.first_failure.empty()) s += "; first: " + t.first_failure;
    return s;
}

std::string agree_text(std::initializer_list<std::pair<const char*, bool>> answers)
{
    std::string s;
    for (const auto& [name, v] : answers) s += fmt::format("{}={} ", name, v);
    return s;
}

bool all_equal(std::initializer_list<bool> xs)
{
    return std::all_of(xs.begin(), xs.end(), [&](bool x) { return x == *xs.begin(); });
}

// All multigraphs with at most `max_edges` edges on n vertices, as multisets of vertex pairs.
std::vector<Graph> all_multigraphs(int n, int max_edges)
{
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    std::vector<Graph> out;
    std::vector<Edge> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        out.emplace_back(n, cur);
        if (static_cast<int>(cur.size()) == max_edges) return;
        for (std::size_t i = from; i < pairs.size(); ++i) {
            cur.push_back(pairs[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::string c1_spanning_forests(Tally& t)
{
    struct Case {
        const Graph* g;
        std::vector<int> ell;
    };
    std::vector<std::vector<Graph>> graphs;
    for (int n = 1; n <= 4; ++n) graphs.push_back(all_multigraphs(n, 6));
    std::vector<Case> cases;
    for (const auto& list : graphs)
        for (const auto& g : list) {
            const int n = g.vertex_count();
            for (int k = 1; k <= 3; ++k) {
                std::vector<int> ell(static_cast<std::size_t>(k), 1);
                for (;;) {
                    cases.push_back({&g, ell});
                    int i = 0;
                    while (i < k && ell[static_cast<std::size_t>(i)] == n) ell[static_cast<std::size_t>(i++)] = 1;
                    if (i == k) break;
                    ++ell[static_cast<std::size_t>(i)];
                }
            }
        }
    t = run_cases(static_cast<long>(cases.size()), [&](long i, bool& positive) -> std::string {
        const auto& c = cases[static_cast<std::size_t>(i)];
        const int k = static_cast<int>(c.ell.size());
        const bool cond = check_condition_25(*c.g, k, c.ell, serial_opts).holds;
        const bool mat = check_condition_25_matroid(*c.g, k, c.ell);
        const auto packed = pack_spanning_forests(*c.g, k, c.ell);
        const auto spec = PackingSpec::spanning(c.ell);
        const bool brute = brute_force_regular_packing(*c.g, spec).has_value();
        positive = cond;
        if (packed.feasible() && !verify_regular_forest_packing(*c.g, *packed.packing, spec).ok())
            return "packing failed verification";
        if (!all_equal({cond, mat, packed.feasible(), brute}))
            return agree_text({{"conditions", cond}, {"matroid", mat}, {"pack", packed.feasible()}, {"brute", brute}});
        return {};
    });
    return summary(t);
}

std::string c2_matroid_partition(Tally& t)
{
    t = run_cases(500, [](long i, bool& positive) -> std::string {
        Rng rng(base_seed + 2000 + static_cast<std::uint64_t>(i));
        const int n = rng.uniform(2, 6);
        const auto g = rptest::random_graph(rng, n, rng.uniform(1, 10));
        MatroidList ms;
        const int k = rng.uniform(1, 4);
        for (int j = 0; j < k; ++j) {
            auto base = std::make_shared<GraphicMatroid>(g);
            if (rng.coin()) ms.push_back(std::make_shared<TruncatedMatroid>(base, rng.uniform(0, n - 1)));
            else ms.push_back(base);
        }
        std::vector<int> z;
        for (int e = 0; e < g.edge_count(); ++e)
            if (rng.coin(0.8)) z.push_back(e);
        const auto r = matroid_partition(ms, z);
        const int brute = sum_rank_bruteforce(ms, z, Exec::serial);
        positive = r.size() == static_cast<int>(z.size());
        for (std::size_t j = 0; j < ms.size(); ++j)
            if (ms[j]->rank(r.classes[j]) != static_cast<int>(r.classes[j].size())) return "dependent color class";
        if (r.size() != brute) return fmt::format("partition size {} but rank formula {}", r.size(), brute);
        return {};
    });
    return summary(t);
}

std::string c3_regular_forests(Tally& t)
{
    t = run_cases(300, [](long i, bool& positive) -> std::string {
        Rng rng(base_seed + 3000 + static_cast<std::uint64_t>(i));
        const int n = rng.uniform(1, 5);
        const auto g = rptest::random_graph(rng, n, rng.uniform(0, 8));
        const int k = rng.uniform(1, 4);
        const int h = rng.uniform(1, k);
        std::vector<int> ell(static_cast<std::size_t>(k));
        for (auto& x : ell) x = rng.uniform(1, n);
        const auto spec = PackingSpec::exact(h, ell);
        const bool cond = check_conditions_27(g, h, ell, serial_opts).holds;
        const auto packed = pack_regular_forests(g, h, ell);
        const bool brute = brute_force_regular_packing(g, spec).has_value();
        positive = cond;
        if (packed.feasible() && !verify_regular_forest_packing(g, *packed.packing, spec).ok())
            return "packing failed verification";
        if (!all_equal({cond, packed.feasible(), brute}))
            return agree_text({{"conditions", cond}, {"pack", packed.feasible()}, {"brute", brute}});
        return {};
    });
    return summary(t);
}

std::string c4_bounded_forests(Tally& t)
{
    t = run_cases(200, [](long i, bool& positive) -> std::string {
        Rng rng(base_seed + 4000 + static_cast<std::uint64_t>(i));
        const int n = rng.uniform(1, 5);
        const auto g = rptest::random_graph(rng, n, rng.uniform(0, 8));
        const int k = rng.uniform(1, 4);
        const int h = rng.uniform(1, std::min(k, 20 / n));
        const auto spec = rptest::random_valid_spec(rng, n, h, k);
        const bool cond = check_conditions_28(g, spec, serial_opts).holds;
        const auto packed = pack_regular_forests_bounded(g, spec, serial_opts);
        const bool brute = brute_force_regular_packing(g, spec).has_value();
        positive = cond;
        if (packed.feasible() && !verify_regular_forest_packing(g, *packed.packing, spec).ok())
            return "packing failed verification";
        if (!all_equal({cond, packed.feasible(), brute}))
            return agree_text({{"conditions", cond}, {"pack", packed.feasible()}, {"brute", brute}});
        return {};
    });
    return summary(t);
}

std::string c5_hyperforests(Tally& t)
{
    std::atomic<long> steps{0};
    t = run_cases(150, [&](long i, bool& positive) -> std::string {
        Rng rng(base_seed + 5000 + static_cast<std::uint64_t>(i));
        const int n = rng.uniform(1, 5);
        const auto hg = rptest::random_hypergraph(rng, n, rng.uniform(0, 5), 4);
        const int k = rng.uniform(1, 3);
        const int h = rng.uniform(1, std::min(k, 20 / n));
        const auto spec = rptest::random_valid_spec(rng, n, h, k);
        const bool cond = check_conditions_33(hg, spec, serial_opts).holds;
        positive = cond;
        if (cond) {
            std::string broken;
            const auto trimmed = trim_to_graph(hg, spec, serial_opts, [&](const Hypergraph& now, const TrimStep& s) {
                ++steps;
                if (broken.empty() && !check_conditions_33(now, spec, serial_opts).holds)
                    broken = fmt::format("conditions fail after removing {} from hyperedge {}", s.removed, s.hyperedge);
            });
            if (!broken.empty()) return broken;
            if (!trimmed.ok()) return "trimming reported infeasible on a feasible instance";
        }
        const auto packed = pack_hyperforests(hg, spec, serial_opts);
        const bool brute = brute_force_hyperforest_packing(hg, spec).has_value();
        if (packed.feasible() && !verify_hyperforest_packing(hg, *packed.packing, spec).ok())
            return "packing failed verification";
        if (!all_equal({cond, packed.feasible(), brute}))
            return agree_text({{"conditions", cond}, {"pack", packed.feasible()}, {"brute", brute}});
        return {};
    });
    return summary(t) + fmt::format(", {} trimming steps rechecked", steps.load());
}

std::string c6_lattice(Tally& t)
{
    t = run_cases(1000, [](long i, bool& positive) -> std::string {
        Rng rng(base_seed + 6000 + static_cast<std::uint64_t>(i));
        const int n = rng.uniform(1, 8);
        const auto a = rptest::random_partition(rng, n);
        const auto b = rptest::random_partition(rng, n);
        const auto hg = rptest::random_hypergraph(rng, n, rng.uniform(0, 8), 5);
        const auto r = meet_join(a, b);
        positive = r.join.size() < std::min(a.size(), b.size());
        for (const auto* p : {&a, &b})
            for (const auto& x : p->blocks)
                if (std::none_of(r.join.blocks.begin(), r.join.blocks.end(),
                                 [&](const VertexList& j) { return std::includes(j.begin(), j.end(), x.begin(), x.end()); }))
                    return "block outside every join block";
        if (r.join.size() + r.meet.size() != a.size() + b.size()) return "block counts do not add up";
        if (r.meet.size() < std::max(a.size(), b.size()) || std::min(a.size(), b.size()) < r.join.size())
            return "block counts out of order";
        if (entering_count(hg, a) + entering_count(hg, b) < entering_count(hg, r.meet) + entering_count(hg, r.join))
            return "entering count not submodular";
        // Checked last so the properties above are verified on every pair.
        for (const auto& m : r.meet.blocks) {
            bool found = false;
            for (const auto& x : a.blocks)
                for (const auto& y : b.blocks) {
                    VertexList both;
                    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
                    found = found || both == m;
                }
            if (!found)
                return fmt::format("meet block {} of {} and {} is not an intersection of blocks", m, a.blocks, b.blocks);
        }
        return {};
    });
    long tuples = 0;
    long bad = 0;
    for (int l = 1; l <= 8; ++l)
        for (int a1 = 0; a1 <= 8; ++a1)
            for (int a2 = 0; a2 <= 8; ++a2)
                for (int b2 = 0; b2 <= std::min(a1, a2); ++b2) {
                    const int b1 = a1 + a2 - b2;
                    if (b1 > 8) continue;
                    ++tuples;
                    bad += std::min(l, a1) + std::min(l, a2) < std::min(l, b1) + std::min(l, b2);
                }
    if (bad) {
        ++t.failures;
        if (t.first_failure.empty()) t.first_failure = "capped-sum exchange inequality failed";
    }
    return summary(t) + fmt::format(", {} capped-sum tuples, {} violations", tuples, bad);
}

std::string c7_directed(Tally& t)
{
    t = run_cases(100, [](long i, bool& positive) -> std::string {
        Rng rng(base_seed + 7000 + static_cast<std::uint64_t>(i));
        const int n = rng.uniform(1, 4);
        const auto d = rptest::random_dypergraph(rng, n, rng.uniform(0, 5), 3);
        const int k = rng.uniform(1, 3);
        const int h = rng.uniform(1, 3);
        const auto spec = rptest::random_valid_spec(rng, n, h, k);
        const bool cond = check_subpartition_conditions(d, spec, serial_opts).holds;
        const auto packed = pack_branchings_bounded_desk(d, spec, serial_opts);
        const bool brute = brute_force_hyperbranching_packing(d, spec).has_value();
        positive = cond;
        const auto bip = check_bfbg_conditions(BipartiteRealizationInstance::from_packing(d, spec)).holds;
        if (bip != cond) return "bipartite inequalities disagree with the subpartition conditions";
        if (packed.feasible()) {
            if (!verify_hyperbranching_packing(d, *packed.packing, spec).ok()) return "packing failed verification";
            for (const auto& sp : enumerate_subpartitions(n))
                if (!check_packing_entering_bounds(d, *packed.packing, spec, sp).ok()) return "entering bounds fail";
        }
        if (!all_equal({cond, packed.feasible(), brute}))
            return agree_text({{"conditions", cond}, {"pack", packed.feasible()}, {"brute", brute}});
        return {};
    });
    return summary(t);
}

std::string c8_specializations(Tally& t)
{
    const std::vector<std::string> ids{"T8", "T9", "T10", "T13", "T14", "T17", "T25", "T27", "T29", "T30", "T31"};
    std::atomic<long> checks{0};
    t = run_cases(100, [&](long i, bool& positive) -> std::string {
        Rng rng(base_seed + 8000 + static_cast<std::uint64_t>(i));
        const int n = rng.uniform(1, 5);
        const auto g = rptest::random_graph(rng, n, rng.uniform(0, 8));
        std::vector<Arc> arcs;
        for (const auto& e : g.edges()) arcs.push_back(rng.coin() ? Arc{e.u, e.v} : Arc{e.v, e.u});
        const Digraph dg(n, arcs);
        auto hedges = g.edges().empty() ? std::vector<VertexList>{} : Hypergraph::from_graph(g).hyperedges();
        auto darcs = Dypergraph::from_digraph(dg).hyperarcs();
        if (n >= 3) {
            hedges.push_back(rptest::random_subset(rng, n, 3));
            darcs.push_back(rptest::random_dypergraph(rng, n, 1, 2).hyperarc(0));
        }
        const Hypergraph hg(n, hedges);
        const Dypergraph dy(n, darcs);
        const int k = rng.uniform(1, 3);
        const auto spec = rptest::random_valid_spec(rng, n, rng.uniform(1, 3), k);
        for (const auto& id : ids) {
            const auto& info = theorem_info(id);
            Host host;
            switch (info.host) {
            case HostKind::digraph: host = dg; break;
            case HostKind::dypergraph: host = dy; break;
            case HostKind::graph: host = g; break;
            case HostKind::hypergraph: host = hg; break;
            }
            const auto c = check_theorem(info, host, spec, serial_opts);
            ++checks;
            positive = positive || c.unified.holds;
            if (!c.agree())
                return fmt::format("{}: unified={} dedicated={}{}", id, c.unified.holds, c.dedicated.holds,
                                   c.matroid ? fmt::format(" matroid={}", *c.matroid) : "");
        }
        return {};
    });
    return summary(t) + fmt::format(", {} theorem checks", checks.load());
}

std::string c9_partition_reduction(Tally& t)
{
    std::vector<std::vector<int>> instances;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int max_part, int left) {
        if (!cur.empty()) instances.push_back(cur);
        for (int a = std::min(max_part, left); a >= 1; --a) {
            cur.push_back(a);
            rec(a, left - a);
            cur.pop_back();
        }
    };
    rec(12, 12);
    t = run_cases(static_cast<long>(instances.size()), [&](long i, bool& positive) -> std::string {
        const auto& w = instances[static_cast<std::size_t>(i)];
        const auto red = reduce_partition_instance(w);
        const bool split = solve_partition(w).has_value();
        positive = split;
        if (red.odd_total) return split ? "odd total with a split" : "";
        const bool branching = has_regular_branching_packing_with_arcs(red.digraph, red.h, red.k, red.ell);
        if (split != branching) return agree_text({{"partition", split}, {"branchings", branching}});
        return {};
    });
    return summary(t);
}

std::string run_to_string(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return fmt::format("{}\n{}", code, out.str());
}

std::string c10_determinism(Tally& t)
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "rootpack_acceptance";
    fs::create_directories(dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(ROOTPACK_FIXTURES))
        if (entry.path().filename() != "malformed.json") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    Rng rng(base_seed + 10000);
    for (int i = 0; i < 40; ++i) {
        Instance inst;
        const int n = rng.uniform(1, 4);
        for (int v = 0; v < n; ++v) inst.names.push_back(fmt::format("v{}", v));
        const int k = rng.uniform(1, 2);
        inst.spec = rptest::random_valid_spec(rng, n, rng.uniform(1, 2), k);
        switch (i % 4) {
        case 0: inst.type = "graph"; inst.host = rptest::random_graph(rng, n, rng.uniform(0, 6)); break;
        case 1: inst.type = "hypergraph"; inst.host = rptest::random_hypergraph(rng, n, rng.uniform(0, 4), 3); break;
        case 2: inst.type = "digraph"; inst.host = Dypergraph::from_digraph(Digraph(n, [&] {
                    std::vector<Arc> arcs;
                    if (n >= 2)
                        for (int a = rng.uniform(0, 4); a > 0; --a) {
                            const auto e = rptest::random_edge(rng, n);
                            arcs.push_back({e.u, e.v});
                        }
                    return arcs;
                }()));
            break;
        default: inst.type = "dypergraph"; inst.host = rptest::random_dypergraph(rng, n, rng.uniform(0, 4), 2); break;
        }
        const auto path = dir / fmt::format("instance_{}.json", i);
        std::ofstream(path) << to_json(inst).dump(2);
        files.push_back(path.string());
    }
    const int default_threads = omp_get_max_threads();
    // At least four so the comparison is meaningful on single-core machines.
    const int threads = std::max(4, default_threads);
    t = run_cases(static_cast<long>(files.size()), [&](long i, bool& positive) -> std::string {
        const auto& f = files[static_cast<std::size_t>(i)];
        const std::vector<std::string> args{"pack", f, "--seed", "7"};
        const auto first = run_to_string(args);
        positive = first.front() == '0';
        for (int rep = 0; rep < 2; ++rep)
            if (run_to_string(args) != first) return fs::path(f).filename().string() + ": report differs on rerun";
        return {};
    });
    // Rerun serially with one thread and with all threads; the reports must not change.
    std::vector<std::string> single;
    omp_set_num_threads(1);
    for (const auto& f : files) single.push_back(run_to_string({"pack", f, "--seed", "7"}));
    omp_set_num_threads(threads);
    for (std::size_t i = 0; i < files.size(); ++i)
        if (run_to_string({"pack", files[i], "--seed", "7"}) != single[i]) {
            ++t.failures;
            if (t.first_failure.empty()) t.first_failure = files[i] + ": report depends on the thread count";
        }
    omp_set_num_threads(default_threads);
    return summary(t) + fmt::format(", compared at 1 and {} threads", threads);
}

} // namespace

// With arguments, runs only the listed criterion ids.
int main(int argc, char** argv)
{
    struct Criterion {
        int id;
        const char* name;
        std::string (*run)(Tally&);
    };
    const std::vector<Criterion> criteria{
        {1, "spanning forests: conditions, matroid rank, construction, brute force", c1_spanning_forests},
        {2, "matroid partition size equals the rank formula", c2_matroid_partition},
        {3, "regular forests: conditions, construction, brute force", c3_regular_forests},
        {4, "bounded regular forests: conditions, construction, brute force", c4_bounded_forests},
        {5, "hyperforests: conditions, trimming pipeline, brute force", c5_hyperforests},
        {6, "partition lattice identities and submodularity", c6_lattice},
        {7, "directed pipeline: subpartition conditions, bipartite route, brute force", c7_directed},
        {8, "specialized conditions equal the general checkers", c8_specializations},
        {9, "PARTITION reduction", c9_partition_reduction},
        {10, "pack reports are byte-identical on rerun", c10_determinism},
    };
    std::vector<int> only;
    for (int a = 1; a < argc; ++a) only.push_back(std::stoi(argv[a]));
    bool all = true;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        Tally t;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = c.run(t);
        } catch (const std::exception& e) {
            t.failures = std::max(1L, t.failures);
            detail = fmt::format("aborted: {}", e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = t.pass();
        all = all && pass;
        fmt::print("{} criterion {:>2} ({}): {} [{:.3f} s]\n", pass ? "PASS" : "FAIL", c.id, c.name, detail, secs);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
