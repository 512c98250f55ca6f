#include "rootpack/directed.hpp"

#include <algorithm>
#include <bit>
#include <fmt/format.h>
#include <numeric>

#include "rootpack/hyper_packing.hpp"
#include "rootpack/kernels.hpp"

namespace rootpack {

namespace {

std::uint32_t mask_of(std::span<const int> vs)
{
    std::uint32_t m = 0;
    for (int v : vs) m |= 1u << v;
    return m;
}

VertexList vertices_of(std::uint32_t mask)
{
    VertexList out;
    for (int v = 0; mask >> v; ++v) {
        if (mask >> v & 1u) out.push_back(v);
    }
    return out;
}

} // namespace

ConditionReport check_subpartition_conditions(const Dypergraph& d, const PackingSpec& spec, const SolveOptions& opts)
{
    const int n = d.vertex_count();
    require_valid_spec(spec, n);
    if (static_cast<long>(spec.h) * n < spec.lower[0]) {
        ConditionReport r;
        r.holds = false;
        r.violated = Condition::coverage_below_total_roots;
        r.detail = fmt::format("h|V| = {} < ell(0) = {}", static_cast<long>(spec.h) * n, spec.lower[0]);
        return r;
    }
    return scan_subpartition_conditions(Incidence::of(d), spec, opts.subpartition_cap, opts.exec);
}

ConditionReport check_subpartition_conditions(const Digraph& d, const PackingSpec& spec, const SolveOptions& opts)
{
    return check_subpartition_conditions(Dypergraph::from_digraph(d), spec, opts);
}

int in_degree(const Dypergraph& d, std::uint32_t mask)
{
    int count = 0;
    for (const auto& a : d.hyperarcs()) {
        if (!(mask >> a.head & 1u)) continue;
        if (std::any_of(a.tails.begin(), a.tails.end(), [&](int t) { return !(mask >> t & 1u); })) ++count;
    }
    return count;
}

BipartiteRealizationInstance BipartiteRealizationInstance::from_packing(const Dypergraph& d, const PackingSpec& spec)
{
    BipartiteRealizationInstance inst;
    inst.s = spec.k;
    inst.t = d.vertex_count();
    inst.f_s.assign(spec.lower.begin() + 1, spec.lower.end());
    inst.g_s.assign(spec.upper.begin() + 1, spec.upper.end());
    inst.f_t.assign(static_cast<std::size_t>(inst.t), 0);
    inst.g_t.assign(static_cast<std::size_t>(inst.t), spec.h);
    inst.alpha = spec.lower[0];
    inst.beta = spec.upper[0];
    inst.p = [d, h = spec.h](std::uint32_t mask) -> long { return mask == 0 ? 0 : h - in_degree(d, mask); };
    return inst;
}

BipartiteReport check_bfbg_conditions(const BipartiteRealizationInstance& inst)
{
    const int s = inst.s;
    const int t = inst.t;
    if (s + t > 10) throw CapExceeded(fmt::format("bipartite condition check supports |S|+|T| <= 10, got {}", s + t));

    const std::uint32_t xs = 1u << s;
    std::vector<long> fx(xs, 0), gsx(xs, 0);
    std::vector<int> cx(xs, 0);
    for (std::uint32_t x = 0; x < xs; ++x) {
        cx[x] = std::popcount(x);
        for (int i = 0; i < s; ++i) {
            if (x >> i & 1u) fx[x] += inst.f_s[static_cast<std::size_t>(i)];
            else gsx[x] += inst.g_s[static_cast<std::size_t>(i)];
        }
    }

    BipartiteReport report;
    const std::uint32_t all_t = (1u << t) - 1;
    for (std::uint32_t y = 0; y <= all_t; ++y) {
        long fy = 0, gty = 0;
        VertexList z;
        for (int v = 0; v < t; ++v) {
            if (y >> v & 1u) fy += inst.f_t[static_cast<std::size_t>(v)];
            else {
                gty += inst.g_t[static_cast<std::size_t>(v)];
                z.push_back(v);
            }
        }
        const long ny = std::popcount(y);
        SubpartitionStream stream(static_cast<int>(z.size()), 10);
        while (auto sp = stream.next()) {
            long psum = 0;
            Blocks blocks;
            for (const auto& b : sp->blocks) {
                VertexList mapped;
                for (int i : b) mapped.push_back(z[static_cast<std::size_t>(i)]);
                psum += inst.p(mask_of(mapped));
                blocks.push_back(std::move(mapped));
            }
            const long np = sp->size();
            for (std::uint32_t x = 0; x < xs; ++x) {
                ++report.scanned;
                const long common = -cx[x] * ny + psum - cx[x] * np;
                const long lhs[4] = {fy + common, fx[x] + common, inst.alpha + common, fx[x] + fy + common};
                const long rhs[4] = {gsx[x], gty, gsx[x] + gty, inst.beta};
                for (int q = 0; q < 4; ++q) {
                    if (lhs[q] <= rhs[q]) continue;
                    report.holds = false;
                    report.inequality = q + 1;
                    report.x = vertices_of(x);
                    report.y = vertices_of(y);
                    report.blocks = blocks;
                    report.lhs = lhs[q];
                    report.rhs = rhs[q];
                    return report;
                }
            }
        }
    }
    return report;
}

std::optional<std::vector<std::uint32_t>> realize_bipartite(const BipartiteRealizationInstance& inst)
{
    const int s = inst.s;
    const int t = inst.t;
    if (s * t > 20 || t > 16) throw CapExceeded(fmt::format("bipartite realization supports |S||T| <= 20, got {}", s * t));

    const std::uint32_t ys = 1u << t;
    std::vector<long> p(ys);
    for (std::uint32_t y = 0; y < ys; ++y) p[y] = inst.p(y);

    std::vector<long> g_suffix(static_cast<std::size_t>(s) + 1, 0), f_suffix(static_cast<std::size_t>(s) + 1, 0);
    for (int i = s - 1; i >= 0; --i) {
        g_suffix[static_cast<std::size_t>(i)] = g_suffix[static_cast<std::size_t>(i) + 1] + inst.g_s[static_cast<std::size_t>(i)];
        f_suffix[static_cast<std::size_t>(i)] = f_suffix[static_cast<std::size_t>(i) + 1] + inst.f_s[static_cast<std::size_t>(i)];
    }

    std::vector<std::uint32_t> masks(static_cast<std::size_t>(s), 0);
    std::vector<int> deg(static_cast<std::size_t>(t), 0);
    auto leaf_ok = [&](long edges) {
        if (edges < inst.alpha || edges > inst.beta) return false;
        for (int v = 0; v < t; ++v) {
            if (deg[static_cast<std::size_t>(v)] < inst.f_t[static_cast<std::size_t>(v)]) return false;
        }
        for (std::uint32_t y = 1; y < ys; ++y) {
            long gamma = 0;
            for (auto m : masks) gamma += (m & y) != 0;
            if (gamma < p[y]) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int i, long edges) -> bool {
        if (i == s) return leaf_ok(edges);
        const auto si = static_cast<std::size_t>(i);
        if (edges + g_suffix[si] < inst.alpha || edges + f_suffix[si] > inst.beta) return false;
        // Consecutive vertices of S with equal bounds are interchangeable.
        const bool same = i > 0 && inst.f_s[si] == inst.f_s[si - 1] && inst.g_s[si] == inst.g_s[si - 1];
        const std::uint32_t start = same ? masks[si - 1] : 0;
        for (std::uint32_t m = start; m < ys; ++m) {
            const int c = std::popcount(m);
            if (c < inst.f_s[si] || c > inst.g_s[si]) continue;
            bool fits = true;
            for (int v = 0; v < t && fits; ++v) {
                if (m >> v & 1u) fits = deg[static_cast<std::size_t>(v)] < inst.g_t[static_cast<std::size_t>(v)];
            }
            if (!fits) continue;
            for (int v = 0; v < t; ++v) deg[static_cast<std::size_t>(v)] += (m >> v) & 1u;
            masks[si] = m;
            if (self(self, i + 1, edges + c)) return true;
            for (int v = 0; v < t; ++v) deg[static_cast<std::size_t>(v)] -= (m >> v) & 1u;
        }
        return false;
    };
    const bool found = rec(rec, 0, 0);
    if (s + t <= 10) {
        const bool holds = check_bfbg_conditions(inst).holds;
        if (holds != found) {
            throw std::logic_error(fmt::format("bipartite conditions {} but exhaustive realization {}",
                                               holds ? "hold" : "fail", found ? "exists" : "does not exist"));
        }
    }
    if (!found) return std::nullopt;
    return masks;
}

bool is_intersecting_supermodular(int t, const std::function<long(std::uint32_t)>& p)
{
    const std::uint32_t ys = 1u << t;
    std::vector<long> v(ys);
    for (std::uint32_t y = 0; y < ys; ++y) v[y] = p(y);
    for (std::uint32_t a = 1; a < ys; ++a) {
        for (std::uint32_t b = a; b < ys; ++b) {
            if ((a & b) == 0) continue;
            if (v[a] + v[b] > v[a & b] + v[a | b]) return false;
        }
    }
    return true;
}

ConditionReport check_root_family_conditions(const Dypergraph& d, const std::vector<VertexList>& roots, int h)
{
    const int n = d.vertex_count();
    if (n > 20) throw CapExceeded("root family check supports at most 20 vertices");
    ConditionReport r;
    std::vector<std::uint32_t> masks;
    for (const auto& s : roots) masks.push_back(mask_of(s));
    for (int v = 0; v < n; ++v) {
        const auto count = std::count_if(masks.begin(), masks.end(), [&](std::uint32_t m) { return m >> v & 1u; });
        if (count > h) {
            r.holds = false;
            r.violated = Condition::root_multiplicity;
            r.witness = {{v}};
            r.detail = fmt::format("vertex {} is a root of {} members, more than h = {}", v, count, h);
            return r;
        }
    }
    for (std::uint32_t x = 1; x < (1u << n); ++x) {
        ++r.scanned;
        const auto meeting = std::count_if(masks.begin(), masks.end(), [&](std::uint32_t m) { return (m & x) != 0; });
        const long total = meeting + in_degree(d, x);
        if (total < h) {
            r.holds = false;
            r.violated = Condition::root_set_deficit;
            r.witness = {vertices_of(x)};
            r.detail = fmt::format("{} root sets meet the set and {} hyperarcs enter it: {} < {}", meeting,
                                   total - meeting, total, h);
            return r;
        }
    }
    return r;
}

namespace {

class FixedRootSearch {
public:
    FixedRootSearch(const Dypergraph& d, const std::vector<VertexList>& roots, int h)
        : d_(d), n_(d.vertex_count()), k_(static_cast<int>(roots.size())), h_(h), m_(d.arc_count())
    {
        for (const auto& s : roots) roots_.push_back(mask_of(s));
        cover_.assign(static_cast<std::size_t>(n_), 0);
        for (auto m : roots_) {
            for (int v = 0; v < n_; ++v) cover_[static_cast<std::size_t>(v)] += (m >> v) & 1u;
        }
        heads_.assign(static_cast<std::size_t>(k_), 0);
        comp_.assign(static_cast<std::size_t>(k_), std::vector<int>(static_cast<std::size_t>(n_)));
        for (auto& c : comp_) std::iota(c.begin(), c.end(), 0);
        member_.assign(static_cast<std::size_t>(m_), -1);
        tail_.assign(static_cast<std::size_t>(m_), -1);
        remaining_.assign(static_cast<std::size_t>(m_) + 1, std::vector<int>(static_cast<std::size_t>(n_), 0));
        for (int a = m_ - 1; a >= 0; --a) {
            remaining_[static_cast<std::size_t>(a)] = remaining_[static_cast<std::size_t>(a) + 1];
            ++remaining_[static_cast<std::size_t>(a)][static_cast<std::size_t>(d.hyperarc(a).head)];
        }
    }

    std::optional<HyperbranchingPacking> run()
    {
        if (!rec(0)) return std::nullopt;
        HyperbranchingPacking out;
        out.members.resize(static_cast<std::size_t>(k_));
        for (int i = 0; i < k_; ++i) out.members[static_cast<std::size_t>(i)].roots = vertices_of(roots_[static_cast<std::size_t>(i)]);
        for (int a = 0; a < m_; ++a) {
            const int i = member_[static_cast<std::size_t>(a)];
            if (i < 0) continue;
            auto& m = out.members[static_cast<std::size_t>(i)];
            m.elements.push_back(a);
            m.trims.push_back({a, tail_[static_cast<std::size_t>(a)], d_.hyperarc(a).head});
        }
        return out;
    }

private:
    bool leaf() const
    {
        for (int v = 0; v < n_; ++v) {
            if (cover_[static_cast<std::size_t>(v)] != h_) return false;
        }
        for (int a = 0; a < m_; ++a) {
            const int i = member_[static_cast<std::size_t>(a)];
            if (i < 0) continue;
            const auto core = heads_[static_cast<std::size_t>(i)] | roots_[static_cast<std::size_t>(i)];
            if (!(core >> tail_[static_cast<std::size_t>(a)] & 1u)) return false;
        }
        return true;
    }

    bool rec(int a)
    {
        const auto& rem = remaining_[static_cast<std::size_t>(a)];
        for (int v = 0; v < n_; ++v) {
            if (h_ - cover_[static_cast<std::size_t>(v)] > rem[static_cast<std::size_t>(v)]) return false;
        }
        if (a == m_) return leaf();
        const auto& arc = d_.hyperarc(a);
        const int v = arc.head;
        const auto sa = static_cast<std::size_t>(a);
        for (int i = 0; i < k_ && cover_[static_cast<std::size_t>(v)] < h_; ++i) {
            const auto si = static_cast<std::size_t>(i);
            if ((roots_[si] | heads_[si]) >> v & 1u) continue;
            auto& comp = comp_[si];
            for (int tl : arc.tails) {
                if (comp[static_cast<std::size_t>(tl)] == comp[static_cast<std::size_t>(v)]) continue;
                const auto saved = comp;
                const int from = comp[static_cast<std::size_t>(v)];
                const int to = comp[static_cast<std::size_t>(tl)];
                for (auto& c : comp) {
                    if (c == from) c = to;
                }
                heads_[si] |= 1u << v;
                ++cover_[static_cast<std::size_t>(v)];
                member_[sa] = i;
                tail_[sa] = tl;
                if (rec(a + 1)) return true;
                member_[sa] = -1;
                tail_[sa] = -1;
                --cover_[static_cast<std::size_t>(v)];
                heads_[si] &= ~(1u << v);
                comp = saved;
            }
        }
        return rec(a + 1);
    }

    const Dypergraph& d_;
    int n_, k_, h_, m_;
    std::vector<std::uint32_t> roots_;
    std::vector<std::uint32_t> heads_;
    std::vector<int> cover_;
    std::vector<std::vector<int>> comp_;
    std::vector<int> member_;
    std::vector<int> tail_;
    std::vector<std::vector<int>> remaining_;
};

} // namespace

std::optional<HyperbranchingPacking> pack_hyperbranchings_exhaustive(const Dypergraph& d,
                                                                     const std::vector<VertexList>& roots, int h)
{
    const int n = d.vertex_count();
    if (d.arc_count() > 8 || n > 6) {
        throw CapExceeded(fmt::format("exhaustive hyperbranching packing supports 8 hyperarcs and 6 vertices, got {} and {}",
                                      d.arc_count(), n));
    }
    if (h < 1) throw SpecError("h must be positive");
    std::vector<VertexList> family;
    for (const auto& s : roots) {
        auto r = sorted_unique(s);
        if (!r.empty() && (r.front() < 0 || r.back() >= n)) throw InvalidInstance("root vertex out of range");
        family.push_back(std::move(r));
    }
    auto found = FixedRootSearch(d, family, h).run();
    const bool holds = check_root_family_conditions(d, family, h).holds;
    if (holds != found.has_value()) {
        throw std::logic_error(fmt::format("root family conditions {} but exhaustive packing {}",
                                           holds ? "hold" : "fail", found ? "exists" : "does not exist"));
    }
    return found;
}

Diagnostics verify_hyperbranching_packing(const Dypergraph& d, const HyperbranchingPacking& packing,
                                          const PackingSpec& spec)
{
    auto problem = [&](const TrimChoice& t) -> std::string {
        const auto& a = d.hyperarc(t.element);
        if (t.head != a.head) return fmt::format("head {} is not the head {} of the hyperarc", t.head, a.head);
        if (!std::binary_search(a.tails.begin(), a.tails.end(), t.tail)) {
            return fmt::format("tail {} is not a tail of the hyperarc", t.tail);
        }
        return {};
    };
    return verify_branching_packing(d.vertex_count(), d.arc_count(), problem, packing, spec);
}

BranchingPackResult pack_branchings_bounded_desk(const Dypergraph& d, const PackingSpec& spec, const SolveOptions& opts)
{
    const int n = d.vertex_count();
    BranchingPackResult out;
    const auto cond = check_subpartition_conditions(d, spec, opts);
    const auto inst = BipartiteRealizationInstance::from_packing(d, spec);
    const auto bip = check_bfbg_conditions(inst);
    if (bip.holds != cond.holds) {
        throw std::logic_error(fmt::format("subpartition conditions {} but bipartite conditions {}",
                                           cond.holds ? "hold" : "fail", bip.holds ? "hold" : "fail"));
    }
    if (opts.check_invariants && n <= 10 && !is_intersecting_supermodular(n, inst.p)) {
        throw std::logic_error("h - d^-(Y) is not intersecting supermodular on this instance");
    }
    if (!cond.holds) {
        out.infeasible = to_infeasibility(cond);
        return out;
    }
    const auto realization = realize_bipartite(inst);
    if (!realization) throw std::logic_error("bipartite conditions hold but no realization was found");

    std::vector<VertexList> roots;
    for (auto m : *realization) {
        roots.push_back(vertices_of(m));
        out.root_counts.push_back(std::popcount(m));
    }
    auto packing = pack_hyperbranchings_exhaustive(d, roots, spec.h);
    if (!packing) throw std::logic_error("realized root sets admit no packing");
    if (opts.check_invariants) {
        const auto diag = verify_hyperbranching_packing(d, *packing, spec);
        if (!diag.ok()) throw std::logic_error("pipeline packing failed verification: " + diag.problems.front());
    }
    out.packing = std::move(packing);
    return out;
}

std::optional<HyperbranchingPacking> brute_force_hyperbranching_packing(const Dypergraph& d, const PackingSpec& spec,
                                                                        const OracleLimits& limits)
{
    const auto sol = search_packing(OracleInstance::of(d, spec), limits);
    if (!sol) return std::nullopt;
    HyperbranchingPacking out;
    for (const auto& m : sol->members) {
        BranchingMember b;
        b.elements = m.elements;
        b.roots = m.roots;
        for (std::size_t j = 0; j < m.elements.size(); ++j) {
            b.trims.push_back({m.elements[j], m.pairs[j].first, m.pairs[j].second});
        }
        out.members.push_back(std::move(b));
    }
    return out;
}

Diagnostics check_packing_entering_bounds(const Dypergraph& d, const HyperbranchingPacking& packing,
                                          const PackingSpec& spec, const Subpartition& p)
{
    Diagnostics diag;
    const int blocks = p.size();
    long sum_e = 0;
    long sum_blocks = 0;
    for (std::size_t i = 0; i < packing.members.size(); ++i) {
        const auto& m = packing.members[i];
        const auto core = m.core();
        const long e_i = entering_count(d, m.elements, p);
        long p_i = 0;
        for (const auto& b : p.blocks) {
            const bool meets = std::any_of(b.begin(), b.end(), [&](int v) { return std::binary_search(core.begin(), core.end(), v); });
            p_i += meets;
        }
        const long roots = static_cast<long>(m.roots.size());
        const long lo = spec.lower[i + 1];
        const long up = spec.upper[i + 1];
        if (e_i < p_i - roots) diag.add(fmt::format("member {}: {} entering < {} rootless blocks", i + 1, e_i, p_i - roots));
        if (roots - lo + e_i < p_i - std::min<long>(lo, blocks)) diag.add(fmt::format("member {}: lower slack bound fails", i + 1));
        if (e_i < p_i - std::min<long>(up, blocks)) diag.add(fmt::format("member {}: upper bound fails", i + 1));
        sum_e += e_i;
        sum_blocks += p_i;
    }
    const long e = entering_count(d, p);
    if (e < sum_e) diag.add(fmt::format("entering count {} below member sum {}", e, sum_e));
    if (sum_blocks < static_cast<long>(spec.h) * blocks) diag.add("block incidences below h|P|");
    if (auto c = failing_condition(spec, blocks, e, true)) diag.add("condition fails: " + describe_failure(spec, blocks, e, *c));
    return diag;
}

PartitionReduction reduce_partition_instance(const std::vector<int>& weights)
{
    if (weights.empty()) throw std::invalid_argument("weights must be nonempty");
    std::vector<Arc> arcs;
    int next = 0;
    long total = 0;
    for (int a : weights) {
        if (a <= 0) throw std::invalid_argument("weights must be positive");
        for (int j = 0; j < a; ++j) arcs.push_back({next + j, next + j + 1});
        next += a + 1;
        total += a;
    }
    PartitionReduction r;
    r.digraph = Digraph(next, std::move(arcs));
    r.ell = static_cast<int>(total / 2);
    r.odd_total = total % 2 != 0;
    return r;
}

std::optional<std::vector<int>> solve_partition(const std::vector<int>& weights)
{
    const int m = static_cast<int>(weights.size());
    if (m > 24) throw CapExceeded("partition brute force supports at most 24 weights");
    const long total = std::accumulate(weights.begin(), weights.end(), 0L);
    if (total % 2 != 0) return std::nullopt;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        long sum = 0;
        for (int i = 0; i < m; ++i) {
            if (mask >> i & 1u) sum += weights[static_cast<std::size_t>(i)];
        }
        if (sum == total / 2) return vertices_of(mask);
    }
    return std::nullopt;
}

bool has_regular_branching_packing_with_arcs(const Digraph& d, int h, int k, int ell)
{
    const int n = d.vertex_count();
    const int m = d.arc_count();
    if (m > 14 || k > 4 || n > 32) throw CapExceeded("branching packing brute force supports 14 arcs, k <= 4, 32 vertices");
    if (k < h) return false;
    if (ell == 0) return static_cast<long>(k) <= static_cast<long>(h) * n;

    std::vector<int> count(static_cast<std::size_t>(k), 0);
    std::vector<std::uint64_t> heads(static_cast<std::size_t>(k), 0), touched(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<int>> comp(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(n)));
    for (auto& c : comp) std::iota(c.begin(), c.end(), 0);
    std::vector<int> touch(static_cast<std::size_t>(n), 0);

    auto rec = [&](auto&& self, int a) -> bool {
        const int left = m - a;
        for (int c : count) {
            if (c + left < ell) return false;
        }
        if (a == m) return true;
        const auto& arc = d.arcs()[static_cast<std::size_t>(a)];
        for (int i = 0; i < k; ++i) {
            const auto si = static_cast<std::size_t>(i);
            if (i > 0 && count[si - 1] == 0) break; // members are interchangeable
            if (count[si] == ell || (heads[si] >> arc.head & 1u)) continue;
            auto& cp = comp[si];
            if (cp[static_cast<std::size_t>(arc.tail)] == cp[static_cast<std::size_t>(arc.head)]) continue;
            const std::uint64_t new_touch = ((1ull << arc.tail) | (1ull << arc.head)) & ~touched[si];
            bool over = false;
            for (int v : {arc.tail, arc.head}) {
                if ((new_touch >> v & 1u) && touch[static_cast<std::size_t>(v)] == h) over = true;
            }
            if (over) continue;
            const auto saved = cp;
            const int from = cp[static_cast<std::size_t>(arc.head)];
            const int to = cp[static_cast<std::size_t>(arc.tail)];
            for (auto& c : cp) {
                if (c == from) c = to;
            }
            for (int v = 0; v < n; ++v) touch[static_cast<std::size_t>(v)] += (new_touch >> v) & 1u;
            touched[si] |= new_touch;
            heads[si] |= 1ull << arc.head;
            ++count[si];
            if (self(self, a + 1)) return true;
            --count[si];
            heads[si] &= ~(1ull << arc.head);
            touched[si] &= ~new_touch;
            for (int v = 0; v < n; ++v) touch[static_cast<std::size_t>(v)] -= (new_touch >> v) & 1u;
            cp = saved;
        }
        return self(self, a + 1);
    };
    return rec(rec, 0);
}

} // namespace rootpack
