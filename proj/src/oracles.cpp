#include "rootpack/oracles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fmt/format.h>
#include <map>
#include <set>

namespace rootpack {

OracleInstance OracleInstance::of(const Graph& g, const PackingSpec& spec)
{
    OracleInstance inst{g.vertex_count(), false, {}, spec};
    for (const auto& e : g.edges()) inst.candidates.push_back({{e.u, e.v}});
    return inst;
}

OracleInstance OracleInstance::of(const Hypergraph& g, const PackingSpec& spec)
{
    OracleInstance inst{g.vertex_count(), false, {}, spec};
    for (const auto& x : g.hyperedges()) {
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t a = 0; a < x.size(); ++a) {
            for (std::size_t b = a + 1; b < x.size(); ++b) pairs.emplace_back(x[a], x[b]);
        }
        inst.candidates.push_back(std::move(pairs));
    }
    return inst;
}

OracleInstance OracleInstance::of(const Dypergraph& d, const PackingSpec& spec)
{
    OracleInstance inst{d.vertex_count(), true, {}, spec};
    for (const auto& a : d.hyperarcs()) {
        std::vector<std::pair<int, int>> pairs;
        for (int t : a.tails) pairs.emplace_back(t, a.head);
        inst.candidates.push_back(std::move(pairs));
    }
    return inst;
}

namespace {

struct MemberState {
    std::array<std::uint8_t, 16> comp{};
    std::uint32_t touched = 0;
    std::uint32_t heads = 0;
    int edges = 0;
};

class Search {
public:
    Search(const OracleInstance& inst, OracleStats* stats)
        : in_(inst), n_(inst.n), k_(inst.spec.k), h_(inst.spec.h), m_(static_cast<int>(inst.candidates.size())),
          stats_(stats)
    {
        st_.resize(static_cast<std::size_t>(k_));
        for (auto& s : st_) {
            for (int v = 0; v < n_; ++v) s.comp[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(v);
        }
        touch_.assign(static_cast<std::size_t>(n_), 0);
        member_of_.assign(static_cast<std::size_t>(m_), -1);
        pair_of_.assign(static_cast<std::size_t>(m_), -1);
        const long hn = static_cast<long>(h_) * n_;
        max_used_ = hn - in_.spec.lower[0];
        min_used_ = hn - in_.spec.upper[0];
        // Members with equal bounds are interchangeable: open them in index order.
        same_as_prev_.assign(static_cast<std::size_t>(k_), false);
        for (int i = 1; i < k_; ++i) {
            const auto si = static_cast<std::size_t>(i);
            same_as_prev_[si] = in_.spec.lower[si + 1] == in_.spec.lower[si] && in_.spec.upper[si + 1] == in_.spec.upper[si];
        }
    }

    std::optional<OracleSolution> run()
    {
        if (dfs(0)) return solution_;
        return std::nullopt;
    }

private:
    int lower(int i) const { return in_.spec.lower[static_cast<std::size_t>(i) + 1]; }
    int upper(int i) const { return in_.spec.upper[static_cast<std::size_t>(i) + 1]; }

    bool dfs(int idx)
    {
        if (stats_) ++stats_->nodes;
        if (idx == m_) return leaf();
        if (used_ + (m_ - idx) < min_used_) return false;
        const auto& pairs = in_.candidates[static_cast<std::size_t>(idx)];
        for (int i = 0; i < k_; ++i) {
            auto& s = st_[static_cast<std::size_t>(i)];
            if (s.edges == 0 && i > 0 && same_as_prev_[static_cast<std::size_t>(i)] &&
                st_[static_cast<std::size_t>(i) - 1].edges == 0) {
                continue;
            }
            if (s.edges + 1 > n_ - lower(i) || used_ + 1 > max_used_) continue;
            for (std::size_t c = 0; c < pairs.size(); ++c) {
                const auto [u, v] = pairs[c];
                if (s.comp[static_cast<std::size_t>(u)] == s.comp[static_cast<std::size_t>(v)]) continue;
                if (in_.directed && (s.heads >> v & 1U)) continue;
                const bool new_u = !(s.touched >> u & 1U);
                const bool new_v = !(s.touched >> v & 1U);
                if ((new_u && touch_[static_cast<std::size_t>(u)] + 1 > h_) ||
                    (new_v && touch_[static_cast<std::size_t>(v)] + 1 > h_)) {
                    continue;
                }
                const MemberState saved = s;
                const auto from = s.comp[static_cast<std::size_t>(v)];
                const auto to = s.comp[static_cast<std::size_t>(u)];
                for (int w = 0; w < n_; ++w) {
                    if (s.comp[static_cast<std::size_t>(w)] == from) s.comp[static_cast<std::size_t>(w)] = to;
                }
                s.touched |= (1U << u) | (1U << v);
                if (in_.directed) s.heads |= 1U << v;
                ++s.edges;
                if (new_u) ++touch_[static_cast<std::size_t>(u)];
                if (new_v) ++touch_[static_cast<std::size_t>(v)];
                ++used_;
                member_of_[static_cast<std::size_t>(idx)] = i;
                pair_of_[static_cast<std::size_t>(idx)] = static_cast<int>(c);

                if (dfs(idx + 1)) return true;

                --used_;
                if (new_u) --touch_[static_cast<std::size_t>(u)];
                if (new_v) --touch_[static_cast<std::size_t>(v)];
                s = saved;
            }
        }
        member_of_[static_cast<std::size_t>(idx)] = -1;
        pair_of_[static_cast<std::size_t>(idx)] = -1;
        return dfs(idx + 1);
    }

    bool leaf()
    {
        if (stats_) ++stats_->leaves;
        std::vector<int> base(static_cast<std::size_t>(k_));
        long total = 0;
        for (int i = 0; i < k_; ++i) {
            const auto& s = st_[static_cast<std::size_t>(i)];
            const int touched = std::popcount(s.touched);
            base[static_cast<std::size_t>(i)] = touched - s.edges;
            // Extra isolated roots can only come from untouched vertices.
            if (base[static_cast<std::size_t>(i)] > upper(i) || base[static_cast<std::size_t>(i)] + (n_ - touched) < lower(i)) {
                return false;
            }
            total += base[static_cast<std::size_t>(i)];
        }
        for (int v = 0; v < n_; ++v) total += h_ - touch_[static_cast<std::size_t>(v)];
        if (total < in_.spec.lower[0] || total > in_.spec.upper[0]) return false;

        std::vector<std::uint32_t> key;
        for (const auto& s : st_) key.push_back(s.touched);
        for (int b : base) key.push_back(static_cast<std::uint32_t>(b));
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, assign_isolated(base)).first;
        if (!it->second) return false;
        build_solution(*it->second);
        return true;
    }

    // Chooses, for every vertex v, h - touch(v) members not touching v that take v as an
    // isolated root, so that each member's root count lands in its bounds.
    std::optional<std::vector<std::uint32_t>> assign_isolated(const std::vector<int>& base)
    {
        std::vector<std::vector<std::uint32_t>> options(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            const int need = h_ - touch_[static_cast<std::size_t>(v)];
            std::uint32_t allowed = 0;
            for (int i = 0; i < k_; ++i) {
                if (!(st_[static_cast<std::size_t>(i)].touched >> v & 1U)) allowed |= 1U << i;
            }
            for (std::uint32_t sub = 0; sub < (1U << k_); ++sub) {
                if ((sub & ~allowed) == 0 && std::popcount(sub) == need) options[static_cast<std::size_t>(v)].push_back(sub);
            }
            if (options[static_cast<std::size_t>(v)].empty()) return std::nullopt;
        }
        std::vector<int> count(static_cast<std::size_t>(k_), 0);
        std::vector<std::uint32_t> pick(static_cast<std::size_t>(n_));
        std::set<std::pair<int, std::vector<int>>> dead;

        auto rec = [&](auto&& self, int v) -> bool {
            if (v == n_) {
                for (int i = 0; i < k_; ++i) {
                    if (base[static_cast<std::size_t>(i)] + count[static_cast<std::size_t>(i)] < lower(i)) return false;
                }
                return true;
            }
            if (dead.count({v, count})) return false;
            for (auto sub : options[static_cast<std::size_t>(v)]) {
                bool ok = true;
                for (int i = 0; i < k_; ++i) {
                    if ((sub >> i & 1U) && base[static_cast<std::size_t>(i)] + count[static_cast<std::size_t>(i)] + 1 > upper(i)) {
                        ok = false;
                    }
                }
                if (!ok) continue;
                for (int i = 0; i < k_; ++i) count[static_cast<std::size_t>(i)] += static_cast<int>(sub >> i & 1U);
                pick[static_cast<std::size_t>(v)] = sub;
                if (self(self, v + 1)) return true;
                for (int i = 0; i < k_; ++i) count[static_cast<std::size_t>(i)] -= static_cast<int>(sub >> i & 1U);
            }
            dead.insert({v, count});
            return false;
        };
        if (!rec(rec, 0)) return std::nullopt;
        return pick;
    }

    void build_solution(const std::vector<std::uint32_t>& pick)
    {
        solution_.members.assign(static_cast<std::size_t>(k_), {});
        for (int e = 0; e < m_; ++e) {
            const int i = member_of_[static_cast<std::size_t>(e)];
            if (i < 0) continue;
            auto& mem = solution_.members[static_cast<std::size_t>(i)];
            mem.elements.push_back(e);
            mem.pairs.push_back(in_.candidates[static_cast<std::size_t>(e)][static_cast<std::size_t>(pair_of_[static_cast<std::size_t>(e)])]);
        }
        for (int i = 0; i < k_; ++i) {
            const auto& s = st_[static_cast<std::size_t>(i)];
            auto& mem = solution_.members[static_cast<std::size_t>(i)];
            std::set<int> seen_comp;
            for (int v = 0; v < n_; ++v) {
                const bool extra = pick[static_cast<std::size_t>(v)] >> i & 1U;
                if (s.touched >> v & 1U) {
                    mem.core.push_back(v);
                    const bool is_root = in_.directed ? !(s.heads >> v & 1U)
                                                      : seen_comp.insert(s.comp[static_cast<std::size_t>(v)]).second;
                    if (is_root) mem.roots.push_back(v);
                } else if (extra) {
                    mem.core.push_back(v);
                    mem.roots.push_back(v);
                }
            }
        }
    }

    const OracleInstance& in_;
    int n_;
    int k_;
    int h_;
    int m_;
    OracleStats* stats_;
    std::vector<MemberState> st_;
    std::vector<int> touch_;
    std::vector<int> member_of_;
    std::vector<int> pair_of_;
    std::vector<bool> same_as_prev_;
    long used_ = 0;
    long max_used_ = 0;
    long min_used_ = 0;
    std::map<std::vector<std::uint32_t>, std::optional<std::vector<std::uint32_t>>> cache_;
    OracleSolution solution_;
};

} // namespace

std::optional<OracleSolution> search_packing(const OracleInstance& inst, const OracleLimits& limits, OracleStats* stats)
{
    const auto& spec = inst.spec;
    if (spec.k < 1 || spec.h < 1 || spec.lower.size() != static_cast<std::size_t>(spec.k) + 1 ||
        spec.upper.size() != spec.lower.size()) {
        throw SpecError("oracle needs a well-formed spec");
    }
    const int m = static_cast<int>(inst.candidates.size());
    if (m > limits.max_elements) {
        throw CapExceeded(fmt::format("oracle: {} elements exceed the limit {}", m, limits.max_elements));
    }
    if (inst.n > limits.max_vertices || inst.n > 16) {
        throw CapExceeded(fmt::format("oracle: {} vertices exceed the limit {}", inst.n, limits.max_vertices));
    }
    if (static_cast<long>(spec.h) * inst.n > limits.max_coverage) {
        throw CapExceeded(fmt::format("oracle: h*|V| = {} exceeds the limit {}", static_cast<long>(spec.h) * inst.n,
                                      limits.max_coverage));
    }
    if (spec.k > 16) throw CapExceeded("oracle: more than 16 members");
    Search search(inst, stats);
    return search.run();
}

} // namespace rootpack
