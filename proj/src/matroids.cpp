#include "rootpack/matroids.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <fmt/format.h>

namespace rootpack {

int GraphicMatroid::rank(std::span<const int> subset) const
{
    UnionFind uf(g_.vertex_count());
    int r = 0;
    for (int e : subset) {
        const auto& edge = g_.edge(e);
        if (uf.unite(edge.u, edge.v)) ++r;
    }
    return r;
}

TruncatedMatroid::TruncatedMatroid(std::shared_ptr<const RankOracle> inner, int cap)
    : inner_(std::move(inner)), cap_(cap)
{
    if (!inner_) throw std::invalid_argument("truncation of a null matroid");
    if (cap_ < 0) throw std::invalid_argument("truncation cap must be nonnegative");
}

int TruncatedMatroid::rank(std::span<const int> subset) const
{
    return std::min(inner_->rank(subset), cap_);
}

SumMatroid::SumMatroid(MatroidList parts) : parts_(std::move(parts))
{
    if (parts_.empty()) throw std::invalid_argument("sum of no matroids");
    for (const auto& p : parts_) {
        if (!p || p->ground_size() != parts_.front()->ground_size()) {
            throw std::invalid_argument("summands must share one ground set");
        }
    }
}

int SumMatroid::ground_size() const
{
    return parts_.front()->ground_size();
}

int SumMatroid::rank(std::span<const int> subset) const
{
    return matroid_partition(parts_, subset).size();
}

int RankCache::rank(int matroid, std::vector<int> subset)
{
    std::sort(subset.begin(), subset.end());
    auto key = std::make_pair(matroid, std::move(subset));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ++calls_;
    const int r = (*ms_)[static_cast<std::size_t>(matroid)]->rank(key.second);
    memo_.emplace(std::move(key), r);
    return r;
}

bool RankCache::independent(int matroid, std::vector<int> subset)
{
    const auto size = static_cast<int>(subset.size());
    return rank(matroid, std::move(subset)) == size;
}

namespace {

std::vector<int> with(const std::vector<int>& s, int add, int drop = -1)
{
    std::vector<int> out;
    out.reserve(s.size() + 1);
    for (int x : s) {
        if (x != drop) out.push_back(x);
    }
    out.push_back(add);
    return out;
}

void check_ground(const MatroidList& ms, std::span<const int> z)
{
    if (ms.empty()) throw std::invalid_argument("matroid partition needs at least one matroid");
    const int m = ms.front()->ground_size();
    for (const auto& p : ms) {
        if (!p || p->ground_size() != m) throw std::invalid_argument("matroids must share one ground set");
    }
    for (int x : z) {
        if (x < 0 || x >= m) throw std::invalid_argument(fmt::format("element {} outside the ground set", x));
    }
}

} // namespace

MatroidPartitionResult matroid_partition(const MatroidList& ms, std::span<const int> z_in)
{
    check_ground(ms, z_in);
    const int k = static_cast<int>(ms.size());
    const int m = ms.front()->ground_size();
    std::vector<int> z(z_in.begin(), z_in.end());
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());

    RankCache cache(ms);
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(k));
    std::vector<int> owner(static_cast<std::size_t>(m), -1); // class of each element, -1 if uncovered

    // Breadth-first search in the exchange graph from `sources`. Edge x -> y (y in class i)
    // exists iff classes[i] - y + x is independent in matroid i. Returns the sink reached
    // (element, class) or (-1, -1); `parent` records the tree.
    std::vector<int> parent(static_cast<std::size_t>(m));
    std::vector<char> seen(static_cast<std::size_t>(m));
    auto search = [&](const std::vector<int>& sources, bool stop_at_sink) -> std::pair<int, int> {
        std::fill(seen.begin(), seen.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        std::deque<int> queue;
        for (int s : sources) {
            seen[static_cast<std::size_t>(s)] = 1;
            queue.push_back(s);
        }
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (int i = 0; i < k; ++i) {
                if (owner[static_cast<std::size_t>(x)] == i) continue;
                auto& ci = classes[static_cast<std::size_t>(i)];
                if (stop_at_sink && cache.independent(i, with(ci, x))) return {x, i};
                for (int y : ci) {
                    if (seen[static_cast<std::size_t>(y)]) continue;
                    if (cache.independent(i, with(ci, x, y))) {
                        seen[static_cast<std::size_t>(y)] = 1;
                        parent[static_cast<std::size_t>(y)] = x;
                        queue.push_back(y);
                    }
                }
            }
        }
        return {-1, -1};
    };

    for (int s : z) {
        const auto [sink, sink_class] = search({s}, true);
        if (sink < 0) continue;
        // Walk back from the sink: each element moves into the class of the element after it.
        std::vector<std::pair<int, int>> moves; // (element, destination class)
        int target = sink_class;
        for (int x = sink; x != -1; x = parent[static_cast<std::size_t>(x)]) {
            moves.emplace_back(x, target);
            target = owner[static_cast<std::size_t>(x)];
        }
        std::vector<int> touched;
        for (const auto& [x, dest] : moves) {
            const int from = owner[static_cast<std::size_t>(x)];
            if (from >= 0) {
                auto& c = classes[static_cast<std::size_t>(from)];
                c.erase(std::find(c.begin(), c.end(), x));
            }
        }
        for (const auto& [x, dest] : moves) {
            auto& c = classes[static_cast<std::size_t>(dest)];
            c.insert(std::lower_bound(c.begin(), c.end(), x), x);
            owner[static_cast<std::size_t>(x)] = dest;
            touched.push_back(dest);
        }
        for (int i : touched) {
            if (!cache.independent(i, classes[static_cast<std::size_t>(i)])) {
                std::string path;
                for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
                    path += fmt::format("{}{}->class {}", path.empty() ? "" : ", ", it->first, it->second);
                }
                throw MatroidAxiomError(
                    fmt::format("augmentation from element {} left class {} dependent (exchange path: {})", s, i, path));
            }
        }
    }

    MatroidPartitionResult result;
    result.classes = classes;
    for (const auto& c : classes) result.independent.insert(result.independent.end(), c.begin(), c.end());
    std::sort(result.independent.begin(), result.independent.end());

    // Dual set: everything reachable from the uncovered elements of Z.
    std::vector<int> uncovered;
    for (int x : z) {
        if (owner[static_cast<std::size_t>(x)] < 0) uncovered.push_back(x);
    }
    search(uncovered, false);
    for (int x : z) {
        if (seen[static_cast<std::size_t>(x)]) result.dual.push_back(x);
    }

    long bound = static_cast<long>(z.size()) - static_cast<long>(result.dual.size());
    for (int i = 0; i < k; ++i) bound += cache.rank(i, result.dual);
    if (bound != result.size()) {
        throw MatroidAxiomError(fmt::format("duality certificate mismatch: |Z-X| + sum r_i(X) = {} but |I| = {}", bound,
                                            result.size()));
    }
    return result;
}

int sum_rank_bruteforce(const MatroidList& ms, std::span<const int> z_in, Exec exec, int cap)
{
    check_ground(ms, z_in);
    std::vector<int> z(z_in.begin(), z_in.end());
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());
    const int size = static_cast<int>(z.size());
    if (size > cap) throw CapExceeded(fmt::format("sum-rank brute force over {} elements exceeds cap {}", size, cap));

    auto value = [&](long long mask) {
        std::vector<int> x;
        for (int b = 0; b < size; ++b) {
            if (mask >> b & 1) x.push_back(z[static_cast<std::size_t>(b)]);
        }
        int v = size - static_cast<int>(x.size());
        for (const auto& mat : ms) v += mat->rank(x);
        return v;
    };

    const long long total = 1LL << size;
    int best = INT_MAX;
    if (exec == Exec::serial) {
        for (long long mask = 0; mask < total; ++mask) best = std::min(best, value(mask));
        return best;
    }
#pragma omp parallel for reduction(min : best) schedule(dynamic, 64)
    for (long long mask = 0; mask < total; ++mask) best = std::min(best, value(mask));
    return best;
}

Diagnostics check_matroid_axioms(const RankOracle& m, int cap)
{
    Diagnostics d;
    const int n = m.ground_size();
    if (n > cap) throw CapExceeded(fmt::format("axiom check over {} elements exceeds cap {}", n, cap));
    const int total = 1 << n;
    std::vector<int> r(static_cast<std::size_t>(total));
    for (int mask = 0; mask < total; ++mask) {
        std::vector<int> s;
        for (int b = 0; b < n; ++b) {
            if (mask >> b & 1) s.push_back(b);
        }
        r[static_cast<std::size_t>(mask)] = m.rank(s);
        const int rv = r[static_cast<std::size_t>(mask)];
        if (rv < 0 || rv > static_cast<int>(s.size())) d.add(fmt::format("rank {} out of range on set {:#x}", rv, mask));
    }
    if (r[0] != 0) d.add("rank of the empty set is not zero");
    for (int a = 0; a < total; ++a) {
        for (int b = 0; b < n; ++b) {
            const int bigger = a | (1 << b);
            if (r[static_cast<std::size_t>(bigger)] < r[static_cast<std::size_t>(a)]) {
                d.add(fmt::format("rank not monotone at {:#x} + {}", a, b));
            }
        }
        for (int b = 0; b < total; ++b) {
            if (r[static_cast<std::size_t>(a)] + r[static_cast<std::size_t>(b)] <
                r[static_cast<std::size_t>(a | b)] + r[static_cast<std::size_t>(a & b)]) {
                d.add(fmt::format("rank not submodular on {:#x}, {:#x}", a, b));
            }
        }
    }
    return d;
}

} // namespace rootpack
