#include "rootpack/partitions.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <mutex>

namespace rootpack {

Blocks canonical_blocks(int n, Blocks blocks, bool must_cover)
{
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int covered = 0;
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        if (b.empty()) throw std::invalid_argument("empty block");
        for (int v : b) {
            if (v < 0 || v >= n) throw std::invalid_argument(fmt::format("block vertex {} outside 0..{}", v, n - 1));
            if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument(fmt::format("vertex {} in two blocks", v));
            seen[static_cast<std::size_t>(v)] = 1;
            ++covered;
        }
    }
    if (must_cover && covered != n) throw std::invalid_argument("blocks do not cover the vertex set");
    std::sort(blocks.begin(), blocks.end(), [](const VertexList& a, const VertexList& b) { return a.front() < b.front(); });
    return blocks;
}

std::vector<int> Partition::labels() const
{
    std::vector<int> out(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (int v : blocks[i]) out[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    return out;
}

Partition Partition::from_blocks(int n, Blocks blocks)
{
    return {n, canonical_blocks(n, std::move(blocks), true)};
}

Partition Partition::from_labels(std::span<const int> labels)
{
    const int n = static_cast<int>(labels.size());
    std::map<int, VertexList> by_label;
    for (int v = 0; v < n; ++v) by_label[labels[static_cast<std::size_t>(v)]].push_back(v);
    Blocks b;
    for (auto& [_, vs] : by_label) b.push_back(std::move(vs));
    return from_blocks(n, std::move(b));
}

Partition Partition::singletons(int n)
{
    Blocks b;
    for (int v = 0; v < n; ++v) b.push_back({v});
    return {n, std::move(b)};
}

Partition Partition::whole(int n)
{
    VertexList all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    return {n, {all}};
}

std::vector<int> Subpartition::labels() const
{
    std::vector<int> out(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (int v : blocks[i]) out[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    return out;
}

Subpartition Subpartition::from_blocks(int n, Blocks blocks)
{
    return {n, canonical_blocks(n, std::move(blocks), false)};
}

bool crosses(std::span<const int> x, const Partition& p)
{
    const auto lab = p.labels();
    int first = -1;
    for (int v : x) {
        const int l = lab.at(static_cast<std::size_t>(v));
        if (first == -1) {
            first = l;
        } else if (l != first) {
            return true;
        }
    }
    return false;
}

namespace {

// X enters some block: X has a covered vertex and is not inside a single block.
bool undirected_enters(std::span<const int> x, const std::vector<int>& lab)
{
    bool any_covered = false;
    bool mixed = false;
    const int first = lab[static_cast<std::size_t>(x.front())];
    for (int v : x) {
        const int l = lab[static_cast<std::size_t>(v)];
        if (l >= 0) any_covered = true;
        if (l != first) mixed = true;
    }
    return any_covered && mixed;
}

bool directed_enters(std::span<const int> tails, int head, const std::vector<int>& lab)
{
    const int hl = lab[static_cast<std::size_t>(head)];
    if (hl < 0) return false;
    return std::any_of(tails.begin(), tails.end(), [&](int t) { return lab[static_cast<std::size_t>(t)] != hl; });
}

template <class Pred>
int count_selected(int m, std::optional<std::span<const int>> f, Pred&& enters)
{
    int count = 0;
    if (!f) {
        for (int i = 0; i < m; ++i) count += enters(i) ? 1 : 0;
    } else {
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        for (int i : *f) {
            if (i < 0 || i >= m) throw std::out_of_range("element index out of range");
            if (seen[static_cast<std::size_t>(i)]) continue;
            seen[static_cast<std::size_t>(i)] = 1;
            count += enters(i) ? 1 : 0;
        }
    }
    return count;
}

void check_n(int host_n, const Subpartition& p)
{
    if (host_n != p.n) throw std::invalid_argument("subpartition and host have different vertex counts");
}

} // namespace

int entering_count(const Graph& g, std::optional<std::span<const int>> f, const Subpartition& p)
{
    check_n(g.vertex_count(), p);
    const auto lab = p.labels();
    return count_selected(g.edge_count(), f, [&](int i) {
        const auto& e = g.edge(i);
        const int pair[2] = {e.u, e.v};
        return undirected_enters(pair, lab);
    });
}

int entering_count(const Hypergraph& g, std::optional<std::span<const int>> f, const Subpartition& p)
{
    check_n(g.vertex_count(), p);
    const auto lab = p.labels();
    return count_selected(g.edge_count(), f, [&](int i) { return undirected_enters(g.hyperedge(i), lab); });
}

int entering_count(const Digraph& d, std::optional<std::span<const int>> f, const Subpartition& p)
{
    check_n(d.vertex_count(), p);
    const auto lab = p.labels();
    return count_selected(d.arc_count(), f, [&](int i) {
        const auto& a = d.arcs()[static_cast<std::size_t>(i)];
        const int tail[1] = {a.tail};
        return directed_enters(tail, a.head, lab);
    });
}

int entering_count(const Dypergraph& d, std::optional<std::span<const int>> f, const Subpartition& p)
{
    check_n(d.vertex_count(), p);
    const auto lab = p.labels();
    return count_selected(d.arc_count(), f, [&](int i) {
        const auto& a = d.hyperarc(i);
        return directed_enters(a.tails, a.head, lab);
    });
}

namespace {

bool properly_intersecting(const VertexList& x, const VertexList& y)
{
    std::size_t common = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] < y[j]) {
            ++i;
        } else if (y[j] < x[i]) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return common > 0 && common < x.size() && common < y.size();
}

bool strict_subset(const VertexList& x, const VertexList& y)
{
    return x.size() < y.size() && std::includes(y.begin(), y.end(), x.begin(), x.end());
}

} // namespace

JoinMeet meet_join(const Partition& a, const Partition& b)
{
    if (a.n != b.n) throw std::invalid_argument("partitions of different ground sets");
    Blocks family = a.blocks;
    family.insert(family.end(), b.blocks.begin(), b.blocks.end());

    // Replace the lexicographically first properly intersecting pair by (X cap Y, X cup Y).
    for (;;) {
        std::sort(family.begin(), family.end());
        bool changed = false;
        for (std::size_t i = 0; i < family.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < family.size() && !changed; ++j) {
                if (!properly_intersecting(family[i], family[j])) continue;
                VertexList meet;
                VertexList join;
                std::set_intersection(family[i].begin(), family[i].end(), family[j].begin(), family[j].end(),
                                      std::back_inserter(meet));
                std::set_union(family[i].begin(), family[i].end(), family[j].begin(), family[j].end(),
                               std::back_inserter(join));
                family[i] = std::move(meet);
                family[j] = std::move(join);
                changed = true;
            }
        }
        if (!changed) break;
    }

    Blocks maximal;
    Blocks minimal;
    for (const auto& x : family) {
        const bool is_max = std::none_of(family.begin(), family.end(), [&](const VertexList& y) { return strict_subset(x, y); });
        const bool is_min = std::none_of(family.begin(), family.end(), [&](const VertexList& y) { return strict_subset(y, x); });
        if (is_max && std::find(maximal.begin(), maximal.end(), x) == maximal.end()) maximal.push_back(x);
        if (is_min && std::find(minimal.begin(), minimal.end(), x) == minimal.end()) minimal.push_back(x);
    }
    return {Partition::from_blocks(a.n, std::move(maximal)), Partition::from_blocks(a.n, std::move(minimal))};
}

PartitionStream::PartitionStream(int n, int cap) : n_(n)
{
    if (n < 1) throw std::invalid_argument("partition enumeration needs at least one vertex");
    if (n > cap) throw CapExceeded(fmt::format("partition enumeration of {} vertices exceeds cap {}", n, cap));
    restart();
}

void PartitionStream::restart()
{
    rgs_.assign(static_cast<std::size_t>(n_), 0);
    prefix_max_.assign(static_cast<std::size_t>(n_), 0);
    started_ = false;
    done_ = false;
}

std::optional<Partition> PartitionStream::next()
{
    if (done_) return std::nullopt;
    if (started_) {
        // prefix_max_[i] = max(rgs_[0..i-1]); position i may rise to prefix_max_[i] + 1.
        int i = n_ - 1;
        while (i >= 1 && rgs_[static_cast<std::size_t>(i)] > prefix_max_[static_cast<std::size_t>(i)]) --i;
        if (i < 1) {
            done_ = true;
            return std::nullopt;
        }
        ++rgs_[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n_; ++j) {
            const auto sj = static_cast<std::size_t>(j);
            rgs_[sj] = 0;
            prefix_max_[sj] = std::max(prefix_max_[sj - 1], rgs_[sj - 1]);
        }
    } else {
        started_ = true;
    }
    Blocks b;
    for (int v = 0; v < n_; ++v) {
        const auto l = static_cast<std::size_t>(rgs_[static_cast<std::size_t>(v)]);
        if (l >= b.size()) b.resize(l + 1);
        b[l].push_back(v);
    }
    return Partition{n_, std::move(b)};
}

SubpartitionStream::SubpartitionStream(int n, int cap)
    : n_(n), inner_((n > cap ? throw CapExceeded(fmt::format("subpartition enumeration of {} vertices exceeds cap {}", n, cap))
                             : n + 1),
                    n + 1)
{
}

std::optional<Subpartition> SubpartitionStream::next()
{
    auto p = inner_.next();
    if (!p) return std::nullopt;
    // Element 0 is the marker; its block holds the uncovered vertices.
    Blocks out;
    for (std::size_t i = 1; i < p->blocks.size(); ++i) {
        VertexList b;
        for (int v : p->blocks[i]) b.push_back(v - 1);
        out.push_back(std::move(b));
    }
    return Subpartition{n_, std::move(out)};
}

std::vector<Partition> enumerate_partitions(int n, int cap)
{
    std::vector<Partition> out;
    PartitionStream s(n, cap);
    while (auto p = s.next()) out.push_back(std::move(*p));
    return out;
}

std::vector<Subpartition> enumerate_subpartitions(int n, int cap)
{
    std::vector<Subpartition> out;
    SubpartitionStream s(n, cap);
    while (auto p = s.next()) out.push_back(std::move(*p));
    return out;
}

std::uint64_t bell_number(int n)
{
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (auto x : row) next.push_back(next.back() + x);
        row = std::move(next);
    }
    return row.front();
}

Blocks PartitionTable::blocks_at(std::size_t index) const
{
    const auto code = codes.at(index);
    Blocks b(block_counts.at(index));
    for (int v = 0; v < n; ++v) {
        int l = label(code, v);
        if (subpartitions()) {
            if (l == 0) continue;
            --l;
        }
        b[static_cast<std::size_t>(l)].push_back(v);
    }
    return b;
}

namespace {

std::shared_ptr<const PartitionTable> build_table(PartitionTable::Kind kind, int n)
{
    auto t = std::make_shared<PartitionTable>();
    t->kind = kind;
    t->n = n;
    const bool sub = kind == PartitionTable::Kind::subpartitions;
    // Subpartition tables walk restricted-growth strings of length n+1 whose first
    // entry is the marker; dropping it leaves labels with 0 = uncovered.
    const int len = sub ? n + 1 : n;
    const auto total = bell_number(len);
    t->codes.reserve(total);
    t->block_counts.reserve(total);
    std::vector<int> rgs(static_cast<std::size_t>(len), 0);
    std::vector<int> pmax(static_cast<std::size_t>(len), 0);
    for (;;) {
        std::uint64_t code = 0;
        int mx = 0;
        const int off = sub ? 1 : 0;
        for (int v = 0; v < n; ++v) {
            const int l = rgs[static_cast<std::size_t>(v + off)];
            code |= static_cast<std::uint64_t>(l) << (4 * v);
            mx = std::max(mx, l);
        }
        t->codes.push_back(code);
        // partitions: labels 0..mx; subpartitions: blocks 1..mx
        t->block_counts.push_back(static_cast<std::uint8_t>(sub ? mx : mx + 1));

        int i = len - 1;
        while (i >= 1 && rgs[static_cast<std::size_t>(i)] > pmax[static_cast<std::size_t>(i)]) --i;
        if (i < 1) break;
        ++rgs[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < len; ++j) {
            const auto sj = static_cast<std::size_t>(j);
            rgs[sj] = 0;
            pmax[sj] = std::max(pmax[sj - 1], rgs[sj - 1]);
        }
    }
    return t;
}

} // namespace

std::shared_ptr<const PartitionTable> PartitionTable::get(Kind kind, int n, int cap)
{
    if (n < 1) throw std::invalid_argument("partition table needs at least one vertex");
    if (n > cap) {
        throw CapExceeded(fmt::format("{} enumeration of {} vertices exceeds cap {}",
                                      kind == Kind::partitions ? "partition" : "subpartition", n, cap));
    }
    if (n > 15) throw CapExceeded("partition tables support at most 15 vertices");

    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const PartitionTable>> cache;
    const std::lock_guard lock(mu);
    auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto t = build_table(kind, n);
    cache.emplace(key, t);
    return t;
}

} // namespace rootpack
