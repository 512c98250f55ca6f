#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rootpack/core.hpp"

namespace rootpack {

/// Partition of {0..n-1}; blocks are sorted and ordered by their smallest element.
struct Partition {
    int n = 0;
    Blocks blocks;

    int size() const { return static_cast<int>(blocks.size()); }
    /// Block index per vertex.
    std::vector<int> labels() const;

    static Partition from_blocks(int n, Blocks blocks);
    static Partition from_labels(std::span<const int> labels);
    static Partition singletons(int n);
    static Partition whole(int n);

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Disjoint nonempty blocks, not necessarily covering {0..n-1}.
struct Subpartition {
    int n = 0;
    Blocks blocks;

    int size() const { return static_cast<int>(blocks.size()); }
    /// Block index per vertex, -1 for uncovered vertices.
    std::vector<int> labels() const;

    static Subpartition from_blocks(int n, Blocks blocks);
    static Subpartition of(const Partition& p) { return {p.n, p.blocks}; }

    friend bool operator==(const Subpartition&, const Subpartition&) = default;
};

/// Sorts each block and orders blocks by minimum; validates disjointness.
Blocks canonical_blocks(int n, Blocks blocks, bool must_cover);

/// True iff X meets at least two blocks of P.
bool crosses(std::span<const int> x, const Partition& p);

/// Number of elements of F entering at least one block of P.
/// A hyperedge X enters B iff X meets both B and its complement; a hyperarc enters B
/// iff its head lies in B and some tail lies outside B. With no F, every element counts.
int entering_count(const Graph& g, std::optional<std::span<const int>> f, const Subpartition& p);
int entering_count(const Hypergraph& g, std::optional<std::span<const int>> f, const Subpartition& p);
int entering_count(const Digraph& d, std::optional<std::span<const int>> f, const Subpartition& p);
int entering_count(const Dypergraph& d, std::optional<std::span<const int>> f, const Subpartition& p);

template <class Host>
int entering_count(const Host& host, const Subpartition& p)
{
    return entering_count(host, std::nullopt, p);
}

template <class Host>
int entering_count(const Host& host, const Partition& p)
{
    return entering_count(host, std::nullopt, Subpartition::of(p));
}

struct JoinMeet {
    Partition join; // maximal sets of the uncrossed family
    Partition meet; // minimal sets of the uncrossed family
};

/// Uncrosses the union of the two partitions' blocks until laminar.
JoinMeet meet_join(const Partition& a, const Partition& b);

struct EnumerationCaps {
    int partitions = 12;    // Bell(12) = 4,213,597
    int subpartitions = 10; // Bell(11) = 678,570
};

/// Restartable stream over all partitions of {0..n-1} in restricted-growth-string order.
class PartitionStream {
public:
    explicit PartitionStream(int n, int cap = EnumerationCaps{}.partitions);

    std::optional<Partition> next();
    void restart();

private:
    int n_;
    std::vector<int> rgs_;
    std::vector<int> prefix_max_;
    bool started_ = false;
    bool done_ = false;
};

/// Restartable stream over all subpartitions (including the empty one) of {0..n-1}.
/// Subpartitions of V are read off partitions of V plus a marker element.
class SubpartitionStream {
public:
    explicit SubpartitionStream(int n, int cap = EnumerationCaps{}.subpartitions);

    std::optional<Subpartition> next();
    void restart() { inner_.restart(); }

private:
    int n_;
    PartitionStream inner_;
};

std::vector<Partition> enumerate_partitions(int n, int cap = EnumerationCaps{}.partitions);
std::vector<Subpartition> enumerate_subpartitions(int n, int cap = EnumerationCaps{}.subpartitions);

std::uint64_t bell_number(int n);

/// Packed label table of every (sub)partition of {0..n-1}, 4 bits per vertex.
/// For subpartition tables label 0 marks an uncovered vertex and blocks use 1..;
/// for partition tables blocks use 0...
struct PartitionTable {
    enum class Kind { partitions, subpartitions };

    Kind kind = Kind::partitions;
    int n = 0;
    std::vector<std::uint64_t> codes;
    std::vector<std::uint8_t> block_counts;

    std::size_t size() const { return codes.size(); }
    bool subpartitions() const { return kind == Kind::subpartitions; }

    static int label(std::uint64_t code, int v) { return static_cast<int>((code >> (4 * v)) & 0xF); }

    Blocks blocks_at(std::size_t index) const;

    /// Shared, lazily built table. Throws CapExceeded above `cap` or above 15 vertices.
    static std::shared_ptr<const PartitionTable> get(Kind kind, int n, int cap);
};

} // namespace rootpack
