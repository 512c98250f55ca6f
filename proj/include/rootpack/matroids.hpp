#pragma once

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "rootpack/core.hpp"
#include "rootpack/kernels.hpp"

namespace rootpack {

/// Matroid given by its rank function on ground set 0..m-1. Implementations must be pure.
class RankOracle {
public:
    virtual ~RankOracle() = default;
    virtual int ground_size() const = 0;
    /// Rank of a set of distinct ground elements.
    virtual int rank(std::span<const int> subset) const = 0;
};

using MatroidList = std::vector<std::shared_ptr<const RankOracle>>;

/// Cycle matroid of a graph; ground elements are edge indices.
class GraphicMatroid : public RankOracle {
public:
    explicit GraphicMatroid(Graph g) : g_(std::move(g)) {}

    int ground_size() const override { return g_.edge_count(); }
    int rank(std::span<const int> subset) const override;
    const Graph& graph() const { return g_; }

private:
    Graph g_;
};

/// Rank capped at a constant.
class TruncatedMatroid : public RankOracle {
public:
    TruncatedMatroid(std::shared_ptr<const RankOracle> inner, int cap);

    int ground_size() const override { return inner_->ground_size(); }
    int rank(std::span<const int> subset) const override;
    int cap() const { return cap_; }

private:
    std::shared_ptr<const RankOracle> inner_;
    int cap_;
};

/// Sum (union) of matroids on a common ground set; rank by matroid partition.
class SumMatroid : public RankOracle {
public:
    explicit SumMatroid(MatroidList parts);

    int ground_size() const override;
    int rank(std::span<const int> subset) const override;
    const MatroidList& parts() const { return parts_; }

private:
    MatroidList parts_;
};

/// Thrown when an augmentation produces a dependent set, which a true matroid cannot do.
class MatroidAxiomError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Memoized rank calls for one algorithm run.
class RankCache {
public:
    explicit RankCache(const MatroidList& ms) : ms_(&ms) {}

    int rank(int matroid, std::vector<int> subset);
    bool independent(int matroid, std::vector<int> subset);
    std::size_t calls() const { return calls_; }

private:
    const MatroidList* ms_;
    std::map<std::pair<int, std::vector<int>>, int> memo_;
    std::size_t calls_ = 0;
};

struct MatroidPartitionResult {
    std::vector<int> independent;         // sorted union of the classes
    std::vector<std::vector<int>> classes; // classes[i] independent in matroid i, sorted
    std::vector<int> dual;                 // X attaining |Z - X| + sum r_i(X) = |independent|
    int size() const { return static_cast<int>(independent.size()); }
};

/// Maximum subset of `z` independent in the sum of `ms`, its coloring, and a dual set.
/// Augmenting paths are breadth-first with elements in increasing order.
MatroidPartitionResult matroid_partition(const MatroidList& ms, std::span<const int> z);

/// min over X subset of Z of |Z - X| + sum_i r_i(X), by scanning all 2^|Z| subsets.
int sum_rank_bruteforce(const MatroidList& ms, std::span<const int> z, Exec exec = Exec::parallel, int cap = 12);

/// Exhaustive axiom check (normalization, boundedness, monotonicity, submodularity)
/// for ground sets of at most `cap` elements.
Diagnostics check_matroid_axioms(const RankOracle& m, int cap = 8);

} // namespace rootpack
