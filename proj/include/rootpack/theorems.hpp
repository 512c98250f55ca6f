#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rootpack/conditions.hpp"
#include "rootpack/core.hpp"

namespace rootpack {

using Host = std::variant<Graph, Hypergraph, Digraph, Dypergraph>;

enum class HostKind { digraph, dypergraph, graph, hypergraph };

/// How a theorem fixes the root counts of its members.
enum class RootModel {
    single,     // one root (component) per member
    uniform,    // ell roots per member, ell = lower[1]
    per_member, // ell(i) = lower[i]
    bounded,    // the spec bounds as given
};

struct TheoremInfo {
    std::string id;
    HostKind host;
    bool regular; // false: spanning members, h = k
    RootModel roots;
    std::string summary;
};

/// Registered ids T8..T33.
const std::vector<TheoremInfo>& theorem_registry();

/// Throws std::invalid_argument for an unknown id.
const TheoremInfo& theorem_info(std::string_view id);

/// The general bounded spec a theorem corresponds to; only the fields the theorem uses are read.
PackingSpec instantiate(const TheoremInfo& info, const PackingSpec& given);

/// Converts the host to the theorem's host kind; throws InvalidInstance when it does not fit
/// (for example a proper hypergraph given to a graph theorem).
Host adapt_host(const TheoremInfo& info, const Host& host);

/// The general checker (bounded, regular, hyper) evaluated on the instantiated spec.
ConditionReport check_unified(const TheoremInfo& info, const Host& host, const PackingSpec& given,
                              const SolveOptions& opts = {});

/// The theorem's own conditions, evaluated by a direct serial enumeration.
ConditionReport check_dedicated(const TheoremInfo& info, const Host& host, const PackingSpec& given,
                                const SolveOptions& opts = {});

struct TheoremCheck {
    PackingSpec spec;
    ConditionReport unified;
    ConditionReport dedicated;
    std::optional<bool> matroid; // rank test, for spanning forests with prescribed component counts

    bool agree() const;
};

TheoremCheck check_theorem(const TheoremInfo& info, const Host& host, const PackingSpec& given,
                           const SolveOptions& opts = {});

int vertex_count(const Host& host);

} // namespace rootpack
