#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rootpack/conditions.hpp"
#include "rootpack/core.hpp"
#include "rootpack/theorems.hpp"

namespace rootpack {

using Json = nlohmann::json;

/// Instance file: vertex names, host structure and root-budget spec.
struct Instance {
    std::string type; // graph | hypergraph | digraph | dypergraph
    std::vector<std::string> names;
    Host host;
    PackingSpec spec;

    int index_of(const std::string& name) const; // -1 when unknown
};

/// Throws InvalidInstance on any structural problem (unknown type, duplicate or undeclared names,
/// bad spec shape).
Instance parse_instance(const Json& j);
Instance load_instance(const std::string& path);
Json to_json(const Instance& inst);

Json spec_to_json(const PackingSpec& spec);
PackingSpec spec_from_json(const Json& j);

/// Reads a JSON file; throws InvalidInstance when it is missing or malformed.
Json read_json_file(const std::string& path);

using AnyPacking = std::variant<RootedForestPacking, RootedHyperforestPacking>;

/// "forests" for graphs, "hyperforests" for hypergraphs, "hyperbranchings" for directed hosts.
std::string packing_kind(const Instance& inst);

Json packing_to_json(const Instance& inst, const AnyPacking& packing);

/// Accepts a packing object or a report containing one. Unknown vertex names become -1 and
/// are reported by verify_packing. Throws InvalidInstance on malformed JSON structure.
AnyPacking packing_from_json(const Instance& inst, const Json& j);

/// Dispatches to the verifier matching the instance type.
Diagnostics verify_packing(const Instance& inst, const AnyPacking& packing);

Json blocks_to_json(const Instance& inst, const Blocks& blocks);
Json infeasibility_to_json(const Instance& inst, const Infeasibility& inf);

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct Report {
    std::optional<bool> feasible;
    Json witness = nullptr;
    Json packing = nullptr;
    std::vector<Check> checks;
    Json stats = Json::object();

    bool all_checks_pass() const;
    Json to_json() const;
};

} // namespace rootpack
