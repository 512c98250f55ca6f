#include "rootpack/io.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <map>

#include "rootpack/directed.hpp"
#include "rootpack/hyper_packing.hpp"

namespace rootpack {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw InvalidInstance(fmt::format("missing field '{}'", key));
    return j.at(key);
}

std::vector<int> int_array(const Json& j, const char* what)
{
    if (!j.is_array()) throw InvalidInstance(fmt::format("'{}' must be an array", what));
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InvalidInstance(fmt::format("'{}' must hold integers", what));
        out.push_back(x.get<int>());
    }
    return out;
}

std::string name_string(const Json& j)
{
    if (!j.is_string()) throw InvalidInstance("vertex names must be strings");
    return j.get<std::string>();
}

struct NameTable {
    std::map<std::string, int> index;

    int strict(const Json& j) const
    {
        const auto name = name_string(j);
        auto it = index.find(name);
        if (it == index.end()) throw InvalidInstance(fmt::format("undeclared vertex '{}'", name));
        return it->second;
    }

    VertexList strict_list(const Json& j) const
    {
        if (!j.is_array()) throw InvalidInstance("expected a list of vertex names");
        VertexList out;
        for (const auto& x : j) out.push_back(strict(x));
        return out;
    }
};

Json names_of(const Instance& inst, std::span<const int> vs)
{
    Json out = Json::array();
    for (int v : vs) out.push_back(inst.names.at(static_cast<std::size_t>(v)));
    return out;
}

VertexList loose_list(const Instance& inst, const Json& j)
{
    if (!j.is_array()) throw InvalidInstance("expected a list of vertex names");
    VertexList out;
    for (const auto& x : j) out.push_back(inst.index_of(name_string(x)));
    return out;
}

} // namespace

int Instance::index_of(const std::string& name) const
{
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

PackingSpec spec_from_json(const Json& j)
{
    PackingSpec spec;
    const auto& h = field(j, "h");
    const auto& k = field(j, "k");
    if (!h.is_number_integer() || !k.is_number_integer()) throw InvalidInstance("spec h and k must be integers");
    spec.h = h.get<int>();
    spec.k = k.get<int>();
    spec.lower = int_array(field(j, "lower"), "lower");
    spec.upper = int_array(field(j, "upper"), "upper");
    if (spec.k < 1) throw InvalidInstance("spec k must be positive");
    const auto len = static_cast<std::size_t>(spec.k) + 1;
    if (spec.lower.size() != len || spec.upper.size() != len) {
        throw InvalidInstance(fmt::format("spec lower and upper must have length k+1 = {}", len));
    }
    return spec;
}

Json spec_to_json(const PackingSpec& spec)
{
    return Json{{"h", spec.h}, {"k", spec.k}, {"lower", spec.lower}, {"upper", spec.upper}};
}

Instance parse_instance(const Json& j)
{
    if (!j.is_object()) throw InvalidInstance("instance must be a JSON object");
    Instance inst;
    inst.type = field(j, "type").is_string() ? j.at("type").get<std::string>() : "";
    NameTable table;
    for (const auto& x : field(j, "vertices")) {
        auto name = name_string(x);
        if (!table.index.emplace(name, static_cast<int>(inst.names.size())).second) {
            throw InvalidInstance(fmt::format("duplicate vertex name '{}'", name));
        }
        inst.names.push_back(std::move(name));
    }
    const int n = static_cast<int>(inst.names.size());
    if (n == 0) throw InvalidInstance("instance needs at least one vertex");

    if (inst.type == "graph" || inst.type == "hypergraph") {
        const auto& edges = j.contains("edges") ? j.at("edges") : Json::array();
        if (!edges.is_array()) throw InvalidInstance("'edges' must be an array");
        std::vector<VertexList> lists;
        for (const auto& e : edges) lists.push_back(table.strict_list(e));
        if (inst.type == "graph") {
            std::vector<Edge> es;
            for (const auto& l : lists) {
                if (l.size() != 2) throw InvalidInstance("graph edges must have exactly two endpoints");
                es.push_back({l[0], l[1]});
            }
            inst.host = Graph(n, std::move(es));
        } else {
            inst.host = Hypergraph(n, std::move(lists));
        }
    } else if (inst.type == "digraph" || inst.type == "dypergraph") {
        const auto& arcs = j.contains("arcs") ? j.at("arcs") : Json::array();
        if (!arcs.is_array()) throw InvalidInstance("'arcs' must be an array");
        std::vector<Hyperarc> as;
        for (const auto& a : arcs) as.push_back({table.strict_list(field(a, "tails")), table.strict(field(a, "head"))});
        if (inst.type == "digraph") {
            std::vector<Arc> ds;
            for (const auto& a : as) {
                if (a.tails.size() != 1) throw InvalidInstance("digraph arcs must have exactly one tail");
                ds.push_back({a.tails[0], a.head});
            }
            inst.host = Digraph(n, std::move(ds));
        } else {
            inst.host = Dypergraph(n, std::move(as));
        }
    } else {
        throw InvalidInstance(fmt::format("unknown instance type '{}'", inst.type));
    }
    inst.spec = spec_from_json(field(j, "spec"));
    return inst;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInstance(fmt::format("cannot open '{}'", path));
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidInstance(fmt::format("{}: {}", path, e.what()));
    }
}

Instance load_instance(const std::string& path)
{
    return parse_instance(read_json_file(path));
}

Json to_json(const Instance& inst)
{
    Json j;
    j["type"] = inst.type;
    j["vertices"] = inst.names;
    j["spec"] = spec_to_json(inst.spec);
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Graph>) {
                j["edges"] = Json::array();
                for (const auto& e : g.edges()) j["edges"].push_back(Json::array({inst.names[static_cast<std::size_t>(e.u)], inst.names[static_cast<std::size_t>(e.v)]}));
            } else if constexpr (std::is_same_v<T, Hypergraph>) {
                j["edges"] = Json::array();
                for (const auto& x : g.hyperedges()) j["edges"].push_back(names_of(inst, x));
            } else if constexpr (std::is_same_v<T, Digraph>) {
                j["arcs"] = Json::array();
                for (const auto& a : g.arcs()) {
                    j["arcs"].push_back({{"tails", Json::array({inst.names[static_cast<std::size_t>(a.tail)]})},
                                         {"head", inst.names[static_cast<std::size_t>(a.head)]}});
                }
            } else {
                j["arcs"] = Json::array();
                for (const auto& a : g.hyperarcs()) {
                    j["arcs"].push_back({{"tails", names_of(inst, a.tails)}, {"head", inst.names[static_cast<std::size_t>(a.head)]}});
                }
            }
        },
        inst.host);
    return j;
}

std::string packing_kind(const Instance& inst)
{
    if (inst.type == "graph") return "forests";
    if (inst.type == "hypergraph") return "hyperforests";
    return "hyperbranchings";
}

Json packing_to_json(const Instance& inst, const AnyPacking& packing)
{
    Json j;
    j["kind"] = packing_kind(inst);
    j["members"] = Json::array();
    if (auto f = std::get_if<RootedForestPacking>(&packing)) {
        j["kind"] = "forests";
        for (const auto& m : f->members) {
            j["members"].push_back({{"elements", m.edges}, {"support", names_of(inst, m.support)}, {"roots", names_of(inst, m.roots)}});
        }
    } else {
        const auto& h = std::get<RootedHyperforestPacking>(packing);
        const bool undirected = inst.type == "graph" || inst.type == "hypergraph";
        j["kind"] = undirected ? "hyperforests" : "hyperbranchings";
        for (const auto& m : h.members) {
            Json trims = Json::array();
            for (const auto& t : m.trims) {
                trims.push_back({{"element", t.element},
                                 {"tail", inst.names.at(static_cast<std::size_t>(t.tail))},
                                 {"head", inst.names.at(static_cast<std::size_t>(t.head))}});
            }
            j["members"].push_back({{"elements", m.elements}, {"roots", names_of(inst, m.roots)}, {"trims", trims}});
        }
    }
    return j;
}

AnyPacking packing_from_json(const Instance& inst, const Json& doc)
{
    const Json& j = doc.is_object() && doc.contains("packing") ? doc.at("packing") : doc;
    if (!j.is_object()) throw InvalidInstance("packing must be a JSON object");
    const auto& kind = field(j, "kind");
    if (!kind.is_string()) throw InvalidInstance("packing kind must be a string");
    const auto& members = field(j, "members");
    if (!members.is_array()) throw InvalidInstance("packing members must be an array");
    if (kind == "forests") {
        RootedForestPacking p;
        for (const auto& m : members) {
            RootedForest f;
            f.edges = int_array(field(m, "elements"), "elements");
            f.support = loose_list(inst, field(m, "support"));
            f.roots = loose_list(inst, field(m, "roots"));
            p.members.push_back(std::move(f));
        }
        return p;
    }
    if (kind == "hyperforests" || kind == "hyperbranchings") {
        RootedHyperforestPacking p;
        for (const auto& m : members) {
            BranchingMember b;
            b.elements = int_array(field(m, "elements"), "elements");
            b.roots = loose_list(inst, field(m, "roots"));
            const auto& trims = field(m, "trims");
            if (!trims.is_array()) throw InvalidInstance("trims must be an array");
            for (const auto& t : trims) {
                const auto& e = field(t, "element");
                if (!e.is_number_integer()) throw InvalidInstance("trim element must be an integer");
                b.trims.push_back({e.get<int>(), inst.index_of(name_string(field(t, "tail"))),
                                   inst.index_of(name_string(field(t, "head")))});
            }
            p.members.push_back(std::move(b));
        }
        return p;
    }
    throw InvalidInstance(fmt::format("unknown packing kind '{}'", kind.get<std::string>()));
}

Diagnostics verify_packing(const Instance& inst, const AnyPacking& packing)
{
    Diagnostics d;
    auto check_names = [&](std::span<const int> vs) {
        for (int v : vs) {
            if (v < 0) {
                d.add("roots: packing names a vertex that is not in the instance");
                return;
            }
        }
    };
    if (auto f = std::get_if<RootedForestPacking>(&packing)) {
        for (const auto& m : f->members) {
            check_names(m.support);
            check_names(m.roots);
        }
        if (!d.ok()) return d;
        if (auto g = std::get_if<Graph>(&inst.host)) return verify_regular_forest_packing(*g, *f, inst.spec);
        d.add(fmt::format("packing kind 'forests' does not match instance type '{}'", inst.type));
        return d;
    }
    const auto& h = std::get<RootedHyperforestPacking>(packing);
    for (const auto& m : h.members) {
        check_names(m.roots);
        for (const auto& t : m.trims) {
            if (t.tail < 0 || t.head < 0) {
                d.add("witness: trim names a vertex that is not in the instance");
                return d;
            }
        }
    }
    if (!d.ok()) return d;
    if (auto g = std::get_if<Hypergraph>(&inst.host)) return verify_hyperforest_packing(*g, h, inst.spec);
    if (auto g = std::get_if<Graph>(&inst.host)) return verify_hyperforest_packing(Hypergraph::from_graph(*g), h, inst.spec);
    if (auto g = std::get_if<Dypergraph>(&inst.host)) return verify_hyperbranching_packing(*g, h, inst.spec);
    if (auto g = std::get_if<Digraph>(&inst.host)) {
        return verify_hyperbranching_packing(Dypergraph::from_digraph(*g), h, inst.spec);
    }
    d.add("packing does not match the instance type");
    return d;
}

Json blocks_to_json(const Instance& inst, const Blocks& blocks)
{
    Json out = Json::array();
    for (const auto& b : blocks) out.push_back(names_of(inst, b));
    return out;
}

Json infeasibility_to_json(const Instance& inst, const Infeasibility& inf)
{
    return Json{{"condition", to_string(inf.condition)}, {"blocks", blocks_to_json(inst, inf.witness)}, {"detail", inf.detail}};
}

bool Report::all_checks_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Json Report::to_json() const
{
    Json j;
    j["feasible"] = feasible ? Json(*feasible) : Json(nullptr);
    j["witness"] = witness;
    j["packing"] = packing;
    j["checks"] = Json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["stats"] = stats;
    return j;
}

} // namespace rootpack
