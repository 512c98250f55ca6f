#include "rootpack/cli.hpp"

#include <chrono>
#include <fmt/format.h>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rootpack/directed.hpp"
#include "rootpack/forest_packing.hpp"
#include "rootpack/hyper_packing.hpp"
#include "rootpack/io.hpp"
#include "rootpack/theorems.hpp"

namespace rootpack {

namespace {

struct Options {
    std::string command;
    std::string file;
    std::string theorem;
    std::string packing_file;
    std::string weights;
    std::string json_out;
    int cap_bell = EnumerationCaps{}.partitions;
    std::uint64_t seed = 0;
    bool timings = false;
    bool flip_checker = false;
};

class Timer {
public:
    explicit Timer(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}

    void record(Json& stats, const char* key) const
    {
        if (!enabled_) return;
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        stats["timings_ms"][key] = ms;
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

SolveOptions solve_options(const Options& o)
{
    SolveOptions s;
    s.partition_cap = o.cap_bell;
    s.subpartition_cap = std::min(o.cap_bell, SolveOptions{}.subpartition_cap);
    return s;
}

Json base_stats(const Options& o, const Instance& inst)
{
    Json s;
    s["seed"] = o.seed;
    s["vertices"] = inst.names.size();
    s["elements"] = std::visit(
        [](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Digraph> || std::is_same_v<T, Dypergraph>) return g.arc_count();
            else return g.edge_count();
        },
        inst.host);
    return s;
}

struct PackOutcome {
    std::optional<AnyPacking> packing;
    std::optional<Infeasibility> infeasible;
    std::vector<int> root_counts;
};

PackOutcome pack_instance(const Instance& inst, const SolveOptions& opts)
{
    PackOutcome out;
    auto take = [&](auto&& r) {
        if (r.packing) out.packing = AnyPacking(*r.packing);
        out.infeasible = r.infeasible;
        out.root_counts = r.root_counts;
    };
    if (auto g = std::get_if<Graph>(&inst.host)) take(pack_regular_forests_bounded(*g, inst.spec, opts));
    else if (auto g = std::get_if<Hypergraph>(&inst.host)) take(pack_hyperforests(*g, inst.spec, opts));
    else if (auto g = std::get_if<Digraph>(&inst.host)) {
        take(pack_branchings_bounded_desk(Dypergraph::from_digraph(*g), inst.spec, opts));
    } else {
        take(pack_branchings_bounded_desk(std::get<Dypergraph>(inst.host), inst.spec, opts));
    }
    return out;
}

int cmd_check(const Options& o, Report& report)
{
    const auto inst = load_instance(o.file);
    const auto& info = theorem_info(o.theorem);
    const Timer timer(o.timings);
    const auto tc = check_theorem(info, inst.host, inst.spec, solve_options(o));
    report.stats = base_stats(o, inst);
    report.stats["theorem"] = info.id;
    report.stats["enumerated"] = tc.unified.scanned;
    report.stats["dedicated_enumerated"] = tc.dedicated.scanned;
    report.feasible = tc.unified.holds;
    if (!tc.unified.holds) report.witness = infeasibility_to_json(inst, to_infeasibility(tc.unified));
    report.checks.push_back({"dedicated-conditions-agree", tc.unified.holds == tc.dedicated.holds,
                             tc.dedicated.holds ? "dedicated conditions hold" : tc.dedicated.detail});
    if (tc.matroid) {
        report.checks.push_back({"matroid-rank-agrees", *tc.matroid == tc.unified.holds,
                                 *tc.matroid ? "rank reaches k|V| - ell(K)" : "rank below k|V| - ell(K)"});
    }
    timer.record(report.stats, "check");
    if (!report.all_checks_pass()) return exit_internal;
    return tc.unified.holds ? exit_ok : exit_negative;
}

int cmd_pack(const Options& o, Report& report)
{
    const auto inst = load_instance(o.file);
    const Timer timer(o.timings);
    const auto res = pack_instance(inst, solve_options(o));
    report.stats = base_stats(o, inst);
    timer.record(report.stats, "pack");
    if (res.infeasible) {
        report.feasible = false;
        report.witness = infeasibility_to_json(inst, *res.infeasible);
        return exit_negative;
    }
    const auto diag = verify_packing(inst, *res.packing);
    report.checks.push_back({"packing-verifies", diag.ok(), diag.ok() ? "" : diag.problems.front()});
    if (!diag.ok()) return exit_internal;
    report.feasible = true;
    report.packing = packing_to_json(inst, *res.packing);
    report.stats["root_counts"] = res.root_counts;
    return exit_ok;
}

int cmd_verify(const Options& o, Report& report)
{
    const auto inst = load_instance(o.file);
    const auto packing = packing_from_json(inst, read_json_file(o.packing_file));
    const auto diag = verify_packing(inst, packing);
    report.stats = base_stats(o, inst);
    report.feasible = diag.ok();
    report.checks.push_back({"packing-verifies", diag.ok(), diag.ok() ? "" : fmt::format("{} problem(s)", diag.problems.size())});
    for (const auto& p : diag.problems) report.checks.push_back({"diagnostic", false, p});
    return diag.ok() ? exit_ok : exit_negative;
}

int cmd_oracle(const Options& o, Report& report)
{
    const auto inst = load_instance(o.file);
    const auto opts = solve_options(o);
    const Timer timer(o.timings);
    report.stats = base_stats(o, inst);

    ConditionReport cond;
    std::optional<AnyPacking> brute;
    if (auto g = std::get_if<Graph>(&inst.host)) {
        cond = check_conditions_28(*g, inst.spec, opts);
        if (auto b = brute_force_regular_packing(*g, inst.spec)) brute = AnyPacking(*b);
    } else if (auto g = std::get_if<Hypergraph>(&inst.host)) {
        cond = check_conditions_33(*g, inst.spec, opts);
        if (auto b = brute_force_hyperforest_packing(*g, inst.spec)) brute = AnyPacking(*b);
    } else {
        const auto d = std::holds_alternative<Digraph>(inst.host) ? Dypergraph::from_digraph(std::get<Digraph>(inst.host))
                                                                  : std::get<Dypergraph>(inst.host);
        cond = check_subpartition_conditions(d, inst.spec, opts);
        if (auto b = brute_force_hyperbranching_packing(d, inst.spec)) brute = AnyPacking(*b);
    }
    const bool holds = o.flip_checker ? !cond.holds : cond.holds;
    const auto constructive = pack_instance(inst, opts);
    const bool built = constructive.packing.has_value();

    report.feasible = holds;
    report.stats["enumerated"] = cond.scanned;
    report.checks.push_back({"constructive-agrees", built == holds, fmt::format("conditions {}, construction {}",
                                                                               holds ? "hold" : "fail", built ? "succeeds" : "fails")});
    report.checks.push_back({"brute-force-agrees", brute.has_value() == holds,
                             fmt::format("conditions {}, exhaustive search {}", holds ? "hold" : "fail",
                                         brute ? "finds a packing" : "finds none")});
    if (built) {
        const auto diag = verify_packing(inst, *constructive.packing);
        report.checks.push_back({"constructive-verifies", diag.ok(), diag.ok() ? "" : diag.problems.front()});
        report.packing = packing_to_json(inst, *constructive.packing);
    } else if (constructive.infeasible) {
        report.witness = infeasibility_to_json(inst, *constructive.infeasible);
    }
    if (brute) {
        const auto diag = verify_packing(inst, *brute);
        report.checks.push_back({"brute-force-verifies", diag.ok(), diag.ok() ? "" : diag.problems.front()});
    }
    timer.record(report.stats, "oracle");
    return report.all_checks_pass() ? exit_ok : exit_negative;
}

std::vector<int> parse_weights(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int w = 0;
        try {
            w = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(fmt::format("weight '{}' is not an integer", item));
        }
        if (used != item.size() || w <= 0) throw std::invalid_argument(fmt::format("weight '{}' is not a positive integer", item));
        out.push_back(w);
    }
    if (out.empty()) throw std::invalid_argument("no weights given");
    return out;
}

int cmd_reduce(const Options& o, Json& doc)
{
    const auto weights = parse_weights(o.weights);
    const auto red = reduce_partition_instance(weights);
    Json digraph;
    digraph["type"] = "digraph";
    digraph["vertices"] = Json::array();
    for (int v = 0; v < red.digraph.vertex_count(); ++v) digraph["vertices"].push_back(fmt::format("v{}", v));
    digraph["arcs"] = Json::array();
    for (const auto& a : red.digraph.arcs()) {
        digraph["arcs"].push_back({{"tails", Json::array({fmt::format("v{}", a.tail)})}, {"head", fmt::format("v{}", a.head)}});
    }
    const auto split = solve_partition(weights);
    const bool branching = !red.odd_total && has_regular_branching_packing_with_arcs(red.digraph, red.h, red.k, red.ell);
    doc["digraph"] = digraph;
    doc["h"] = red.h;
    doc["k"] = red.k;
    doc["ell"] = red.ell;
    doc["odd_total"] = red.odd_total;
    doc["partition"] = split ? Json(*split) : Json(nullptr);
    doc["branching_packing_exists"] = branching;
    doc["agree"] = split.has_value() == branching;
    return split.has_value() == branching ? exit_ok : exit_negative;
}

void emit(const Options& o, const Json& doc, std::ostream& out)
{
    const auto text = doc.dump(2) + "\n";
    if (o.json_out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.json_out, std::ios::binary);
    if (!f) throw InvalidInstance(fmt::format("cannot write '{}'", o.json_out));
    f << text;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Feasibility checks and constructive packings of rooted forests and branchings"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--cap-bell", o.cap_bell, "Largest vertex count for exhaustive partition enumeration")->check(CLI::Range(1, 15));
    app.add_option("--seed", o.seed, "Seed recorded in the report (all commands are deterministic)");
    app.add_option("--json-out", o.json_out, "Write the report to this path instead of stdout");
    app.add_flag("--timings", o.timings, "Add wall-clock timings to the report stats");

    auto* check = app.add_subcommand("check", "Evaluate a theorem's conditions on an instance");
    check->add_option("file", o.file, "Instance JSON")->required();
    check->add_option("--theorem", o.theorem, "Theorem id, T8..T33")->required();
    auto* pack = app.add_subcommand("pack", "Build and verify a packing, or report a violated condition");
    pack->add_option("file", o.file, "Instance JSON")->required();
    auto* verify = app.add_subcommand("verify", "Verify a packing against an instance");
    verify->add_option("file", o.file, "Instance JSON")->required();
    verify->add_option("--packing", o.packing_file, "Packing or report JSON")->required();
    auto* oracle = app.add_subcommand("oracle", "Compare conditions, construction and exhaustive search");
    oracle->add_option("file", o.file, "Instance JSON")->required();
    oracle->add_flag("--flip-checker", o.flip_checker, "Invert the condition checker (harness self-test)")->group("");
    auto* reduce = app.add_subcommand("reduce-partition", "Build the branching instance of a PARTITION instance");
    reduce->add_option("weights", o.weights, "Comma-separated positive weights")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg, help;
        const int code = app.exit(e, help, msg);
        out << help.str();
        err << msg.str();
        return code == 0 ? exit_ok : exit_usage;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        if (o.command == "reduce-partition") {
            Json doc;
            const int code = cmd_reduce(o, doc);
            emit(o, doc, out);
            return code;
        }
        Report report;
        int code = exit_ok;
        if (o.command == "check") code = cmd_check(o, report);
        else if (o.command == "pack") code = cmd_pack(o, report);
        else if (o.command == "verify") code = cmd_verify(o, report);
        else code = cmd_oracle(o, report);
        emit(o, report.to_json(), out);
        return code;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return exit_cap;
    } catch (const std::invalid_argument& e) {
        // InvalidInstance, SpecError, unknown theorem ids and bad weights.
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

} // namespace rootpack
