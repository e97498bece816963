#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "scd/cliquewidth.hpp"
#include "scd/errors.hpp"
#include "scd/immersion_dp.hpp"
#include "scd/io.hpp"
#include "scd/irrelevant.hpp"
#include "scd/oracles.hpp"
#include "scd/pathwidth.hpp"
#include "scd/pipeline.hpp"

using json = nlohmann::json;
using namespace scd;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string profile = "theoretical";
    double budget = 1e7;
    bool json = false;
};

Globals g;

std::vector<int> one_based(const std::vector<Vertex>& v) {
    std::vector<int> out;
    for (Vertex x : v) out.push_back(x + 1);
    return out;
}

json bags_json(const std::vector<std::vector<Vertex>>& bags) {
    json out = json::array();
    for (const auto& b : bags) out.push_back(one_based(b));
    return out;
}

json model_json(const Model& m) {
    json paths = json::array();
    for (const auto& p : m.paths) paths.push_back(one_based(p));
    return {{"vertex_map", one_based(m.vertex_map)}, {"paths", paths}};
}

json triple_json(const Triple& tr) {
    return {{"k", tr.k}, {"a", one_based(tr.a)}, {"b", one_based(tr.b)}, {"c", one_based(tr.c)}};
}

Digraph load_host(const std::string& path) {
    std::istringstream in(read_file(path));
    return Digraph::from_raw(parse_digraph(in));
}

PatternDigraph load_pattern(const std::string& path) {
    std::istringstream in(read_file(path));
    return parse_pattern(in);
}

PathDecomposition load_bags(const std::string& path, int n) {
    std::istringstream in(read_file(path));
    return {parse_bags(in, n)};
}

// Space or comma separated 1-based ids.
std::vector<Vertex> parse_id_list(const std::string& text, int n) {
    std::string s = text;
    for (char& c : s)
        if (c == ',') c = ' ';
    std::istringstream in(s);
    std::vector<Vertex> out;
    std::string tok;
    while (in >> tok) {
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("not a vertex id: " + tok);
        }
        if (v < 1 || v > n) throw InputError("vertex id out of range: " + tok);
        out.push_back(v - 1);
    }
    return out;
}

SolveOptions solve_options() {
    SolveOptions o;
    o.profile = g.profile == "opportunistic" ? Profile::Opportunistic : Profile::Theoretical;
    o.budget = g.budget;
    return o;
}

void emit(const json& j, const std::string& text) {
    if (g.json) std::cout << j.dump(2) << '\n';
    else std::cout << text;
}

json report_json(const SolveReport& r) {
    json j{{"answer", r.answer},
           {"method", method_name(r.method)},
           {"profile", profile_name(r.profile)},
           {"iterations", r.iterations},
           {"k_reached", r.k_reached},
           {"dp_states", r.dp_states},
           {"deleted", one_based(r.deleted)},
           {"log", r.log}};
    if (r.model) j["model"] = model_json(*r.model);
    if (r.decomposition) j["decomposition"] = bags_json(r.decomposition->bags);
    if (r.triple) j["triple"] = triple_json(*r.triple);
    if (r.jungle) j["jungle"] = one_based(r.jungle->z);
    if (r.method == Method::DeletionSearch || r.method == Method::Trivial) j["deletion_set"] = one_based(r.deletion_set);
    return j;
}

std::string report_text(const SolveReport& r, bool witness) {
    std::ostringstream out;
    out << (r.answer ? "YES" : "NO") << '\n';
    out << "# method: " << method_name(r.method) << ", profile: " << profile_name(r.profile) << '\n';
    for (const auto& line : r.log) out << "# " << line << '\n';
    if (!r.deleted.empty()) out << "# deleted: " << format_ids(r.deleted) << '\n';
    if (witness && r.model) out << format_model(r.pattern, *r.model);
    return out.str();
}

// ---- subcommands ----

struct GenArgs {
    std::string kind;
    int n = 0;
    int two_cycles = 0;
};

int run_gen(const GenArgs& a) {
    Digraph d;
    json extra;
    if (a.kind == "random") {
        if (!g.seed_given) throw InputError("gen random requires --seed");
        d = a.two_cycles > 0 ? gen_random_semicomplete(a.n, g.seed, a.two_cycles) : gen_random_tournament(a.n, g.seed);
    } else if (a.kind == "transitive") {
        d = gen_transitive(a.n);
    } else {
        auto ce = gen_counterexample(a.n);
        d = ce.graph;
        json pairs = json::array();
        for (auto [s, t] : ce.pairs) pairs.push_back({s + 1, t + 1});
        extra["pairs"] = pairs;
        if (auto tr = counterexample_triple(ce)) extra["triple"] = triple_json(*tr);
    }
    if (g.json) {
        json arcs = json::array();
        for (auto [u, v] : d.arcs()) arcs.push_back({u + 1, v + 1});
        json j{{"n", d.size()}, {"arcs", arcs}};
        j.update(extra);
        std::cout << j.dump(2) << '\n';
    } else {
        write_digraph(std::cout, d);
    }
    return 0;
}

int run_validate(const std::string& path, bool pattern) {
    if (pattern) {
        PatternDigraph h = load_pattern(path);
        json j{{"vertices", h.n},
               {"arcs", h.arcs.size()},
               {"roots", one_based(h.roots)},
               {"loops", h.has_loops()},
               {"size", h.size()}};
        std::ostringstream out;
        out << "vertices: " << h.n << "\narcs: " << h.arcs.size() << "\nroots: " << format_ids(h.roots)
            << "\nloops: " << (h.has_loops() ? "yes" : "no") << "\n|H|: " << h.size() << '\n';
        emit(j, out.str());
        return 0;
    }
    std::istringstream in(read_file(path));
    RawDigraph raw = parse_digraph(in);
    ClassFlags f = validate_class(raw);
    json j{{"vertices", raw.n}, {"arcs", raw.arcs.size()}, {"simple", f.simple},
           {"semicomplete", f.semicomplete}, {"tournament", f.tournament}};
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream out;
    out << "vertices: " << raw.n << "\narcs: " << raw.arcs.size() << "\nsimple: " << yn(f.simple)
        << "\nsemicomplete: " << yn(f.semicomplete) << "\ntournament: " << yn(f.tournament) << '\n';
    emit(j, out.str());
    return 0;
}

struct DecomposeArgs {
    std::string host;
    int k = 1;
    bool literal = false;
    bool dump_bundle = false;
    bool cwexpr = false;
};

int run_decompose(const DecomposeArgs& a) {
    Digraph t = load_host(a.host);
    PathwidthOptions opts;
    opts.literal_thresholds = a.literal;
    if (a.dump_bundle) {
        BundleOptions bo;
        bo.literal_thresholds = a.literal;
        Bundle bundle = build_bundle(t, a.k, bo);
        for (const auto& s : bundle.members) std::cerr << "# bundle " << format_separation(s) << '\n';
    }
    PathwidthResult r = approximate_pathwidth(t, a.k, opts);
    json j{{"k", a.k}, {"width_bound", r.width_bound}};
    std::ostringstream out;
    if (r.is_jungle) {
        j["result"] = "jungle";
        j["jungle"] = one_based(r.jungle.z);
        out << "JUNGLE\n" << format_ids(r.jungle.z) << '\n';
    } else {
        j["result"] = "decomposition";
        j["width"] = r.decomposition.width();
        j["bags"] = bags_json(r.decomposition.bags);
        j["short_circuited"] = r.short_circuited;
        out << "DECOMPOSITION\n# width " << r.decomposition.width() << " (bound " << r.width_bound << ")\n";
        write_bags(out, r.decomposition.bags);
        if (a.cwexpr) {
            auto expr = cwexpr_from_decomposition(t, r.decomposition);
            j["cwexpr"] = expr.str();
            j["cwexpr_labels"] = expr.labels;
            out << "# clique-width expression, " << expr.labels << " labels\n" << expr.str() << '\n';
        }
    }
    emit(j, out.str());
    return 0;
}

int run_find_triple(const std::string& host, int k, bool opportunistic) {
    Digraph t = load_host(host);
    PathwidthResult r = approximate_pathwidth(t, k);
    if (!r.is_jungle) {
        emit({{"result", "no-jungle"}, {"width", r.decomposition.width()}},
             "NO JUNGLE\n# decomposition of width " + std::to_string(r.decomposition.width()) + '\n');
        return 0;
    }
    auto ex = triple_from_jungle(t, r.jungle.z, k,
                                 opportunistic ? ExtractionMode::Opportunistic : ExtractionMode::Theoretical);
    if (!ex.triple) {
        emit({{"result", "none"}, {"jungle", one_based(r.jungle.z)}, {"reason", ex.reason}},
             "NO TRIPLE\n# jungle: " + format_ids(r.jungle.z) + "\n# reason: " + ex.reason + '\n');
        return ex.reason == "threshold" ? 3 : 0;
    }
    emit({{"result", "triple"}, {"jungle", one_based(r.jungle.z)}, {"triple", triple_json(*ex.triple)}},
         "TRIPLE\n" + format_triple(*ex.triple));
    return 0;
}

struct IrrelevantArgs {
    std::string pattern, host, triple, roots;
    bool check = false;
};

int run_irrelevant(const IrrelevantArgs& a) {
    PatternDigraph h = load_pattern(a.pattern);
    RootedHost host{load_host(a.host), {}};
    host.roots = parse_id_list(a.roots, host.graph.size());
    std::istringstream in(read_file(a.triple));
    TripleParts parts = parse_triple_parts(in, host.graph.size());
    auto tr = verify_triple(host.graph, parts.a, parts.b, parts.c);
    if (!tr) throw InputError("the triple file does not describe a triple of the host");
    IrrelevantOptions opts;
    opts.opportunistic = g.profile == "opportunistic";
    IrrelevantReport rep = find_irrelevant_vertex(h, host, *tr, opts);
    json j{{"x", rep.x + 1},
           {"k", rep.k},
           {"p", rep.p},
           {"b_empty", rep.b_empty.size()},
           {"took_b_empty", rep.took_b_empty},
           {"x_set", one_based(rep.x_set)},
           {"phase2_empty", rep.phase2_empty},
           {"warnings", rep.warnings}};
    std::string text = format_irrelevant_report(rep);
    if (a.check) {
        bool kept = check_answer_preserved(h, host, rep.x);
        j["answer_preserved"] = kept;
        text += std::string("answer preserved: ") + (kept ? "yes" : "no") + '\n';
    }
    emit(j, text);
    return 0;
}

struct ContainArgs {
    std::string pattern, host, decomposition, roots, triple;
    bool rooted = false;
    bool witness = false;
};

// A decomposition file bypasses the pipeline and runs the DP on it directly.
int run_direct_dp(const PatternDigraph& h, const RootedHost& host, const std::string& path, bool topological,
                  bool witness) {
    PathDecomposition w = load_bags(path, host.graph.size());
    DpOptions o;
    o.budget = g.budget;
    DpResult r = topological ? dp_topological_containment(h, host.graph, w, o) : dp_rooted_immersion(h, host, w, o);
    json j{{"answer", r.answer}, {"method", "dp"}, {"dp_states", r.max_layer_states}, {"width", w.width()}};
    std::ostringstream out;
    out << (r.answer ? "YES" : "NO") << "\n# DP on the given width-" << w.width() << " decomposition, "
        << r.max_layer_states << " states in the widest layer\n";
    if (r.model) {
        j["model"] = model_json(*r.model);
        if (witness) out << format_model(h, *r.model);
    }
    emit(j, out.str());
    return 0;
}

int run_check_containment(const ContainArgs& a) {
    PatternDigraph h = load_pattern(a.pattern);
    Digraph t = load_host(a.host);
    if (!a.decomposition.empty()) return run_direct_dp(subdivide_loops(h), {t, {}}, a.decomposition, true, a.witness);
    SolveReport r = solve_topological_containment(h, t, solve_options());
    emit(report_json(r), report_text(r, a.witness));
    return 0;
}

int run_check_immersion(const ContainArgs& a) {
    PatternDigraph h = load_pattern(a.pattern);
    RootedHost host{load_host(a.host), {}};
    if (a.rooted) host.roots = parse_id_list(a.roots, host.graph.size());
    else if (!h.roots.empty()) throw InputError("the pattern has roots; pass --rooted and --roots");
    if (!a.decomposition.empty())
        return run_direct_dp(subdivide_loops(h), host, a.decomposition, false, a.witness);
    SolveOptions o = solve_options();
    if (!a.triple.empty()) {
        std::istringstream in(read_file(a.triple));
        TripleParts parts = parse_triple_parts(in, host.graph.size());
        o.triple_hint = verify_triple(host.graph, parts.a, parts.b, parts.c);
        if (!o.triple_hint) throw InputError("the triple file does not describe a triple of the host");
    }
    SolveReport r = solve_rooted_immersion(h, host, o);
    emit(report_json(r), report_text(r, a.witness));
    return 0;
}

struct PiKvArgs {
    std::string host;
    std::vector<std::string> obstructions;
    int k = 0;
    int c_pi = -1;
};

int run_pi_kv(const PiKvArgs& a) {
    Digraph t = load_host(a.host);
    std::vector<PatternDigraph> obs;
    for (const auto& f : a.obstructions) obs.push_back(load_pattern(f));
    std::optional<int> c_pi;
    if (a.c_pi >= 0) c_pi = a.c_pi;
    SolveReport r = solve_pi_kv(t, a.k, obs, c_pi, solve_options());
    std::string text = report_text(r, false);
    if (r.answer) text += "DELETE: " + format_ids(r.deletion_set) + '\n';
    emit(report_json(r), text);
    return 0;
}

struct OracleArgs {
    std::string kind, host, pattern, mode = "topological", roots, pairs;
    int counterexample = 0;
    bool compare = false;
};

int run_oracle(const OracleArgs& a) {
    if (a.kind == "vdp") {
        Digraph t;
        std::vector<std::pair<Vertex, Vertex>> pairs;
        if (a.counterexample > 0) {
            auto ce = gen_counterexample(a.counterexample);
            t = ce.graph;
            pairs = ce.pairs;
        } else {
            if (a.host.empty()) throw InputError("oracle vdp needs --host or --counterexample");
            t = load_host(a.host);
            auto ids = parse_id_list(a.pairs, t.size());
            if (ids.empty() || ids.size() % 2) throw InputError("--pairs needs an even number of ids");
            for (std::size_t i = 0; i < ids.size(); i += 2) pairs.emplace_back(ids[i], ids[i + 1]);
        }
        auto sols = oracle::brute_force_vdp(t, pairs);
        json js = json::array();
        std::ostringstream out;
        out << "SOLUTIONS " << sols.size() << '\n';
        for (const auto& sol : sols) {
            json one = json::array();
            int used = 0;
            for (const auto& p : sol) {
                one.push_back(one_based(p));
                out << format_ids(p) << '\n';
                used += static_cast<int>(p.size());
            }
            out << "# covers " << used << " of " << t.size() << " vertices\n";
            js.push_back(one);
        }
        emit({{"count", sols.size()}, {"solutions", js}}, out.str());
        return 0;
    }

    if (a.host.empty()) throw InputError("oracle " + a.kind + " needs --host");
    Digraph t = load_host(a.host);
    if (a.kind == "pathwidth") {
        auto pw = oracle::exact_pathwidth(t);
        json j{{"pathwidth", pw.width}, {"bags", bags_json(pw.bags)}};
        std::ostringstream out;
        out << "PATHWIDTH " << pw.width << '\n';
        if (a.compare) {
            PathDecomposition w = narrow_decomposition(t);
            j["heuristic_width"] = w.width();
            out << "heuristic " << w.width() << (w.width() == pw.width ? " (same)" : " (differs)") << '\n';
        }
        emit(j, out.str());
        return 0;
    }
    if (a.kind == "cutwidth") {
        auto cw = oracle::exact_cutwidth(t);
        json j{{"cutwidth", cw.width}, {"order", one_based(cw.order)}};
        std::ostringstream out;
        out << "CUTWIDTH " << cw.width << "\norder: " << format_ids(cw.order) << '\n';
        if (a.compare) {
            PathDecomposition w = decomposition_from_cutwidth_order(t, cw.order);
            j["derived_width"] = w.width();
            out << "derived decomposition width " << w.width() << " (at most " << 2 * cw.width << ")\n";
        }
        emit(j, out.str());
        return 0;
    }

    // containment
    if (a.pattern.empty()) throw InputError("oracle containment needs --pattern");
    PatternDigraph h = subdivide_loops(load_pattern(a.pattern));
    std::vector<Vertex> roots = parse_id_list(a.roots, t.size());
    oracle::Mode mode = a.mode == "immersion" ? oracle::Mode::Immersion
                        : a.mode == "rooted"  ? oracle::Mode::RootedImmersion
                                              : oracle::Mode::Topological;
    bool ans = oracle::brute_force_containment(h, t, mode, roots);
    json j{{"answer", ans}, {"mode", a.mode}};
    std::string text = std::string(ans ? "YES" : "NO") + '\n';
    if (a.compare) {
        SolveReport r = mode == oracle::Mode::Topological ? solve_topological_containment(h, t, solve_options())
                                                          : solve_rooted_immersion(h, {t, roots}, solve_options());
        j["pipeline"] = r.answer;
        j["agree"] = r.answer == ans;
        text += std::string("pipeline ") + (r.answer ? "YES" : "NO") + " via " + method_name(r.method) +
                (r.answer == ans ? " (agree)\n" : " (DISAGREE)\n");
        emit(j, text);
        return r.answer == ans ? 0 : 1;
    }
    emit(j, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-complete digraph containment toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.option_defaults()->always_capture_default();
    auto* seed_opt = app.add_option("--seed", g.seed, "Seed for random generators");
    app.add_option("--profile", g.profile, "Threshold profile")
        ->check(CLI::IsMember({"theoretical", "opportunistic"}));
    app.add_option("--budget", g.budget, "DP states per layer / search budget");
    app.add_flag("--json", g.json, "Machine-readable output");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a host digraph");
    gen_cmd->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"random", "transitive", "counterexample"}));
    gen_cmd->add_option("-n,--n", gen.n, "Vertices (counterexample: the parameter n, giving 2n vertices)")
        ->required();
    gen_cmd->add_option("--two-cycles", gen.two_cycles, "random: percentage of pairs turned into 2-cycles")
        ->check(CLI::Range(0, 100));

    std::string validate_path;
    bool validate_pattern = false;
    auto* val_cmd = app.add_subcommand("validate", "Parse a file and report its class");
    val_cmd->add_option("file", validate_path)->required();
    val_cmd->add_flag("--pattern", validate_pattern, "Read the file as a pattern");

    DecomposeArgs dec;
    auto* dec_cmd = app.add_subcommand("decompose", "Path decomposition of width <= 4k^2+7k, or a k-jungle");
    dec_cmd->add_option("host", dec.host)->required();
    dec_cmd->add_option("--k", dec.k)->required()->check(CLI::PositiveNumber);
    dec_cmd->add_flag("--literal-thresholds", dec.literal, "Use the min() reading of the gap thresholds");
    dec_cmd->add_flag("--dump-bundle", dec.dump_bundle, "Print the top-level bundle to stderr");
    dec_cmd->add_flag("--cwexpr", dec.cwexpr, "Also print a clique-width expression");

    std::string ft_host;
    int ft_k = 1;
    bool ft_opp = false;
    auto* ft_cmd = app.add_subcommand("find-triple", "Extract a k-triple from a k-jungle");
    ft_cmd->add_option("host", ft_host)->required();
    ft_cmd->add_option("--k", ft_k)->required()->check(CLI::PositiveNumber);
    ft_cmd->add_flag("--opportunistic", ft_opp, "Attempt extraction below the size threshold");

    IrrelevantArgs irr;
    auto* irr_cmd = app.add_subcommand("irrelevant", "Find a vertex whose deletion keeps the rooted answer");
    irr_cmd->add_option("--pattern", irr.pattern)->required();
    irr_cmd->add_option("--host", irr.host)->required();
    irr_cmd->add_option("--triple", irr.triple)->required();
    irr_cmd->add_option("--roots", irr.roots, "Host roots, 1-based, in pattern-root order");
    irr_cmd->add_flag("--check", irr.check, "Confirm answer preservation with the oracle");

    ContainArgs tc;
    auto* tc_cmd = app.add_subcommand("check-containment", "Topological containment test");
    tc_cmd->add_option("--pattern", tc.pattern)->required();
    tc_cmd->add_option("--host", tc.host)->required();
    tc_cmd->add_option("--decomposition", tc.decomposition, "Run the DP on this decomposition");
    tc_cmd->add_flag("--witness", tc.witness, "Print the MODEL block");

    ContainArgs im;
    auto* im_cmd = app.add_subcommand("check-immersion", "Immersion or rooted immersion test");
    im_cmd->add_option("--pattern", im.pattern)->required();
    im_cmd->add_option("--host", im.host)->required();
    im_cmd->add_flag("--rooted", im.rooted, "Map pattern roots to --roots");
    im_cmd->add_option("--roots", im.roots, "Host roots, 1-based");
    im_cmd->add_option("--decomposition", im.decomposition, "Run the DP on this decomposition");
    im_cmd->add_option("--triple", im.triple, "Known triple of the host, used for irrelevant-vertex deletions");
    im_cmd->add_flag("--witness", im.witness, "Print the MODEL block");

    PiKvArgs pk;
    auto* pk_cmd = app.add_subcommand(
        "pi-kv",
        "Delete at most k vertices so that no obstruction immerses. The deletion-set search is exhaustive "
        "(C(n, <=k) candidates), not the logic-based FPT route.");
    pk_cmd->add_option("--host", pk.host)->required();
    pk_cmd->add_option("--k", pk.k)->required()->check(CLI::NonNegativeNumber);
    pk_cmd->add_option("--obstruction", pk.obstructions, "Obstruction pattern file (repeatable)")->required();
    pk_cmd->add_option("--c-pi", pk.c_pi, "Pathwidth bound of the class, enables the jungle shortcut");

    OracleArgs orc;
    auto* orc_cmd = app.add_subcommand("oracle", "Brute-force references");
    orc_cmd->add_option("kind", orc.kind)
        ->required()
        ->check(CLI::IsMember({"pathwidth", "cutwidth", "containment", "vdp"}));
    orc_cmd->add_option("--host", orc.host);
    orc_cmd->add_option("--pattern", orc.pattern);
    orc_cmd->add_option("--mode", orc.mode)->check(CLI::IsMember({"topological", "immersion", "rooted"}));
    orc_cmd->add_option("--roots", orc.roots);
    orc_cmd->add_option("--pairs", orc.pairs, "vdp terminal pairs as s1 t1 s2 t2 ...");
    orc_cmd->add_option("--counterexample", orc.counterexample, "vdp on the two-pair counterexample with this n");
    orc_cmd->add_flag("--compare", orc.compare, "Also run the main-path algorithm and compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    g.seed_given = seed_opt->count() > 0;

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*val_cmd) return run_validate(validate_path, validate_pattern);
        if (*dec_cmd) return run_decompose(dec);
        if (*ft_cmd) return run_find_triple(ft_host, ft_k, ft_opp);
        if (*irr_cmd) return run_irrelevant(irr);
        if (*tc_cmd) return run_check_containment(tc);
        if (*im_cmd) return run_check_immersion(im);
        if (*pk_cmd) return run_pi_kv(pk);
        if (*orc_cmd) return run_oracle(orc);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const ThresholdError& e) {
        std::cerr << "threshold not met: " << e.what() << " (" << e.quantity() << " = " << e.have() << ", need "
                  << e.need() << ")\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << " (estimate " << e.estimate() << ")\n";
        return 3;
    }
    return 2;
}
