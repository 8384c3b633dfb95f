#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "zpwalk/error.hpp"
#include "zpwalk/generate.hpp"
#include "zpwalk/report.hpp"
#include "zpwalk/selftest.hpp"
#include "zpwalk/synthesis.hpp"

namespace zpwalk::cli {

namespace {

int exit_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::StateSpaceTooLarge:
        case ErrorCode::EnumerationTooLarge:
        case ErrorCode::SynthesisIncomplete: return kResource;
        case ErrorCode::Mismatch:
        case ErrorCode::InternalSynthesisFailure: return kMismatch;
        case ErrorCode::Unsolvable:
        case ErrorCode::Unreachable:
        case ErrorCode::Infeasible:
        case ErrorCode::IllegalMove: return kNegative;
        default: return kUsage;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::UsageError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Input {
    Instance instance;
    std::string canonical;
};

Input load(const RunConfig& c) {
    if (c.graph_path.empty()) throw Error(ErrorCode::UsageError, "missing hypergraph file");
    auto inst = parse_hypergraph(read_file(c.graph_path));
    auto text = format_hypergraph(inst.modulus, inst.graph);
    return {std::move(inst), std::move(text)};
}

State state_arg(const Input& in, const std::string& literal, const char* flag) {
    if (literal.empty()) throw Error(ErrorCode::UsageError, std::string("missing ") + flag);
    return parse_state(literal, in.instance.modulus, in.instance.graph.vertex_count());
}

int emit(const RunConfig& c, std::ostream& out, const Report& r, const std::string& human, int code) {
    if (c.json) {
        out << to_json(r).dump() << "\n";
    } else {
        out << human;
    }
    return code;
}

std::string describe(const Certificate& cert) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ResidueVector>) {
                return "solution " + format_state(x);
            } else if constexpr (std::is_same_v<T, Schedule>) {
                return "path of " + std::to_string(x.size()) + " moves";
            } else if constexpr (std::is_same_v<T, UnsolvabilityRank>) {
                return "rank " + std::to_string(x.rank) + " < augmented rank " + std::to_string(x.augmented_rank);
            } else if constexpr (std::is_same_v<T, OrbitExhausted>) {
                return "orbit of " + std::to_string(x.orbit_size) + " states";
            } else {
                return "target has no predecessor";
            }
        },
        cert);
}

DecisionOptions decision_options(const RunConfig& c, const Hypergraph& g) {
    DecisionOptions o;
    o.mode = c.mode;
    o.max_states = c.max_states;
    o.necessary_only = c.necessary_only;
    if (c.necessary_only && o.mode == Mode::Both) o.mode = Mode::Algebraic;
    if (c.allow_nongood && !c.necessary_only && o.mode != Mode::Oracle && !is_good(g).good) o.mode = Mode::Oracle;
    return o;
}

int check_good(const RunConfig& c, std::ostream& out) {
    const auto in = load(c);
    const auto report = is_good(in.instance.graph);
    std::ostringstream human;
    human << "good=" << (report.good ? "true" : "false") << "\n";
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        human << "violation " << to_string(v.kind);
        for (auto d : v.detail) human << ' ' << d;
        human << "\n";
        violations.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
    }
    Report r{"check-good",
             input_digest(in.canonical),
             report.good ? "good" : "not good",
             "structural",
             Json{{"kind", "violations"}, {"violations", violations}},
             Json{{"vertices", in.instance.graph.vertex_count()}, {"edges", in.instance.graph.edge_count()}}};
    return emit(c, out, r, human.str(), report.good ? kOk : kNegative);
}

int decide(const RunConfig& c, std::ostream& out, bool recurrence) {
    const auto in = load(c);
    const auto& g = in.instance.graph;
    const auto& p = in.instance.modulus;
    const State w1 = state_arg(in, c.from, "--from");
    const State w2 = state_arg(in, c.to, "--to");
    const auto opts = decision_options(c, g);
    const auto d = recurrence ? decide_recurrence(g, p, w1, w2, opts) : decide_reachability(g, p, w1, w2, opts);

    std::string answer;
    if (!d.conclusive) {
        answer = "inconclusive";
    } else if (recurrence) {
        answer = d.answer ? "recurrent" : "not recurrent";
    } else {
        answer = d.answer ? "reachable" : "unreachable";
    }
    Certificate cert = d.certificate;
    if (!recurrence && c.witness && d.answer && d.conclusive && w1 != w2) {
        if (d.method == Method::Oracle && std::holds_alternative<Schedule>(cert)) {
            // already a path
        } else {
            SynthesisOptions so;
            so.max_states = c.max_states;
            so.cap = c.cap;
            cert = synthesize_schedule(g, p, w1, w2, so);
        }
    }

    std::ostringstream human;
    human << answer << "\n"
          << "method " << to_string(d.method) << "\n"
          << "reason " << d.reason << "\n"
          << "certificate " << describe(cert) << "\n";
    if (d.oracle_answer) human << "oracle agrees\n";
    if (c.witness && std::holds_alternative<Schedule>(cert)) human << format_schedule(std::get<Schedule>(cert));

    Json stats{{"reason", d.reason}, {"conclusive", d.conclusive}};
    if (d.oracle_answer) stats["oracle_answer"] = *d.oracle_answer;
    Report r{recurrence ? "recur" : "reach",
             input_digest(in.canonical + "from " + format_state(w1) + "\nto " + format_state(w2) + "\n"),
             answer,
             std::string(to_string(d.method)),
             certificate_to_json(cert),
             stats};
    return emit(c, out, r, human.str(), d.answer || !d.conclusive ? kOk : kNegative);
}

int classify(const RunConfig& c, std::ostream& out) {
    const auto in = load(c);
    const State w = state_arg(in, c.state, "--state");
    const auto cls = classify_state(in.instance.graph, in.instance.modulus, w, decision_options(c, in.instance.graph));
    std::ostringstream human;
    human << to_string(cls.state_class) << "\nmethod " << to_string(cls.method) << "\n";
    Json stats = Json::object();
    if (cls.oracle_class) {
        human << "oracle agrees\n";
        stats["oracle_class"] = to_string(*cls.oracle_class);
    }
    Report r{"classify", input_digest(in.canonical + "state " + format_state(w) + "\n"),
             std::string(to_string(cls.state_class)), std::string(to_string(cls.method)), Json(nullptr), stats};
    return emit(c, out, r, human.str(), kOk);
}

int orbit(const RunConfig& c, std::ostream& out) {
    const auto in = load(c);
    const State w = state_arg(in, c.from, "--from");
    const auto o = orbit_bfs(in.instance.graph, in.instance.modulus, w, c.max_states);
    std::ostringstream human;
    human << "states " << o.size() << "\n";
    Json stats{{"states", o.size()}};
    if (c.list) {
        Json list = Json::array();
        for (std::size_t i = 0; i < o.size(); ++i) {
            human << format_state(o.state(i)) << "\n";
            list.push_back(format_state(o.state(i)));
        }
        stats["list"] = list;
    }
    Report r{"orbit", input_digest(in.canonical + "from " + format_state(w) + "\n"), std::to_string(o.size()),
             "oracle", certificate_to_json(OrbitExhausted{o.size()}), stats};
    return emit(c, out, r, human.str(), kOk);
}

int schedule(const RunConfig& c, std::ostream& out) {
    const auto in = load(c);
    const auto& g = in.instance.graph;
    const auto& p = in.instance.modulus;
    const State w1 = state_arg(in, c.from, "--from");
    const State w2 = state_arg(in, c.to, "--to");
    SynthesisResult result;
    std::string method = "constructive";
    if (c.mode == Mode::Oracle || (c.allow_nongood && !is_good(g).good)) {
        auto path = oracle_schedule(g, p, w1, w2, c.max_states);
        if (!path) throw Error(ErrorCode::Unreachable, "target is not reachable");
        result.schedule = std::move(*path);
        result.stats.length = result.schedule.size();
        method = "oracle";
    } else {
        SynthesisOptions so;
        so.max_states = c.max_states;
        so.cap = c.cap;
        result = synthesize(g, p, w1, w2, so);
    }
    const auto& s = result.stats;
    std::ostringstream human;
    human << "# from " << format_state(w1) << " to " << format_state(w2) << "\n"
          << "# " << s.length << " moves, " << s.fallbacks << " search-assisted steps\n"
          << format_schedule(result.schedule);
    Json stats{{"length", s.length},           {"edge_splits", s.edge_splits}, {"descent_moves", s.descent_moves},
               {"virtual_moves", s.virtual_moves}, {"propagations", s.propagations}, {"edge_solves", s.edge_solves},
               {"fallbacks", s.fallbacks},     {"fallback_moves", s.fallback_moves}};
    Report r{"schedule",
             input_digest(in.canonical + "from " + format_state(w1) + "\nto " + format_state(w2) + "\n"),
             "reachable", method, certificate_to_json(result.schedule), stats};
    return emit(c, out, r, human.str(), kOk);
}

int verify(const RunConfig& c, std::ostream& out) {
    const auto in = load(c);
    const State w1 = state_arg(in, c.from, "--from");
    const State w2 = state_arg(in, c.to, "--to");
    if (c.schedule_path.empty()) throw Error(ErrorCode::UsageError, "missing --schedule");
    const auto text = read_file(c.schedule_path);
    const Schedule s = parse_schedule(text);
    std::string answer;
    std::string detail;
    int code = kOk;
    try {
        const State end = replay_schedule(in.instance.graph, in.instance.modulus, w1, s);
        if (end == w2) {
            answer = "verified";
        } else {
            answer = "wrong endpoint";
            detail = "ends at " + format_state(end);
            code = kNegative;
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::IllegalMove) throw;
        answer = "illegal move";
        detail = "step " + std::to_string(e.detail());
        code = kNegative;
    }
    std::ostringstream human;
    human << answer << "\n" << "moves " << s.size() << "\n";
    if (!detail.empty()) human << detail << "\n";
    Report r{"verify",
             input_digest(in.canonical + "from " + format_state(w1) + "\nto " + format_state(w2) + "\n" + text),
             answer, "replay", certificate_to_json(s), Json{{"moves", s.size()}, {"detail", detail}}};
    return emit(c, out, r, human.str(), code);
}

int gen(const RunConfig& c, std::ostream& out) {
    const auto g = gen_good_hypergraph(c.vertices, c.edges, c.seed);
    const FieldModulus p(c.modulus);
    const auto text = format_hypergraph(p, g);
    Report r{"gen",
             input_digest("vertices " + std::to_string(c.vertices) + " edges " + std::to_string(c.edges) + " seed " +
                          std::to_string(c.seed)),
             text, "generator", Json(nullptr), Json{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}}};
    return emit(c, out, r, text, kOk);
}

int run_selftest(const RunConfig& c, std::ostream& out) {
    SelftestConfig sc;
    sc.family_max_n = c.max_n;
    sc.family_max_m = c.max_m;
    sc.random_graphs = c.random_graphs;
    sc.random_max_n = c.random_max_n;
    sc.random_max_m = c.random_max_m;
    sc.primes = c.primes;
    sc.samples = c.samples;
    sc.seed = c.seed;
    sc.max_states = c.max_states;
    std::string canonical;
    for (const auto& path : c.include) {
        auto inst = parse_hypergraph(read_file(path));
        if (!is_good(inst.graph).good && !c.allow_nongood) {
            throw Error(ErrorCode::NotGood, path + " is not good; pass --allow-nongood to run the one-sided filter");
        }
        canonical += format_hypergraph(inst.modulus, inst.graph);
        sc.extra.push_back(std::move(inst));
    }
    const auto r = selftest(sc);
    Json stats{{"graphs", r.graphs},
               {"skipped", r.skipped},
               {"pairs", r.pairs},
               {"reach_agree", r.reach_agree},
               {"certified", r.certified},
               {"undetermined", r.undetermined},
               {"recur_pairs", r.recur_pairs},
               {"recur_agree", r.recur_agree},
               {"solvable_unreachable", r.solvable_unreachable},
               {"solvable_unreachable_saturated", r.solvable_unreachable_saturated},
               {"schedules", r.schedules},
               {"schedules_verified", r.schedules_verified},
               {"schedules_with_fallback", r.schedules_with_fallback},
               {"incomplete", r.incomplete},
               {"nongood_pairs", r.nongood_pairs},
               {"nongood_divergences", r.nongood_divergences},
               {"mismatches", r.mismatch_count}};
    std::ostringstream key;
    key << "family " << c.max_n << ' ' << c.max_m << " random " << c.random_graphs << ' ' << c.random_max_n << ' '
        << c.random_max_m << " samples " << c.samples << " seed " << c.seed << "\n"
        << canonical;
    Report rep{"selftest", input_digest(key.str()), r.passed() ? "pass" : "fail", "both",
               Json{{"kind", "mismatches"}, {"dumps", r.mismatches}}, stats};
    return emit(c, out, rep, format_selftest(r), r.passed() ? kOk : kMismatch);
}

}  // namespace

std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out) {
    RunConfig c;
    std::string mode = "both";
    CLI::App app{"Reachability and recurrence for Z_p-annihilating walks on hypergraphs"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--mode", mode, "algebraic, oracle or both")->capture_default_str();
        sub->add_option("--max-states", c.max_states, "bound on explored states")->capture_default_str();
        sub->add_option("--cap", c.cap, "bound on enumerated solutions")->capture_default_str();
        sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
        sub->add_flag("--json", c.json, "print one JSON object");
        sub->add_flag("--allow-nongood", c.allow_nongood, "accept hypergraphs that are not good");
        sub->add_flag("--necessary-only", c.necessary_only, "use the system only as a necessary condition");
    };
    auto graph = [&](CLI::App* sub) { sub->add_option("graph", c.graph_path, "hypergraph file")->required(); };

    auto* check = app.add_subcommand("check-good", "report whether the hypergraph is good");
    graph(check);
    common(check);
    for (const char* name : {"reach", "recur"}) {
        auto* sub = app.add_subcommand(name, std::string(name) == "reach" ? "decide reachability" : "decide recurrence");
        graph(sub);
        common(sub);
        sub->add_option("--from", c.from, "start state, e.g. 1,0,2")->required();
        sub->add_option("--to", c.to, "target state")->required();
        if (std::string(name) == "reach") sub->add_flag("--witness", c.witness, "print a schedule when reachable");
    }
    auto* cls = app.add_subcommand("classify", "classify a state as transient or not");
    graph(cls);
    common(cls);
    cls->add_option("--state", c.state, "the state")->required();
    auto* orb = app.add_subcommand("orbit", "explore every state reachable from a start state");
    graph(orb);
    common(orb);
    orb->add_option("--from", c.from, "start state")->required();
    orb->add_flag("--list", c.list, "print the states in search order");
    auto* sch = app.add_subcommand("schedule", "build a move schedule");
    graph(sch);
    common(sch);
    sch->add_option("--from", c.from, "start state")->required();
    sch->add_option("--to", c.to, "target state")->required();
    sch->add_flag("--witness", c.witness, "accepted for symmetry with reach");
    auto* ver = app.add_subcommand("verify", "replay a schedule file");
    graph(ver);
    common(ver);
    ver->add_option("--from", c.from, "start state")->required();
    ver->add_option("--to", c.to, "expected end state")->required();
    ver->add_option("--schedule", c.schedule_path, "schedule file")->required();
    auto* gn = app.add_subcommand("gen", "generate a random good hypergraph");
    common(gn);
    gn->add_option("--vertices,-n", c.vertices, "vertex count")->required();
    gn->add_option("--edges,-m", c.edges, "edge count")->required();
    gn->add_option("--p", c.modulus, "modulus written to the file")->capture_default_str();
    auto* st = app.add_subcommand("selftest", "compare the algebraic tests with search");
    common(st);
    st->add_option("--max-n", c.max_n, "every good hypergraph up to this many vertices")->capture_default_str();
    st->add_option("--max-m", c.max_m, "and this many edges")->capture_default_str();
    st->add_option("--random", c.random_graphs, "random good hypergraphs to add")->capture_default_str();
    st->add_option("--random-max-n", c.random_max_n, "their largest vertex count")->capture_default_str();
    st->add_option("--random-max-m", c.random_max_m, "their largest edge count")->capture_default_str();
    st->add_option("--primes", c.primes, "moduli to test")->delimiter(',')->capture_default_str();
    st->add_option("--samples", c.samples, "sampled pairs per hypergraph")->capture_default_str();
    st->add_option("--include", c.include, "extra hypergraph files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, out);
        return code == 0 ? kOk : kUsage;
    }
    c.command = app.get_subcommands().front()->get_name();
    try {
        c.mode = parse_mode(mode);
    } catch (const Error& e) {
        out << e.what() << "\n";
        return kUsage;
    }
    return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == "check-good") return check_good(c, out);
        if (c.command == "reach") return decide(c, out, false);
        if (c.command == "recur") return decide(c, out, true);
        if (c.command == "classify") return classify(c, out);
        if (c.command == "orbit") return orbit(c, out);
        if (c.command == "schedule") return schedule(c, out);
        if (c.command == "verify") return verify(c, out);
        if (c.command == "gen") return gen(c, out);
        if (c.command == "selftest") return run_selftest(c, out);
        throw Error(ErrorCode::UsageError, "unknown command '" + c.command + "'");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e.code());
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    auto parsed = parse_args(argc, argv, out);
    if (const int* code = std::get_if<int>(&parsed)) return *code;
    return run(std::get<RunConfig>(parsed), out, err);
}

}  // namespace zpwalk::cli
