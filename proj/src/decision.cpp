#include "zpwalk/decision.hpp"

#include <algorithm>
#include <numeric>

#include "zpwalk/error.hpp"

namespace zpwalk {

Scope Scope::whole(const Hypergraph& g) {
    Scope s;
    s.edges.resize(g.edge_count());
    std::iota(s.edges.begin(), s.edges.end(), EdgeIndex{0});
    s.vertices.resize(g.vertex_count());
    std::iota(s.vertices.begin(), s.vertices.end(), Vertex{0});
    return s;
}

std::optional<std::size_t> ReachSystem::variable_index(EdgeIndex e, Vertex v) const {
    const auto it = std::find(variables.begin(), variables.end(), Incidence{e, v});
    if (it == variables.end()) return std::nullopt;
    return static_cast<std::size_t>(it - variables.begin());
}

ReachSystem build_system(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2) {
    return build_system(g, p, w1, w2, Scope::whole(g));
}

ReachSystem build_system(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                         const Scope& scope) {
    check_state(g, p, w1);
    check_state(g, p, w2);
    std::vector<Incidence> vars;
    for (EdgeIndex e : scope.edges) {
        for (Vertex v : g.edge(e)) vars.push_back({e, v});
    }
    std::vector<std::size_t> row_of(g.vertex_count(), SIZE_MAX);
    for (std::size_t r = 0; r < scope.vertices.size(); ++r) row_of[scope.vertices[r]] = r;

    ZpMatrixSystem sys(p, scope.vertices.size(), vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const auto [e, fired] = vars[j];
        for (Vertex u : g.edge(e)) {
            const auto r = row_of[u];
            if (r == SIZE_MAX) {
                throw Error(ErrorCode::ShapeError, "scope edge " + std::to_string(e) + " leaves the scope vertices");
            }
            sys.add_to(r, j, u == fired ? 1 : p.minus_one());
        }
    }
    for (std::size_t r = 0; r < scope.vertices.size(); ++r) {
        const Vertex v = scope.vertices[r];
        sys.set_rhs(r, p.sub(w1[v], w2[v]));
    }
    return ReachSystem{std::move(vars), scope.vertices, std::move(sys)};
}

State state_change(const Hypergraph& g, const FieldModulus& p, const ReachSystem& sys, const ResidueVector& x) {
    State delta(g.vertex_count(), 0);
    for (std::size_t j = 0; j < sys.variables.size(); ++j) {
        const auto [e, fired] = sys.variables[j];
        for (Vertex u : g.edge(e)) {
            delta[u] = u == fired ? p.sub(delta[u], x[j]) : p.add(delta[u], x[j]);
        }
    }
    return delta;
}

bool system_solvable(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2) {
    return gaussian_solve(build_system(g, p, w1, w2).system).solvable;
}

LinearInvariants::LinearInvariants(const Hypergraph& g, const FieldModulus& p) : p_(p), edges_(g.edge_count()) {
    const State zero = zero_state(g.vertex_count());
    const auto rs = build_system(g, p, zero, zero);
    const auto& a = rs.system;
    ZpMatrixSystem transposed(p, a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) transposed.set(c, r, a.at(r, c));
    }
    basis_ = gaussian_solve(transposed).kernel_basis;
}

ResidueVector LinearInvariants::evaluate(const State& w) const {
    ResidueVector out(basis_.size(), 0);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        for (std::size_t v = 0; v < w.size(); ++v) out[k] = p_.add(out[k], p_.mul(basis_[k][v], w[v]));
    }
    return out;
}

bool algebraic_reachable(const LinearInvariants& inv, const State& w1, const State& w2) {
    if (w1 == w2) return true;
    if (is_zero(w1) || is_saturated(inv.modulus(), w2)) return false;
    return inv.solvable(w1, w2);
}

bool algebraic_recurrent(const LinearInvariants& inv, const State& w1, const State& w2) {
    const State zero = zero_state(w1.size());
    if (is_zero(w1)) return is_zero(w2);
    if (is_zero(w2)) return algebraic_reachable(inv, w1, zero);
    if (!algebraic_reachable(inv, w1, w2) || algebraic_reachable(inv, w1, zero)) return false;
    return !(is_saturated(inv.modulus(), w2) && inv.edge_count() > 0);
}

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::Algebraic: return "algebraic";
        case Mode::Oracle: return "oracle";
        case Mode::Both: return "both";
    }
    return "?";
}

std::string_view to_string(Method m) { return m == Method::Algebraic ? "algebraic" : "oracle"; }

Mode parse_mode(std::string_view text) {
    if (text == "algebraic") return Mode::Algebraic;
    if (text == "oracle") return Mode::Oracle;
    if (text == "both") return Mode::Both;
    throw Error(ErrorCode::UsageError, "unknown mode '" + std::string(text) + "' (algebraic|oracle|both)");
}

std::string_view to_string(StateClass c) {
    return c == StateClass::Transient ? "Transient" : "RecurrentOrInaccessible";
}

namespace {

// Gate for the algebraic route. Returns true when the hypergraph is good;
// on a non-good hypergraph with necessary_only set returns false (the caller
// then treats a solvable system as inconclusive).
bool check_algebraic_preconditions(const Hypergraph& g, const FieldModulus& p, const DecisionOptions& options) {
    if (!p.prime() || p.value() < 3) {
        throw Error(ErrorCode::InvalidModulus,
                    "the algebraic test needs a prime p >= 3; use --mode oracle for p = " + std::to_string(p.value()));
    }
    const auto report = is_good(g);
    if (report.good) return true;
    if (options.necessary_only && options.mode == Mode::Algebraic) return false;
    throw Error(ErrorCode::NotGood,
                "hypergraph is not good; the algebraic test is only exact on good hypergraphs "
                "(use --mode oracle, or --necessary-only for the one-sided filter)");
}

[[noreturn]] void mismatch(const char* what, const Hypergraph& g, const FieldModulus& p, const State& w1,
                           const State& w2, bool algebraic, bool oracle) {
    throw Error(ErrorCode::Mismatch, std::string(what) + ": algebraic=" + (algebraic ? "true" : "false") +
                                         " oracle=" + (oracle ? "true" : "false") + "\n" + format_hypergraph(p, g) +
                                         "from " + format_state(w1) + "\nto " + format_state(w2));
}

Decision algebraic_reachability(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                                bool exact) {
    Decision d;
    d.method = Method::Algebraic;
    if (w1 == w2) {
        d.answer = true;
        d.certificate = ResidueVector(g.incidence_count(), 0);
        d.reason = "identical states";
        return d;
    }
    if (is_zero(w1)) {
        // No move is legal from the zero state.
        d.answer = false;
        d.certificate = OrbitExhausted{1};
        d.reason = "no legal move from the zero state";
        return d;
    }
    if (is_saturated(p, w2)) {
        // The last move would leave its vertex at p - 1, so that vertex held 0
        // before it fired.
        d.answer = false;
        d.certificate = NoPredecessor{};
        d.reason = "target has every vertex at p-1 and no predecessor";
        return d;
    }
    const auto space = gaussian_solve(build_system(g, p, w1, w2).system);
    d.answer = space.solvable;
    if (space.solvable) {
        d.certificate = space.particular;
        d.reason = "move-count system is solvable";
        d.conclusive = exact;
    } else {
        d.certificate = UnsolvabilityRank{space.rank, space.augmented_rank};
        d.reason = "move-count system is unsolvable";
    }
    return d;
}

Decision oracle_reachability(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                             std::uint64_t max_states) {
    Decision d;
    d.method = Method::Oracle;
    const auto orbit = orbit_bfs(g, p, w1, max_states);
    if (const auto idx = orbit.index_of(w2)) {
        d.answer = true;
        d.certificate = orbit.path_to(*idx);
        d.reason = "found by breadth-first search";
    } else {
        d.answer = false;
        d.certificate = OrbitExhausted{orbit.size()};
        d.reason = "orbit exhausted without meeting the target";
    }
    return d;
}

}  // namespace

Decision decide_reachability(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                             const DecisionOptions& options) {
    check_state(g, p, w1);
    check_state(g, p, w2);
    if (options.mode == Mode::Oracle) return oracle_reachability(g, p, w1, w2, options.max_states);

    const bool exact = check_algebraic_preconditions(g, p, options);
    auto d = algebraic_reachability(g, p, w1, w2, exact);
    if (options.mode == Mode::Both) {
        const auto o = oracle_reachability(g, p, w1, w2, options.max_states);
        if (o.answer != d.answer) mismatch("reachability", g, p, w1, w2, d.answer, o.answer);
        d.oracle_answer = o.answer;
    }
    return d;
}

Decision decide_recurrence(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                           const DecisionOptions& options) {
    check_state(g, p, w1);
    check_state(g, p, w2);

    auto oracle = [&] {
        Decision d;
        d.method = Method::Oracle;
        d.answer = oracle_recurrent(g, p, w1, w2, options.max_states);
        d.certificate = OrbitExhausted{orbit_bfs(g, p, w1, options.max_states).size()};
        d.reason = d.answer ? "target lies in the unique sink component of the orbit"
                            : "some reachable state cannot return to the target";
        return d;
    };
    if (options.mode == Mode::Oracle) return oracle();

    const bool exact = check_algebraic_preconditions(g, p, options);
    Decision d;
    d.method = Method::Algebraic;
    const State zero = zero_state(g.vertex_count());
    if (is_zero(w1)) {
        d.answer = is_zero(w2);
        d.certificate = OrbitExhausted{1};
        d.reason = "the zero state is absorbing";
    } else if (is_zero(w2)) {
        // The zero state is absorbing: once reachable it is the only sink.
        d = algebraic_reachability(g, p, w1, w2, exact);
        d.reason = d.answer ? "the absorbing zero state is reachable" : "the zero state is not reachable";
    } else {
        const auto reach = algebraic_reachability(g, p, w1, w2, exact);
        if (!reach.answer) {
            d = reach;
            d.reason = "target not reachable: " + reach.reason;
        } else if (const auto to_zero = algebraic_reachability(g, p, w1, zero, exact); to_zero.answer) {
            d.answer = false;
            d.certificate = to_zero.certificate;
            d.conclusive = to_zero.conclusive;
            d.reason = "the absorbing zero state is reachable";
        } else if (is_saturated(p, w2) && g.edge_count() > 0) {
            // Here w1 == w2 is the saturated state; its first move can never be
            // undone because nothing leads back into it.
            d.answer = false;
            d.certificate = NoPredecessor{};
            d.reason = "target has no predecessor and the walk can leave it";
        } else {
            d.answer = true;
            d.certificate = reach.certificate;
            d.conclusive = reach.conclusive;
            d.reason = "target reachable and zero state unreachable";
        }
    }
    if (!d.conclusive && d.answer) d.reason += " (necessary condition only)";
    if (options.mode == Mode::Both) {
        const auto o = oracle();
        if (o.answer != d.answer) mismatch("recurrence", g, p, w1, w2, d.answer, o.answer);
        d.oracle_answer = o.answer;
    }
    return d;
}

OracleClassification oracle_classify(const Hypergraph& g, const FieldModulus& p, const State& w,
                                     std::uint64_t max_states) {
    check_state(g, p, w);
    OracleClassification c{};
    const State zero = zero_state(g.vertex_count());
    c.zero_reachable = orbit_bfs(g, p, w, max_states).contains(zero);
    c.self_recurrent = oracle_recurrent(g, p, w, w, max_states);
    c.has_predecessor = has_predecessor(g, p, w);
    c.state_class = !is_zero(w) && c.zero_reachable ? StateClass::Transient : StateClass::RecurrentOrInaccessible;
    return c;
}

Classification classify_state(const Hypergraph& g, const FieldModulus& p, const State& w,
                               const DecisionOptions& options) {
    check_state(g, p, w);
    Classification c;
    if (options.mode == Mode::Oracle) {
        c.method = Method::Oracle;
        c.state_class = oracle_classify(g, p, w, options.max_states).state_class;
        return c;
    }
    check_algebraic_preconditions(g, p, DecisionOptions{Mode::Algebraic, options.max_states, false});
    c.method = Method::Algebraic;
    if (is_zero(w)) {
        c.state_class = StateClass::RecurrentOrInaccessible;
    } else {
        c.state_class = system_solvable(g, p, w, zero_state(g.vertex_count())) ? StateClass::Transient
                                                                                : StateClass::RecurrentOrInaccessible;
    }
    if (options.mode == Mode::Both) {
        const auto o = oracle_classify(g, p, w, options.max_states).state_class;
        if (o != c.state_class) {
            throw Error(ErrorCode::Mismatch, "classification: algebraic=" + std::string(to_string(c.state_class)) +
                                                 " oracle=" + std::string(to_string(o)) + "\n" +
                                                 format_hypergraph(p, g) + "state " + format_state(w));
        }
        c.oracle_class = o;
    }
    return c;
}

}  // namespace zpwalk
