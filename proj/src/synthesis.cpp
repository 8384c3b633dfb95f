#include "zpwalk/synthesis.hpp"

#include <algorithm>

#include "zpwalk/error.hpp"

namespace zpwalk {

namespace {

constexpr std::uint64_t kPrefixStates = 50'000;

void require_field(const FieldModulus& p) {
    if (!p.prime() || p.value() < 3) {
        throw Error(ErrorCode::InvalidModulus, "synthesis needs a prime p >= 3, got " + std::to_string(p.value()));
    }
}

std::uint64_t lifted(const ResidueVector& x) { return lifted_sum(x); }

bool equal_on(const std::vector<Vertex>& vs, const State& a, const State& b) {
    return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return a[v] == b[v]; });
}

bool zero_on(const std::vector<Vertex>& vs, const State& a) {
    return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return a[v] == 0; });
}

bool saturated_on(const FieldModulus& p, const std::vector<Vertex>& vs, const State& a) {
    return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return a[v] == p.minus_one(); });
}

// The walk restricted to one edge, addressed by position in the edge.
class EdgeWalk {
public:
    EdgeWalk(const FieldModulus& p, const Hypergraph& g, EdgeIndex e, const State& w)
        : p_(p), verts_(&g.edge(e)), e_(e) {
        for (Vertex v : *verts_) w_.push_back(w[v]);
    }

    const ResidueVector& values() const { return w_; }
    const Schedule& moves() const { return moves_; }
    std::size_t size() const { return w_.size(); }
    std::size_t position(Vertex v) const {
        return static_cast<std::size_t>(std::find(verts_->begin(), verts_->end(), v) - verts_->begin());
    }

    void fire(std::size_t i) {
        if (w_[i] == 0) {
            throw Error(ErrorCode::IllegalMove, "vertex " + std::to_string((*verts_)[i]) + " holds 0");
        }
        for (std::size_t j = 0; j < w_.size(); ++j) w_[j] = j == i ? p_.sub(w_[j], 1) : p_.add(w_[j], 1);
        moves_.push_back({(*verts_)[i], e_});
    }

    bool good_pair(std::size_t a, std::size_t b) const {
        const Residue top = p_.minus_one();
        return !(w_[a] == 0 && w_[b] == 0) && !(w_[a] == top && w_[b] == top);
    }

    // Adds `amount` to every position other than a and b.
    void shift(std::size_t a, std::size_t b, Residue amount) {
        amount %= p_.value();
        if (amount == 0) return;
        if (!good_pair(a, b)) {
            throw Error(ErrorCode::PairNotGood, "pair (" + std::to_string((*verts_)[a]) + ", " +
                                                    std::to_string((*verts_)[b]) + ") is not good");
        }
        const Residue rounds = p_.mul(amount, mod_inverse(2, p_));
        const bool forward = w_[a] != 0 && w_[b] != p_.minus_one();
        const std::size_t first = forward ? a : b;
        const std::size_t second = forward ? b : a;
        for (Residue r = 0; r < rounds; ++r) {
            fire(first);
            fire(second);
        }
    }

    // Net effect of one move at i0 while i0 holds 0.
    bool virtual_move(std::size_t i0) {
        const Residue top = p_.minus_one();
        const Residue two = 2 % p_.value();
        for (std::size_t j = 0; j < size(); ++j) {
            if (j == i0 || w_[j] == 0) continue;
            for (std::size_t t = 0; t < size(); ++t) {
                if (t == i0 || t == j) continue;
                for (Residue r = 0; r < p_.value(); ++r) {
                    const Residue aj = w_[j];
                    const Residue at_r = p_.add(w_[t], r);
                    if (aj == top && at_r == top) continue;
                    if (at_r == 0) continue;
                    if (r != two && aj == p_.value() - 2) continue;
                    EdgeWalk trial = *this;
                    try {
                        trial.shift(i0, j, r);
                        trial.shift(j, t, p_.neg(two));
                        trial.fire(t);
                        trial.shift(i0, j, p_.sub(two, r));
                    } catch (const Error&) {
                        continue;
                    }
                    *this = std::move(trial);
                    return true;
                }
            }
        }
        return false;
    }

    // [1 at i, p-1 elsewhere] with c moves at i still to make.
    bool pattern_one_high(std::size_t i, Residue c) {
        if (w_[i] != 1) return false;
        for (std::size_t j = 0; j < size(); ++j) {
            if (j != i && w_[j] != p_.minus_one()) return false;
        }
        const std::size_t j = (i + 1) % size();
        shift(i, j, p_.mul(2, c));
        for (Residue r = 0; r < p_.sub(0, c); ++r) fire(j);
        return true;
    }

    // [0 at i, p-2 elsewhere] with c >= 2 moves at i still to make.
    bool pattern_zero_low(std::size_t i, Residue c) {
        if (w_[i] != 0 || c < 2) return false;
        for (std::size_t j = 0; j < size(); ++j) {
            if (j != i && w_[j] != p_.value() - 2) return false;
        }
        const std::size_t j = (i + 1) % size();
        for (Residue r = 0; r < c; ++r) {
            fire(j);
            fire(i);
        }
        for (Residue r = 0; r < p_.value() - c; ++r) fire(j);
        return true;
    }

    void solve_to(const ResidueVector& target) {
        const std::size_t k = size();
        ResidueVector saturated(k, p_.minus_one());
        const std::size_t limit = 10 * p_.value() * k + 10;
        for (std::size_t step = 0; w_ != target; ++step) {
            if (step > limit) fail("no progress");
            const auto closed = single_edge_closed_form(p_, w_, target);
            if (!closed.solvable) fail("lost solvability");
            std::uint64_t best = UINT64_MAX;
            for (const auto& x : closed.solutions) best = std::min(best, lifted(x));
            std::vector<ResidueVector> mins;
            for (const auto& x : closed.solutions) {
                if (lifted(x) == best) mins.push_back(x);
            }
            if (real_step(mins) || virtual_step(mins, target, saturated) || terminal_step(mins)) continue;
            fail("no rule applies");
        }
    }

private:
    bool real_step(const std::vector<ResidueVector>& mins) {
        for (const auto& x : mins) {
            for (std::size_t i = 0; i < size(); ++i) {
                if (x[i] == 0 || w_[i] == 0) continue;
                EdgeWalk trial = *this;
                trial.fire(i);
                if (std::any_of(trial.w_.begin(), trial.w_.end(), [](Residue r) { return r != 0; })) {
                    *this = std::move(trial);
                    return true;
                }
            }
        }
        return false;
    }

    bool virtual_step(const std::vector<ResidueVector>& mins, const ResidueVector& target,
                      const ResidueVector& saturated) {
        for (const auto& x : mins) {
            for (std::size_t i = 0; i < size(); ++i) {
                if (x[i] == 0 || w_[i] != 0) continue;
                ResidueVector after = w_;
                for (std::size_t j = 0; j < size(); ++j) after[j] = j == i ? p_.sub(after[j], 1) : p_.add(after[j], 1);
                if (after == saturated && after != target) continue;
                if (virtual_move(i)) return true;
            }
        }
        return false;
    }

    bool terminal_step(const std::vector<ResidueVector>& mins) {
        for (const auto& x : mins) {
            std::size_t support = 0;
            std::size_t at = 0;
            for (std::size_t i = 0; i < size(); ++i) {
                if (x[i] != 0) {
                    ++support;
                    at = i;
                }
            }
            if (support != 1) continue;
            if (pattern_one_high(at, x[at]) || pattern_zero_low(at, x[at])) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const char* why) const {
        throw Error(ErrorCode::InternalSynthesisFailure,
                    std::string("single-edge construction stuck (") + why + ") at " + format_state(w_));
    }

    FieldModulus p_;
    const std::vector<Vertex>* verts_;
    EdgeIndex e_;
    ResidueVector w_;
    Schedule moves_;
};

void require_in_edge(const Hypergraph& g, EdgeIndex e, Vertex v) {
    if (e >= g.edge_count() || !g.contains(e, v)) {
        throw Error(ErrorCode::ShapeError, "vertex " + std::to_string(v) + " is not in edge " + std::to_string(e));
    }
}

}  // namespace

State move_effect(const Hypergraph& g, const FieldModulus& p, Vertex v, EdgeIndex l) {
    require_in_edge(g, l, v);
    State a(g.vertex_count(), 0);
    for (Vertex u : g.edge(l)) a[u] = u == v ? 1 : p.minus_one();
    return a;
}

bool is_good_pair(const FieldModulus& p, const State& w, Vertex v1, Vertex v2) {
    if (v1 == v2) throw Error(ErrorCode::ShapeError, "a pair needs two distinct vertices");
    const Residue top = p.minus_one();
    return !(w.at(v1) == 0 && w.at(v2) == 0) && !(w.at(v1) == top && w.at(v2) == top);
}

Schedule double_move_shift(const Hypergraph& g, const FieldModulus& p, const State& w, EdgeIndex e, Vertex v1,
                           Vertex v2, Residue amount) {
    require_field(p);
    check_state(g, p, w);
    require_in_edge(g, e, v1);
    require_in_edge(g, e, v2);
    if (!is_good_pair(p, w, v1, v2)) {
        throw Error(ErrorCode::PairNotGood,
                    "pair (" + std::to_string(v1) + ", " + std::to_string(v2) + ") is not good in this state");
    }
    EdgeWalk walk(p, g, e, w);
    walk.shift(walk.position(v1), walk.position(v2), amount);
    return walk.moves();
}

Schedule double_move_trick(const Hypergraph& g, const FieldModulus& p, const State& w, EdgeIndex e, Vertex v1,
                           Vertex v2, int direction) {
    if (direction != 1 && direction != -1) throw Error(ErrorCode::ShapeError, "direction must be +1 or -1");
    return double_move_shift(g, p, w, e, v1, v2, direction == 1 ? 1 : p.minus_one());
}

SingleEdgeSolutions single_edge_closed_form(const FieldModulus& p, const ResidueVector& w1, const ResidueVector& w2) {
    require_field(p);
    if (w1.size() != w2.size()) throw Error(ErrorCode::ShapeError, "state lengths differ");
    const std::size_t k = w1.size();
    ResidueVector wb(k);
    Residue total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        wb[i] = p.sub(w2[i] % p.value(), w1[i] % p.value());
        total = p.add(total, wb[i]);
    }
    const Residue half = mod_inverse(2, p);
    const Residue k2 = p.reduce(static_cast<std::int64_t>(k) - 2);
    SingleEdgeSolutions out;
    if (k2 != 0) {
        const Residue s = p.mul(total, mod_inverse(k2, p));
        ResidueVector x(k);
        for (std::size_t i = 0; i < k; ++i) x[i] = p.mul(half, p.sub(s, wb[i]));
        out.solvable = true;
        out.unique = true;
        out.solutions.push_back(std::move(x));
        return out;
    }
    if (total != 0 || k == 0) return out;
    out.solvable = true;
    for (Residue lambda = 0; lambda < p.value(); ++lambda) {
        ResidueVector x(k);
        for (std::size_t i = 0; i < k; ++i) x[i] = p.add(lambda, p.mul(half, p.sub(wb[0], wb[i])));
        out.solutions.push_back(std::move(x));
    }
    return out;
}

Schedule edge_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2, EdgeIndex e) {
    require_field(p);
    check_state(g, p, w1);
    check_state(g, p, w2);
    if (e >= g.edge_count()) throw Error(ErrorCode::ShapeError, "no edge " + std::to_string(e));
    const auto& verts = g.edge(e);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!g.contains(e, v) && w1[v] != w2[v]) {
            throw Error(ErrorCode::HypothesisViolated, "states differ at vertex " + std::to_string(v) +
                                                           " outside edge " + std::to_string(e));
        }
    }
    if (equal_on(verts, w1, w2)) return {};
    if (zero_on(verts, w1)) throw Error(ErrorCode::NonzeroRequired, "start state is zero on the edge");
    EdgeWalk walk(p, g, e, w1);
    const EdgeWalk goal(p, g, e, w2);
    if (!single_edge_closed_form(p, walk.values(), goal.values()).solvable) {
        throw Error(ErrorCode::Unsolvable, "the edge system has no solution");
    }
    if (saturated_on(p, verts, w2)) {
        throw Error(ErrorCode::Unreachable, "target holds p-1 on the whole edge and has no predecessor");
    }
    walk.solve_to(goal.values());
    const auto& moves = walk.moves();
    if (replay_schedule(g, p, w1, moves) != w2) {
        throw Error(ErrorCode::InternalSynthesisFailure, "edge schedule failed replay");
    }
    return moves;
}

Schedule single_edge_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2) {
    if (g.edge_count() != 1) {
        throw Error(ErrorCode::ShapeError, "expected one edge, found " + std::to_string(g.edge_count()));
    }
    return edge_schedule(g, p, w1, w2, 0);
}

Schedule undo_on_edge(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2, EdgeIndex e) {
    if (w1 == w2) return {};
    if (e < g.edge_count() && (zero_on(g.edge(e), w1) || zero_on(g.edge(e), w2))) {
        throw Error(ErrorCode::NonzeroRequired, "undo needs both states nonzero on the edge");
    }
    return edge_schedule(g, p, w2, w1, e);
}

Schedule propagate_path(const Hypergraph& g, const FieldModulus& p, const State& w, Vertex start,
                        const EdgePath& path, Direction direction) {
    require_field(p);
    check_state(g, p, w);
    const auto& edges = path.edges;
    if (edges.empty()) throw Error(ErrorCode::ShapeError, "empty path");
    if (path.connectors.size() + 1 != edges.size()) {
        throw Error(ErrorCode::ShapeError, "a path of k edges needs k-1 connectors");
    }
    require_in_edge(g, edges.front(), start);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        require_in_edge(g, edges[i], path.connectors[i]);
        require_in_edge(g, edges[i + 1], path.connectors[i]);
    }
    auto fired = [&](std::size_t i) { return i == 0 ? start : path.connectors[i - 1]; };

    if (direction == Direction::Forward) {
        if (w[start] == 0) throw Error(ErrorCode::HypothesisViolated, "start vertex holds 0");
        for (std::size_t i = 1; i < edges.size(); ++i) {
            const Vertex c = path.connectors[i - 1];
            if (w[c] != 0) throw Error(ErrorCode::HypothesisViolated, "connector " + std::to_string(c) + " is nonzero");
            if (i + 1 == edges.size()) continue;
            for (Vertex u : g.edge(edges[i])) {
                if (w[u] != 0) {
                    throw Error(ErrorCode::HypothesisViolated, "interior vertex " + std::to_string(u) + " is nonzero");
                }
            }
        }
        Schedule s;
        for (std::size_t i = 0; i < edges.size(); ++i) s.push_back({fired(i), edges[i]});
        replay_schedule(g, p, w, s);
        return s;
    }

    Schedule s;
    State cur = w;
    for (std::size_t i = edges.size(); i-- > 0;) {
        State before = cur;
        const auto a = move_effect(g, p, fired(i), edges[i]);
        for (Vertex v = 0; v < before.size(); ++v) before[v] = p.add(before[v], a[v]);
        const auto undo = undo_on_edge(g, p, before, cur, edges[i]);
        cur = replay_schedule(g, p, cur, undo);
        s.insert(s.end(), undo.begin(), undo.end());
    }
    return s;
}

namespace {

class Synthesizer {
public:
    Synthesizer(const Hypergraph& g, const FieldModulus& p, const State& w, const SynthesisOptions& options)
        : g_(g), p_(p), state_(w), options_(options) {}

    void solve(const Scope& scope, const State& target) {
        if (equal_on(scope.vertices, state_, target)) return;
        if (!feasible(scope, state_, target)) {
            throw Error(ErrorCode::InternalSynthesisFailure, "subproblem is not reachable");
        }
        if (scope.edges.size() == 1) {
            solve_edge(scope.edges.front(), target);
            return;
        }
        const std::size_t limit = 4 * p_.value() * (g_.incidence_count() + 4);
        for (std::size_t step = 0; !equal_on(scope.vertices, state_, target); ++step) {
            if (split_on_edge(scope, target)) return;
            if (step > limit || !descent_step(scope, target)) {
                bridge(scope, target);
                return;
            }
        }
    }

    const Schedule& schedule() const { return schedule_; }
    SynthesisStats& stats() { return stats_; }

private:
    bool feasible(const Scope& scope, const State& s, const State& target) const {
        if (equal_on(scope.vertices, s, target)) return true;
        if (scope.edges.empty() || zero_on(scope.vertices, s)) return false;
        if (saturated_on(p_, scope.vertices, target)) return false;
        return gaussian_solve(build_system(g_, p_, s, target, scope).system).solvable;
    }

    void commit(const Schedule& moves) {
        for (const Move& m : moves) {
            apply_move_in_place(g_, p_, state_, m);
            schedule_.push_back(m);
        }
    }

    State overlay(const std::vector<Vertex>& vs, const State& target) const {
        State out = state_;
        for (Vertex v : vs) out[v] = target[v];
        return out;
    }

    void solve_edge(EdgeIndex e, const State& target) {
        ++stats_.edge_solves;
        try {
            commit(edge_schedule(g_, p_, state_, overlay(g_.edge(e), target), e));
        } catch (const Error& err) {
            if (err.code() != ErrorCode::InternalSynthesisFailure) throw;
            bridge(Scope{{e}, g_.edge(e)}, target);
        }
    }

    void bridge(const Scope& scope, const State& target) {
        if (!options_.allow_fallback) {
            throw Error(ErrorCode::SynthesisIncomplete,
                        "no construction step applies after " + std::to_string(schedule_.size()) + " moves",
                        schedule_.size());
        }
        OrbitOptions o;
        o.max_states = options_.max_states;
        o.allowed_edges.assign(g_.edge_count(), false);
        for (EdgeIndex e : scope.edges) o.allowed_edges[e] = true;
        const State goal = overlay(scope.vertices, target);
        o.stop_at = goal;
        std::optional<Orbit> orbit;
        try {
            orbit.emplace(orbit_bfs(g_, p_, state_, o));
        } catch (const Error& err) {
            if (err.code() != ErrorCode::StateSpaceTooLarge) throw;
            throw Error(ErrorCode::SynthesisIncomplete,
                        "search bridge exceeded the state bound after " + std::to_string(schedule_.size()) + " moves",
                        schedule_.size());
        }
        const auto idx = orbit->index_of(goal);
        if (!idx) throw Error(ErrorCode::InternalSynthesisFailure, "search bridge found the goal unreachable");
        const auto path = orbit->path_to(*idx);
        ++stats_.fallbacks;
        stats_.fallback_moves += path.size();
        commit(path);
    }

    // Case 1: some solution leaves edge l unused. Moves on l seed the parts
    // of the scope minus l, each part is solved on its own, and a final
    // schedule on l removes the seed.
    bool split_on_edge(const Scope& scope, const State& target) {
        for (EdgeIndex l : scope.edges) {
            Scope rest{{}, scope.vertices};
            for (EdgeIndex e : scope.edges) {
                if (e != l) rest.edges.push_back(e);
            }
            if (!gaussian_solve(build_system(g_, p_, state_, target, rest).system).solvable) continue;

            const auto parts = connected_components(g_, rest.edges, scope.vertices);
            std::vector<Scope> scopes;
            for (const auto& part : parts) {
                Scope s{{}, part};
                for (EdgeIndex e : rest.edges) {
                    if (std::binary_search(part.begin(), part.end(), g_.edge(e).front())) s.edges.push_back(e);
                }
                scopes.push_back(std::move(s));
            }

            OrbitOptions o;
            o.max_states = kPrefixStates;
            o.allowed_edges.assign(g_.edge_count(), false);
            o.allowed_edges[l] = true;
            std::optional<Orbit> seeds;
            try {
                seeds.emplace(orbit_bfs(g_, p_, state_, o));
            } catch (const Error& err) {
                if (err.code() != ErrorCode::StateSpaceTooLarge) throw;
                continue;
            }
            const auto& lv = g_.edge(l);
            for (std::size_t i = 0; i < seeds->size(); ++i) {
                const State s = seeds->state(i);
                State shifted = target;
                for (Vertex v : lv) shifted[v] = p_.add(target[v], p_.sub(s[v], state_[v]));
                const bool parts_ok = std::all_of(scopes.begin(), scopes.end(), [&](const Scope& part) {
                    if (equal_on(part.vertices, s, shifted)) return true;
                    return !part.edges.empty() && !zero_on(part.vertices, s) &&
                           !saturated_on(p_, part.vertices, shifted);
                });
                const bool undo_ok = equal_on(lv, shifted, target) ||
                                     (!zero_on(lv, shifted) && !saturated_on(p_, lv, target));
                if (!parts_ok || !undo_ok) continue;

                ++stats_.edge_splits;
                commit(seeds->path_to(i));
                for (const auto& part : scopes) solve(part, shifted);
                solve_edge(l, target);
                return true;
            }
        }
        return false;
    }

    // Case 2: lower the minimum norm of the system by one move, real or
    // simulated on a single edge.
    bool descent_step(const Scope& scope, const State& target) {
        const auto rs = build_system(g_, p_, state_, target, scope);
        const auto space = gaussian_solve(rs.system);
        if (!space.solvable) return false;
        std::vector<ResidueVector> mins;
        if (space.count() <= options_.cap) {
            mins = minimum_norm_solutions(space, options_.cap);
        } else {
            mins.push_back(greedy_norm(space).witness);
        }

        for (const auto& x : mins) {
            for (std::size_t j = 0; j < x.size(); ++j) {
                const auto [e, v] = rs.variables[j];
                if (x[j] == 0 || state_[v] == 0) continue;
                const State next = apply_move(g_, p_, state_, {v, e});
                if (!feasible(scope, next, target)) continue;
                ++stats_.descent_moves;
                commit({{v, e}});
                return true;
            }
        }
        for (const auto& x : mins) {
            for (std::size_t j = 0; j < x.size(); ++j) {
                const auto [e, v] = rs.variables[j];
                if (x[j] == 0 || state_[v] != 0) continue;
                State next = state_;
                const auto a = move_effect(g_, p_, v, e);
                for (Vertex u = 0; u < next.size(); ++u) next[u] = p_.sub(next[u], a[u]);
                if (!feasible(scope, next, target)) continue;
                EdgeWalk walk(p_, g_, e, state_);
                if (!walk.virtual_move(walk.position(v))) continue;
                ++stats_.virtual_moves;
                commit(walk.moves());
                return true;
            }
        }
        // Any legal move that still lowers the minimum norm.
        const std::uint64_t norm = lifted(mins.front());
        std::optional<std::pair<std::uint64_t, Move>> best;
        for (const auto& [e, v] : rs.variables) {
            if (state_[v] == 0) continue;
            const State next = apply_move(g_, p_, state_, {v, e});
            if (!feasible(scope, next, target)) continue;
            const auto after = gaussian_solve(build_system(g_, p_, next, target, scope).system);
            const auto n = after.count() <= options_.cap ? system_norm(after, options_.cap).norm : greedy_norm(after).norm;
            if (n < norm && (!best || n < best->first)) best = std::make_pair(n, Move{v, e});
        }
        if (best) {
            ++stats_.descent_moves;
            commit({best->second});
            return true;
        }
        // Push a unit along a path into an edge that the solution needs but
        // that holds no usable label.
        std::vector<bool> allowed(g_.edge_count(), false);
        for (EdgeIndex e : scope.edges) allowed[e] = true;
        for (const auto& x : mins) {
            for (std::size_t j = 0; j < x.size(); ++j) {
                const auto [e, v] = rs.variables[j];
                if (x[j] == 0 || state_[v] != 0) continue;
                std::optional<std::pair<Vertex, EdgePath>> nearest;
                for (Vertex u : scope.vertices) {
                    if (state_[u] == 0 || g_.contains(e, u)) continue;
                    try {
                        auto path = shortest_edge_path(g_, u, e, allowed);
                        if (!nearest || path.edges.size() < nearest->second.edges.size()) nearest = {u, path};
                    } catch (const Error& err) {
                        if (err.code() != ErrorCode::NoPath) throw;
                    }
                }
                if (!nearest) continue;
                const auto& [u, path] = *nearest;
                Schedule push;
                try {
                    push = propagate_path(g_, p_, state_, u, path, Direction::Forward);
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::HypothesisViolated) throw;
                    push = {{u, path.edges.front()}};
                }
                if (!feasible(scope, replay_schedule(g_, p_, state_, push), target)) continue;
                ++stats_.propagations;
                commit(push);
                return true;
            }
        }
        for (const auto& x : mins) {
            std::size_t support = 0;
            std::size_t at = 0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (x[j] != 0) {
                    ++support;
                    at = j;
                }
            }
            if (support != 1) continue;
            const auto [e, v] = rs.variables[at];
            EdgeWalk walk(p_, g_, e, state_);
            const auto i = walk.position(v);
            if (walk.pattern_one_high(i, x[at]) || walk.pattern_zero_low(i, x[at])) {
                ++stats_.descent_moves;
                commit(walk.moves());
                return true;
            }
        }
        return false;
    }

    const Hypergraph& g_;
    FieldModulus p_;
    State state_;
    SynthesisOptions options_;
    Schedule schedule_;
    SynthesisStats stats_;
};

}  // namespace

SynthesisResult synthesize(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                           const SynthesisOptions& options) {
    require_field(p);
    check_state(g, p, w1);
    check_state(g, p, w2);
    if (!is_good(g).good) throw Error(ErrorCode::NotGood, "synthesis needs a good hypergraph");
    if (w1 == w2) return {};
    if (is_zero(w1)) throw Error(ErrorCode::NonzeroRequired, "no move is legal from the zero state");
    if (!system_solvable(g, p, w1, w2)) throw Error(ErrorCode::Unsolvable, "the move-count system has no solution");
    if (is_saturated(p, w2)) {
        throw Error(ErrorCode::Unreachable, "target holds p-1 everywhere and has no predecessor");
    }

    SynthesisResult result;
    Synthesizer synth(g, p, w1, options);
    try {
        synth.solve(Scope::whole(g), w2);
        result.schedule = synth.schedule();
        result.stats = synth.stats();
    } catch (const Error& err) {
        if (err.code() != ErrorCode::InternalSynthesisFailure || !options.allow_fallback) throw;
        std::optional<Schedule> path;
        try {
            path = oracle_schedule(g, p, w1, w2, options.max_states);
        } catch (const Error& bound) {
            if (bound.code() != ErrorCode::StateSpaceTooLarge) throw;
            throw Error(ErrorCode::SynthesisIncomplete, "construction failed and search exceeded the state bound");
        }
        if (!path) throw Error(ErrorCode::Unreachable, "target is not reachable");
        result.schedule = std::move(*path);
        result.stats = SynthesisStats{};
        result.stats.fallbacks = 1;
        result.stats.fallback_moves = result.schedule.size();
    }
    if (replay_schedule(g, p, w1, result.schedule) != w2) {
        throw Error(ErrorCode::InternalSynthesisFailure, "synthesized schedule failed replay");
    }
    result.stats.length = result.schedule.size();
    return result;
}

}  // namespace zpwalk
