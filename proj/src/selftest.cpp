#include "zpwalk/selftest.hpp"

#include <optional>
#include <random>
#include <sstream>

#include "zpwalk/decision.hpp"
#include "zpwalk/error.hpp"
#include "zpwalk/generate.hpp"
#include "zpwalk/synthesis.hpp"

namespace zpwalk {

namespace {

constexpr std::size_t kKeptDumps = 20;

std::uint64_t space_size(std::uint64_t p, std::size_t n, std::uint64_t limit) {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (s > limit / p) return limit + 1;
        s *= p;
    }
    return s;
}

State decode(std::uint64_t code, std::uint64_t p, std::size_t n) {
    State w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = code % p;
        code /= p;
    }
    return w;
}

class Runner {
public:
    Runner(const SelftestConfig& config, SelftestReport& report) : config_(config), report_(report) {}

    void run(const Hypergraph& g, const FieldModulus& p, std::uint64_t seed, bool exact) {
        const std::size_t n = g.vertex_count();
        const std::uint64_t space = space_size(p.value(), n, config_.max_space);
        std::mt19937_64 rng(seed);
        if (space > config_.max_space) {
            if (exact) {
                run_certified(g, p, rng);
            } else {
                ++report_.skipped;
            }
            return;
        }
        const bool recurrence = exact && space <= config_.recurrence_states;
        std::optional<LinearInvariants> invariants;
        if (exact) invariants.emplace(g, p);
        std::size_t schedules = 0;
        std::size_t direct = 0;

        // Batches go through the invariant test; a share of them, and every
        // sampled pair, also through the per-call decision.
        auto check = [&](const State& w1, const State& w2, bool reach, bool recur, bool batch) {
            if (!exact) {
                check_filter(g, p, w1, w2, reach);
                return;
            }
            const bool per_call = !batch || (direct < config_.samples && rng() % 64 == 0);
            if (per_call) ++direct;
            check_pair(g, p, *invariants, w1, w2, reach, per_call);
            if (recurrence) check_recurrence(g, p, *invariants, w1, w2, recur, per_call);
            if (reach && w1 != w2 && schedules < config_.schedules && (!batch || rng() % 16 == 0)) {
                ++schedules;
                check_schedule(g, p, w1, w2);
            }
        };

        if (space <= config_.exhaustive_states) {
            const StateSpace oracle(g, p, config_.exhaustive_states);
            std::vector<State> all;
            for (std::uint64_t c = 0; c < space; ++c) all.push_back(oracle.decode(c));
            for (std::uint64_t a = 1; a < space; ++a) {
                for (std::uint64_t b = 0; b < space; ++b) {
                    check(all[a], all[b], oracle.reachable(all[a], all[b]), oracle.recurrent(all[a], all[b]), true);
                }
            }
            return;
        }
        for (std::size_t s = 0; s < config_.samples; ++s) {
            State w1;
            do {
                w1 = decode(rng() % space, p.value(), n);
            } while (is_zero(w1));
            const auto orbit = orbit_bfs(g, p, w1, config_.max_states);
            const State w2 = s % 2 == 1 ? orbit.state(rng() % orbit.size()) : decode(rng() % space, p.value(), n);
            const auto at = orbit.index_of(w2);
            bool recur = false;
            if (recurrence && at) recur = recurrence_mask(orbit)[*at];
            check(w1, w2, at.has_value(), recur, false);
        }
    }

private:
    // Too many states to search: every verdict is backed by something checkable
    // instead. A replayed schedule proves reachability; a conserved functional
    // that separates the states, or a target without predecessor, proves the
    // opposite.
    void run_certified(const Hypergraph& g, const FieldModulus& p, std::mt19937_64& rng) {
        const std::size_t n = g.vertex_count();
        const LinearInvariants inv(g, p);
        for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
            for (Vertex v : g.edge(e)) {
                if (!is_zero(inv.evaluate(move_effect(g, p, v, e)))) {
                    mismatch("a linear invariant is not conserved by a move", g, p, zero_state(n), zero_state(n));
                    return;
                }
            }
        }
        auto random_state = [&] {
            State w(n);
            for (auto& x : w) x = rng() % p.value();
            return w;
        };
        std::size_t schedules = 0;
        for (std::size_t s = 0; s < config_.samples; ++s) {
            State w1;
            do {
                w1 = random_state();
            } while (is_zero(w1));
            const bool walked = s % 2 == 1;
            State w2 = w1;
            if (walked) {
                const std::size_t steps = rng() % (8 * g.incidence_count() + 1);
                for (std::size_t i = 0; i < steps; ++i) {
                    const EdgeIndex e = rng() % g.edge_count();
                    const Vertex v = g.edge(e)[rng() % g.edge(e).size()];
                    if (w2[v] != 0) apply_move_in_place(g, p, w2, {v, e});
                }
            } else {
                w2 = random_state();
            }
            ++report_.certified;
            std::optional<bool> oracle;
            if (walked || w1 == w2) {
                oracle = true;
            } else if (inv.evaluate(w1) != inv.evaluate(w2) || !has_predecessor(g, p, w2)) {
                oracle = false;
            } else {
                ++report_.schedules;
                ++schedules;
                SynthesisOptions o;
                o.max_states = config_.max_states;
                try {
                    const auto r = synthesize(g, p, w1, w2, o);
                    if (replay_schedule(g, p, w1, r.schedule) != w2) {
                        mismatch("schedule does not reach its target", g, p, w1, w2);
                        continue;
                    }
                    ++report_.schedules_verified;
                    if (r.stats.fallbacks > 0) ++report_.schedules_with_fallback;
                    oracle = true;
                } catch (const Error& e) {
                    if (e.code() == ErrorCode::SynthesisIncomplete) {
                        ++report_.incomplete;
                    } else if (e.code() == ErrorCode::Unreachable) {
                        oracle = false;
                    } else {
                        mismatch(std::string("synthesis failed: ") + e.what(), g, p, w1, w2);
                        continue;
                    }
                }
            }
            if (!oracle) {
                ++report_.undetermined;
                continue;
            }
            check_pair(g, p, inv, w1, w2, *oracle, true);
            if (walked && w1 != w2 && schedules < config_.schedules) {
                ++schedules;
                check_schedule(g, p, w1, w2);
            }
        }
    }

    void mismatch(const std::string& what, const Hypergraph& g, const FieldModulus& p, const State& w1,
                  const State& w2) {
        ++report_.mismatch_count;
        if (report_.mismatches.size() < kKeptDumps) {
            report_.mismatches.push_back(what + "\n" + format_hypergraph(p, g) + "from " + format_state(w1) + "\nto " +
                                         format_state(w2) + "\n");
        }
    }

    void check_pair(const Hypergraph& g, const FieldModulus& p, const LinearInvariants& inv, const State& w1,
                    const State& w2, bool oracle, bool per_call) {
        ++report_.pairs;
        const bool algebraic = algebraic_reachable(inv, w1, w2);
        if (per_call) {
            DecisionOptions o;
            o.mode = Mode::Algebraic;
            o.max_states = config_.max_states;
            if (decide_reachability(g, p, w1, w2, o).answer != algebraic) {
                mismatch("reachability: invariant test and elimination disagree", g, p, w1, w2);
            }
        }
        if (algebraic == oracle) {
            ++report_.reach_agree;
        } else {
            mismatch(std::string("reachability: algebraic=") + (algebraic ? "yes" : "no"), g, p, w1, w2);
        }
        if (!oracle && w1 != w2 && inv.solvable(w1, w2)) {
            ++report_.solvable_unreachable;
            if (is_saturated(p, w2)) ++report_.solvable_unreachable_saturated;
        }
    }

    void check_recurrence(const Hypergraph& g, const FieldModulus& p, const LinearInvariants& inv, const State& w1,
                          const State& w2, bool oracle, bool per_call) {
        ++report_.recur_pairs;
        const bool algebraic = algebraic_recurrent(inv, w1, w2);
        if (per_call) {
            DecisionOptions o;
            o.mode = Mode::Algebraic;
            o.max_states = config_.max_states;
            if (decide_recurrence(g, p, w1, w2, o).answer != algebraic) {
                mismatch("recurrence: invariant test and elimination disagree", g, p, w1, w2);
            }
        }
        if (algebraic == oracle) {
            ++report_.recur_agree;
        } else {
            mismatch(std::string("recurrence: algebraic=") + (algebraic ? "yes" : "no"), g, p, w1, w2);
        }
    }

    void check_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2) {
        ++report_.schedules;
        SynthesisOptions o;
        o.max_states = config_.max_states;
        try {
            const auto r = synthesize(g, p, w1, w2, o);
            if (replay_schedule(g, p, w1, r.schedule) == w2) {
                ++report_.schedules_verified;
            } else {
                mismatch("schedule does not reach its target", g, p, w1, w2);
            }
            if (r.stats.fallbacks > 0) ++report_.schedules_with_fallback;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SynthesisIncomplete) {
                ++report_.incomplete;
            } else {
                mismatch(std::string("synthesis failed: ") + e.what(), g, p, w1, w2);
            }
        }
    }

    void check_filter(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2, bool oracle) {
        ++report_.nongood_pairs;
        DecisionOptions o;
        o.mode = Mode::Algebraic;
        o.necessary_only = true;
        const auto d = decide_reachability(g, p, w1, w2, o);
        if (!d.answer && oracle) mismatch("necessary condition rejected a reachable target", g, p, w1, w2);
        if (!oracle && system_solvable(g, p, w1, w2)) ++report_.nongood_divergences;
    }

    const SelftestConfig& config_;
    SelftestReport& report_;
};

}  // namespace

SelftestReport selftest(const SelftestConfig& config) {
    SelftestReport report;
    Runner runner(config, report);
    std::mt19937_64 rng(config.seed);

    std::vector<Hypergraph> graphs;
    if (config.family_max_n > 0) graphs = enumerate_good_hypergraphs(config.family_max_n, config.family_max_m);
    for (std::size_t i = 0; i < config.random_graphs; ++i) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            const std::size_t n = std::uniform_int_distribution<std::size_t>(3, config.random_max_n)(rng);
            const std::size_t m = std::uniform_int_distribution<std::size_t>(1, config.random_max_m)(rng);
            try {
                graphs.push_back(gen_good_hypergraph(n, m, rng()));
                break;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Infeasible) throw;
            }
        }
    }

    for (const auto& g : graphs) {
        ++report.graphs;
        for (auto pv : config.primes) runner.run(g, FieldModulus::decision(pv), rng(), true);
    }
    for (const auto& inst : config.extra) {
        ++report.graphs;
        runner.run(inst.graph, inst.modulus, rng(), is_good(inst.graph).good);
    }
    return report;
}

std::string format_selftest(const SelftestReport& r) {
    std::ostringstream out;
    out << "hypergraphs           " << r.graphs << " (" << r.skipped << " prime combinations skipped)\n"
        << "reachability pairs    " << r.pairs << ", agree " << r.reach_agree << "\n"
        << "  decided by certificate " << r.certified << ", undetermined " << r.undetermined << "\n"
        << "recurrence pairs      " << r.recur_pairs << ", agree " << r.recur_agree << "\n"
        << "solvable, unreachable " << r.solvable_unreachable << " (target all p-1: "
        << r.solvable_unreachable_saturated << ")\n"
        << "schedules             " << r.schedules << ", verified " << r.schedules_verified << ", search-assisted "
        << r.schedules_with_fallback << ", incomplete " << r.incomplete << "\n";
    if (r.nongood_pairs > 0) {
        out << "non-good pairs        " << r.nongood_pairs << ", solvable but unreachable " << r.nongood_divergences
            << "\n";
    }
    out << "mismatches            " << r.mismatch_count << "\n";
    for (const auto& m : r.mismatches) out << m;
    return out.str();
}

}  // namespace zpwalk
