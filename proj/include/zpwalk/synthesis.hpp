#ifndef ZPWALK_SYNTHESIS_HPP
#define ZPWALK_SYNTHESIS_HPP

#include <optional>
#include <vector>

#include "zpwalk/decision.hpp"
#include "zpwalk/dynamics.hpp"
#include "zpwalk/hypergraph.hpp"
#include "zpwalk/zp.hpp"

namespace zpwalk {

/// a_{v,l}: +1 at v and -1 at the other vertices of l. One move at (v, l)
/// subtracts it from the state.
State move_effect(const Hypergraph& g, const FieldModulus& p, Vertex v, EdgeIndex l);

/// (w(v1), w(v2)) is neither (0, 0) nor (p-1, p-1).
bool is_good_pair(const FieldModulus& p, const State& w, Vertex v1, Vertex v2);

/// Alternating moves at v1, v2 on e that leave v1, v2 unchanged and add
/// `direction` (+1 or -1) to every other vertex of e.
Schedule double_move_trick(const Hypergraph& g, const FieldModulus& p, const State& w, EdgeIndex e, Vertex v1,
                           Vertex v2, int direction);

/// Same, adding an arbitrary amount. An amount of 0 gives the empty schedule.
Schedule double_move_shift(const Hypergraph& g, const FieldModulus& p, const State& w, EdgeIndex e, Vertex v1,
                           Vertex v2, Residue amount);

/// Solutions of the one-edge system, indexed by position in the edge.
struct SingleEdgeSolutions {
    bool solvable = false;
    bool unique = false;
    std::vector<ResidueVector> solutions;
};

/// Closed form for one edge of size k: x_i = 2^{-1}((k-2)^{-1} W - wb_i) when
/// p does not divide k-2, otherwise the family x_1 = lambda,
/// x_i = lambda + 2^{-1}(wb_1 - wb_i), present only when W = 0. Here
/// wb = w2 - w1 and W = sum(wb).
SingleEdgeSolutions single_edge_closed_form(const FieldModulus& p, const ResidueVector& w1, const ResidueVector& w2);

/// Moves on edge e alone taking w1 to w2; the states must agree off e.
Schedule edge_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2, EdgeIndex e);

/// edge_schedule on a hypergraph with exactly one edge.
Schedule single_edge_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2);

/// Schedule on e alone that takes w2 back to w1.
Schedule undo_on_edge(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2, EdgeIndex e);

enum class Direction { Forward, Backward };

/// Forward, from w: one move at `start` on the first edge, then one move at
/// each connector on the following edge. Backward, from the Forward image:
/// undoes those moves edge by edge, last edge first, restoring the state the
/// Forward schedule started from.
Schedule propagate_path(const Hypergraph& g, const FieldModulus& p, const State& w, Vertex start,
                        const EdgePath& path, Direction direction);

struct SynthesisOptions {
    std::uint64_t max_states = kDefaultMaxStates;
    std::uint64_t cap = kDefaultEnumerationCap;
    /// When false, a step the construction cannot match raises
    /// SynthesisIncomplete instead of searching.
    bool allow_fallback = true;
};

struct SynthesisStats {
    std::size_t length = 0;
    std::size_t edge_splits = 0;
    std::size_t descent_moves = 0;
    std::size_t virtual_moves = 0;
    std::size_t propagations = 0;
    std::size_t edge_solves = 0;
    /// Scoped breadth-first searches used to bridge unmatched steps.
    std::size_t fallbacks = 0;
    std::size_t fallback_moves = 0;
};

struct SynthesisResult {
    Schedule schedule;
    SynthesisStats stats;
};

/// Legal schedule from w1 to w2 on a good hypergraph, replay-verified.
SynthesisResult synthesize(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                           const SynthesisOptions& options = {});

inline Schedule synthesize_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                                    const SynthesisOptions& options = {}) {
    return synthesize(g, p, w1, w2, options).schedule;
}

}  // namespace zpwalk

#endif  // ZPWALK_SYNTHESIS_HPP
