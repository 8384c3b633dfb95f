#ifndef ZPWALK_DYNAMICS_HPP
#define ZPWALK_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zpwalk/hypergraph.hpp"
#include "zpwalk/zp.hpp"

namespace zpwalk {

/// Particle counts per vertex, canonical residues.
using State = ResidueVector;

inline constexpr std::uint64_t kDefaultMaxStates = 2'000'000;

/// Fire `vertex` along `edge`.
struct Move {
    Vertex vertex = 0;
    EdgeIndex edge = 0;

    friend bool operator==(const Move&, const Move&) = default;
};

using Schedule = std::vector<Move>;

/// "1,1,1" -> {1,1,1}. Entries must already be residues in [0, p).
State parse_state(std::string_view literal, const FieldModulus& p, std::size_t n);
std::string format_state(const State& w);

/// One "v <vertex> e <edge>" per line; '#' starts a comment.
Schedule parse_schedule(std::string_view text);
std::string format_schedule(const Schedule& s);

void check_state(const Hypergraph& g, const FieldModulus& p, const State& w);
bool is_zero(const State& w);
/// True when every entry equals p - 1.
bool is_saturated(const FieldModulus& p, const State& w);
State zero_state(std::size_t n);

bool is_legal(const Hypergraph& g, const State& w, const Move& m);
State apply_move(const Hypergraph& g, const FieldModulus& p, const State& w, const Move& m);
void apply_move_in_place(const Hypergraph& g, const FieldModulus& p, State& w, const Move& m);

/// Folds apply_move over `s`. An illegal step raises IllegalMove with the
/// step index in Error::detail().
State replay_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1, const Schedule& s);

/// Predecessor of a legal move producing `w`, if any.
struct Predecessor {
    State state;
    Move move;
};
std::optional<Predecessor> find_predecessor(const Hypergraph& g, const FieldModulus& p, const State& w);
bool has_predecessor(const Hypergraph& g, const FieldModulus& p, const State& w);

/// The set of states reachable from a start state, in BFS order, with the
/// BFS tree. Moves are tried in (edge, vertex) order, so the order is a
/// function of the input only.
class Orbit {
public:
    std::size_t size() const noexcept { return parent_.size(); }
    State state(std::size_t i) const;
    std::optional<std::size_t> index_of(const State& w) const;
    bool contains(const State& w) const { return index_of(w).has_value(); }
    /// Moves from the start state to state i along BFS tree links.
    Schedule path_to(std::size_t i) const;
    /// Indices of the legal successors of state i (restricted to the edges
    /// the orbit was built with).
    std::vector<std::size_t> successors(std::size_t i) const;

private:
    friend class OrbitBuilder;

    std::vector<std::vector<Vertex>> edges_;
    FieldModulus modulus_{2};
    std::vector<bool> allowed_;
    std::size_t n_ = 0;
    bool packed_ = false;
    std::vector<std::uint64_t> powers_;
    std::vector<std::uint64_t> codes_;   // packed mode
    std::vector<Residue> flat_;          // unpacked mode, n_ residues per state
    std::vector<std::uint32_t> dense_;   // packed mode with a small space: code -> index + 1
    std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
    std::unordered_map<std::string, std::uint32_t> keyed_;
    std::vector<std::uint32_t> parent_;
    std::vector<Move> via_;

    std::optional<std::uint32_t> lookup_code(std::uint64_t code) const;
    std::string key_of(const State& w) const;
};

struct OrbitOptions {
    std::uint64_t max_states = kDefaultMaxStates;
    /// Edges the walk may use; empty means all.
    std::vector<bool> allowed_edges;
    /// Stop as soon as this state is discovered.
    std::optional<State> stop_at;
};

/// Raises StateSpaceTooLarge once more than max_states states are found.
Orbit orbit_bfs(const Hypergraph& g, const FieldModulus& p, const State& w1, const OrbitOptions& options = {});

inline Orbit orbit_bfs(const Hypergraph& g, const FieldModulus& p, const State& w1, std::uint64_t max_states) {
    OrbitOptions o;
    o.max_states = max_states;
    return orbit_bfs(g, p, w1, o);
}

bool oracle_reachable(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                      std::uint64_t max_states = kDefaultMaxStates);

/// A shortest schedule from w1 to w2, or nullopt when w2 is not reachable.
std::optional<Schedule> oracle_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1,
                                        const State& w2, std::uint64_t max_states = kDefaultMaxStates);

/// w2 is reachable from every state reachable from w1. Decided on the strongly
/// connected components of the orbit: true iff the orbit has a single sink
/// component and w2 lies in it.
bool oracle_recurrent(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                      std::uint64_t max_states = kDefaultMaxStates);

/// mask[i]: state i of the orbit is recurrent from the orbit's start, that is
/// the orbit has one sink component and state i lies in it.
std::vector<bool> recurrence_mask(const Orbit& orbit);

/// The whole transition graph on Z_p^V, condensed once. Answers reachability
/// and recurrence for every pair, for exhaustive sweeps over small spaces.
class StateSpace {
public:
    static constexpr std::uint64_t kDefaultLimit = 1U << 14;

    /// Raises StateSpaceTooLarge when p^n exceeds `limit`.
    StateSpace(const Hypergraph& g, const FieldModulus& p, std::uint64_t limit = kDefaultLimit);

    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t encode(const State& w) const;
    State decode(std::uint64_t code) const;
    std::size_t component_count() const noexcept { return reach_.size(); }

    bool reachable(const State& w1, const State& w2) const;
    bool recurrent(const State& w1, const State& w2) const;

private:
    static constexpr std::uint32_t kManySinks = ~std::uint32_t{0};

    FieldModulus p_;
    std::size_t n_;
    std::uint64_t size_;
    std::vector<std::uint32_t> component_;
    std::vector<std::vector<std::uint64_t>> reach_;  // bitset over components
    std::vector<std::uint32_t> sink_;                 // the unique reachable sink, or kManySinks
};

/// The definition read literally: one BFS per state of orbit(w1).
bool naive_recurrent(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                     std::uint64_t max_states = kDefaultMaxStates);

}  // namespace zpwalk

#endif  // ZPWALK_DYNAMICS_HPP
