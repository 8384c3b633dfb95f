#ifndef ZPWALK_DECISION_HPP
#define ZPWALK_DECISION_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zpwalk/dynamics.hpp"
#include "zpwalk/hypergraph.hpp"
#include "zpwalk/zp.hpp"

namespace zpwalk {

/// A connected piece of a hypergraph: the edges that may fire and the
/// vertices whose equations are kept.
struct Scope {
    std::vector<EdgeIndex> edges;
    std::vector<Vertex> vertices;

    static Scope whole(const Hypergraph& g);
};

/// Unknown X_{e,v}: how many times (mod p) vertex v fires along edge e.
struct Incidence {
    EdgeIndex edge;
    Vertex vertex;

    friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// The move-count system for w1 -> w2. Variables are the incidences in
/// (edge, vertex) order; row i belongs to scope vertex i and reads
///
///     sum over edges e containing v of ( X_{e,v} - sum_{u in e, u != v} X_{e,u} ) = w1(v) - w2(v).
struct ReachSystem {
    std::vector<Incidence> variables;
    std::vector<Vertex> row_vertices;
    ZpMatrixSystem system;

    std::optional<std::size_t> variable_index(EdgeIndex e, Vertex v) const;
};

ReachSystem build_system(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2);
ReachSystem build_system(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                         const Scope& scope);

/// Net change of the state produced by firing each incidence x times.
State state_change(const Hypergraph& g, const FieldModulus& p, const ReachSystem& sys, const ResidueVector& x);

bool system_solvable(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2);

/// H(w1, w2) is solvable iff y.w1 = y.w2 for every y in the left kernel of
/// the system matrix. The kernel is computed once per hypergraph, which makes
/// the test cheap enough for exhaustive sweeps.
class LinearInvariants {
public:
    LinearInvariants(const Hypergraph& g, const FieldModulus& p);

    ResidueVector evaluate(const State& w) const;
    bool solvable(const State& w1, const State& w2) const { return evaluate(w1) == evaluate(w2); }
    std::size_t count() const noexcept { return basis_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }
    const FieldModulus& modulus() const noexcept { return p_; }

private:
    FieldModulus p_;
    std::size_t edges_;
    std::vector<ResidueVector> basis_;
};

/// The algebraic reachability and recurrence rules on top of the invariant
/// test. They answer exactly as decide_reachability and decide_recurrence
/// in Mode::Algebraic.
bool algebraic_reachable(const LinearInvariants& inv, const State& w1, const State& w2);
bool algebraic_recurrent(const LinearInvariants& inv, const State& w1, const State& w2);

enum class Mode { Algebraic, Oracle, Both };
enum class Method { Algebraic, Oracle };

std::string_view to_string(Mode m);
std::string_view to_string(Method m);
Mode parse_mode(std::string_view text);

struct UnsolvabilityRank {
    std::size_t rank;
    std::size_t augmented_rank;

    friend bool operator==(const UnsolvabilityRank&, const UnsolvabilityRank&) = default;
};

struct OrbitExhausted {
    std::size_t orbit_size;

    friend bool operator==(const OrbitExhausted&, const OrbitExhausted&) = default;
};

/// The target has no legal predecessor, so no other state leads to it.
struct NoPredecessor {
    friend bool operator==(const NoPredecessor&, const NoPredecessor&) = default;
};

using Certificate = std::variant<ResidueVector, Schedule, UnsolvabilityRank, OrbitExhausted, NoPredecessor>;

struct Decision {
    bool answer = false;
    /// False only for the necessary-condition filter on a non-good
    /// hypergraph when the system is solvable: the answer is then "maybe".
    bool conclusive = true;
    Method method = Method::Algebraic;
    Certificate certificate = NoPredecessor{};
    /// Set in Mode::Both: the oracle's answer, equal to `answer`.
    std::optional<bool> oracle_answer;
    std::string reason;
};

struct DecisionOptions {
    Mode mode = Mode::Both;
    std::uint64_t max_states = kDefaultMaxStates;
    /// Permit the algebraic test on non-good hypergraphs, where only an
    /// unsolvable system is conclusive.
    bool necessary_only = false;
};

Decision decide_reachability(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                             const DecisionOptions& options = {});

Decision decide_recurrence(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                           const DecisionOptions& options = {});

enum class StateClass { Transient, RecurrentOrInaccessible };

std::string_view to_string(StateClass c);

struct Classification {
    StateClass state_class = StateClass::RecurrentOrInaccessible;
    Method method = Method::Algebraic;
    std::optional<StateClass> oracle_class;
};

Classification classify_state(const Hypergraph& g, const FieldModulus& p, const State& w,
                               const DecisionOptions& options = {});

/// Ground truth for classification by search: w is Transient when it is
/// nonzero and the absorbing zero state is reachable from it. The other
/// fields let callers confirm that every remaining state is recurrent (it
/// can always return to itself) or inaccessible (no predecessor).
struct OracleClassification {
    StateClass state_class;
    bool zero_reachable;
    bool self_recurrent;
    bool has_predecessor;
};

OracleClassification oracle_classify(const Hypergraph& g, const FieldModulus& p, const State& w,
                                     std::uint64_t max_states = kDefaultMaxStates);

}  // namespace zpwalk

#endif  // ZPWALK_DECISION_HPP
