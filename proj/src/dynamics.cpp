#include "zpwalk/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <sstream>

#include "zpwalk/error.hpp"

namespace zpwalk {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::uint64_t to_number(std::string_view word, const std::string& context) {
    std::uint64_t value = 0;
    const auto* end = word.data() + word.size();
    auto [ptr, ec] = std::from_chars(word.data(), end, value);
    if (word.empty() || ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::ParseError, context + ": expected a non-negative integer, got '" + std::string(word) + "'");
    }
    return value;
}

}  // namespace

State parse_state(std::string_view literal, const FieldModulus& p, std::size_t n) {
    State w;
    std::size_t pos = 0;
    while (true) {
        const auto comma = literal.find(',', pos);
        const auto piece = trim(literal.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        const auto v = to_number(piece, "state literal");
        if (v >= p.value()) {
            throw Error(ErrorCode::ParseError, "state entry " + std::to_string(v) + " is not a residue mod " +
                                                   std::to_string(p.value()));
        }
        w.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (w.size() != n) {
        throw Error(ErrorCode::ShapeError,
                    "state has " + std::to_string(w.size()) + " entries, hypergraph has " + std::to_string(n) + " vertices");
    }
    return w;
}

std::string format_state(const State& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(w[i]);
    }
    return out;
}

Schedule parse_schedule(std::string_view text) {
    Schedule s;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::istringstream in{std::string(line)};
        std::string v_tag, v_val, e_tag, e_val, extra;
        if (!(in >> v_tag)) continue;
        const std::string where = "schedule line " + std::to_string(line_no);
        if (!(in >> v_val >> e_tag >> e_val) || v_tag != "v" || e_tag != "e" || (in >> extra)) {
            throw Error(ErrorCode::ParseError, where + ": expected 'v <vertex> e <edge>'", line_no);
        }
        s.push_back(Move{to_number(v_val, where), to_number(e_val, where)});
    }
    return s;
}

std::string format_schedule(const Schedule& s) {
    std::string out;
    for (const auto& m : s) out += "v " + std::to_string(m.vertex) + " e " + std::to_string(m.edge) + "\n";
    return out;
}

void check_state(const Hypergraph& g, const FieldModulus& p, const State& w) {
    if (w.size() != g.vertex_count()) {
        throw Error(ErrorCode::ShapeError, "state has " + std::to_string(w.size()) + " entries, hypergraph has " +
                                               std::to_string(g.vertex_count()) + " vertices");
    }
    for (Residue r : w) {
        if (r >= p.value()) throw Error(ErrorCode::ShapeError, "state entry " + std::to_string(r) + " is not canonical");
    }
}

bool is_zero(const State& w) {
    return std::all_of(w.begin(), w.end(), [](Residue r) { return r == 0; });
}

bool is_saturated(const FieldModulus& p, const State& w) {
    return std::all_of(w.begin(), w.end(), [&](Residue r) { return r == p.minus_one(); });
}

State zero_state(std::size_t n) { return State(n, 0); }

bool is_legal(const Hypergraph& g, const State& w, const Move& m) {
    return m.edge < g.edge_count() && m.vertex < w.size() && g.contains(m.edge, m.vertex) && w[m.vertex] != 0;
}

void apply_move_in_place(const Hypergraph& g, const FieldModulus& p, State& w, const Move& m) {
    if (m.edge >= g.edge_count() || m.vertex >= w.size() || !g.contains(m.edge, m.vertex)) {
        throw Error(ErrorCode::IllegalMove,
                    "vertex " + std::to_string(m.vertex) + " is not in edge " + std::to_string(m.edge));
    }
    if (w[m.vertex] == 0) {
        throw Error(ErrorCode::IllegalMove, "vertex " + std::to_string(m.vertex) + " holds no particles");
    }
    for (Vertex u : g.edge(m.edge)) {
        w[u] = u == m.vertex ? p.sub(w[u], 1) : p.add(w[u], 1);
    }
}

State apply_move(const Hypergraph& g, const FieldModulus& p, const State& w, const Move& m) {
    State out = w;
    apply_move_in_place(g, p, out, m);
    return out;
}

State replay_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1, const Schedule& s) {
    State w = w1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        try {
            apply_move_in_place(g, p, w, s[i]);
        } catch (const Error& e) {
            throw Error(ErrorCode::IllegalMove, "step " + std::to_string(i) + ": " + e.what(), i);
        }
    }
    return w;
}

std::optional<Predecessor> find_predecessor(const Hypergraph& g, const FieldModulus& p, const State& w) {
    // Undoing a move at (v, e) gives v one particle more and every other
    // vertex of e one fewer; it was legal iff v then holds a nonzero count.
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        for (Vertex v : g.edge(e)) {
            if (w[v] == p.minus_one()) continue;
            State prev = w;
            for (Vertex u : g.edge(e)) prev[u] = u == v ? p.add(prev[u], 1) : p.sub(prev[u], 1);
            return Predecessor{std::move(prev), Move{v, e}};
        }
    }
    return std::nullopt;
}

bool has_predecessor(const Hypergraph& g, const FieldModulus& p, const State& w) {
    return find_predecessor(g, p, w).has_value();
}

// ---------------------------------------------------------------------------
// Orbit

State Orbit::state(std::size_t i) const {
    State w(n_);
    if (packed_) {
        std::uint64_t code = codes_.at(i);
        for (std::size_t k = 0; k < n_; ++k) {
            w[k] = code % modulus_.value();
            code /= modulus_.value();
        }
    } else {
        std::copy_n(flat_.begin() + static_cast<std::ptrdiff_t>(i * n_), n_, w.begin());
    }
    return w;
}

std::string Orbit::key_of(const State& w) const {
    return std::string(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(Residue));
}

std::optional<std::uint32_t> Orbit::lookup_code(std::uint64_t code) const {
    if (!dense_.empty()) {
        const auto slot = dense_[code];
        if (slot == 0) return std::nullopt;
        return slot - 1;
    }
    const auto it = sparse_.find(code);
    if (it == sparse_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Orbit::index_of(const State& w) const {
    if (w.size() != n_) return std::nullopt;
    if (packed_) {
        std::uint64_t code = 0;
        for (std::size_t k = 0; k < n_; ++k) {
            if (w[k] >= modulus_.value()) return std::nullopt;
            code += w[k] * powers_[k];
        }
        return lookup_code(code);
    }
    const auto it = keyed_.find(key_of(w));
    if (it == keyed_.end()) return std::nullopt;
    return it->second;
}

Schedule Orbit::path_to(std::size_t i) const {
    Schedule s;
    while (i != 0) {
        s.push_back(via_.at(i));
        i = parent_[i];
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::vector<std::size_t> Orbit::successors(std::size_t i) const {
    const State w = state(i);
    std::vector<std::size_t> out;
    State next = w;
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        if (!allowed_[e]) continue;
        for (Vertex v : edges_[e]) {
            if (w[v] == 0) continue;
            for (Vertex u : edges_[e]) next[u] = u == v ? modulus_.sub(w[u], 1) : modulus_.add(w[u], 1);
            if (const auto j = index_of(next)) out.push_back(*j);
            for (Vertex u : edges_[e]) next[u] = w[u];
        }
    }
    return out;
}

class OrbitBuilder {
public:
    static Orbit build(const Hypergraph& g, const FieldModulus& p, const State& w1, const OrbitOptions& options) {
        check_state(g, p, w1);
        Orbit o;
        o.edges_ = g.edges();
        o.modulus_ = p;
        o.n_ = g.vertex_count();
        o.allowed_ = options.allowed_edges.empty() ? std::vector<bool>(g.edge_count(), true) : options.allowed_edges;
        if (o.allowed_.size() != g.edge_count()) throw Error(ErrorCode::ShapeError, "edge mask has wrong length");

        // Packed codes need p^n to fit in 64 bits.
        std::uint64_t space = 1;
        o.packed_ = true;
        o.powers_.assign(o.n_, 0);
        for (std::size_t k = 0; k < o.n_; ++k) {
            o.powers_[k] = space;
            if (space > std::numeric_limits<std::uint64_t>::max() / p.value()) {
                o.packed_ = false;
                break;
            }
            space *= p.value();
        }
        if (o.packed_ && space <= kDenseLimit) o.dense_.assign(space, 0);

        auto insert = [&](const State& w, std::uint32_t parent, Move via) -> bool {
            const auto idx = static_cast<std::uint32_t>(o.parent_.size());
            if (o.packed_) {
                std::uint64_t code = 0;
                for (std::size_t k = 0; k < o.n_; ++k) code += w[k] * o.powers_[k];
                if (!o.dense_.empty()) {
                    if (o.dense_[code] != 0) return false;
                    o.dense_[code] = idx + 1;
                } else if (!o.sparse_.emplace(code, idx).second) {
                    return false;
                }
                o.codes_.push_back(code);
            } else {
                if (!o.keyed_.emplace(o.key_of(w), idx).second) return false;
                o.flat_.insert(o.flat_.end(), w.begin(), w.end());
            }
            o.parent_.push_back(parent);
            o.via_.push_back(via);
            if (o.parent_.size() > options.max_states) {
                throw Error(ErrorCode::StateSpaceTooLarge,
                            "orbit exceeds " + std::to_string(options.max_states) + " states", options.max_states);
            }
            return true;
        };

        insert(w1, 0, Move{});
        if (options.stop_at && *options.stop_at == w1) return o;
        State next;
        for (std::size_t head = 0; head < o.parent_.size(); ++head) {
            const State w = o.state(head);
            next = w;
            for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
                if (!o.allowed_[e]) continue;
                for (Vertex v : g.edge(e)) {
                    if (w[v] == 0) continue;
                    for (Vertex u : g.edge(e)) next[u] = u == v ? p.sub(w[u], 1) : p.add(w[u], 1);
                    const bool fresh = insert(next, static_cast<std::uint32_t>(head), Move{v, e});
                    if (fresh && options.stop_at && *options.stop_at == next) return o;
                    for (Vertex u : g.edge(e)) next[u] = w[u];
                }
            }
        }
        return o;
    }
};

Orbit orbit_bfs(const Hypergraph& g, const FieldModulus& p, const State& w1, const OrbitOptions& options) {
    return OrbitBuilder::build(g, p, w1, options);
}

bool oracle_reachable(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                      std::uint64_t max_states) {
    check_state(g, p, w2);
    return orbit_bfs(g, p, w1, max_states).contains(w2);
}

std::optional<Schedule> oracle_schedule(const Hypergraph& g, const FieldModulus& p, const State& w1,
                                        const State& w2, std::uint64_t max_states) {
    check_state(g, p, w2);
    const auto orbit = orbit_bfs(g, p, w1, max_states);
    const auto idx = orbit.index_of(w2);
    if (!idx) return std::nullopt;
    return orbit.path_to(*idx);
}

namespace {

// Iterative Tarjan; returns the component id of every node and marks which
// components have no edge leaving them.
struct Condensation {
    std::vector<std::uint32_t> component;
    std::vector<bool> is_sink;
};

Condensation condense(const Orbit& orbit) {
    const std::size_t n = orbit.size();
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t counter = 0;
    std::uint32_t components = 0;

    struct Frame {
        std::uint32_t node;
        std::vector<std::size_t> succ;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        auto open = [&](std::uint32_t v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            call.push_back(Frame{v, orbit.successors(v), 0});
        };
        open(static_cast<std::uint32_t>(root));
        while (!call.empty()) {
            auto& f = call.back();
            if (f.next < f.succ.size()) {
                const auto w = static_cast<std::uint32_t>(f.succ[f.next++]);
                if (index[w] == kUnset) {
                    open(w);
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const auto v = f.node;
            if (low[v] == index[v]) {
                while (true) {
                    const auto w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = components;
                    if (w == v) break;
                }
                ++components;
            }
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
        }
    }

    Condensation c{std::move(comp), std::vector<bool>(components, true)};
    for (std::size_t v = 0; v < n; ++v) {
        for (auto w : orbit.successors(v)) {
            if (c.component[w] != c.component[v]) c.is_sink[c.component[v]] = false;
        }
    }
    return c;
}

}  // namespace

std::vector<bool> recurrence_mask(const Orbit& orbit) {
    const auto c = condense(orbit);
    std::vector<bool> mask(orbit.size(), false);
    if (std::count(c.is_sink.begin(), c.is_sink.end(), true) != 1) return mask;
    for (std::size_t i = 0; i < orbit.size(); ++i) mask[i] = c.is_sink[c.component[i]];
    return mask;
}

bool oracle_recurrent(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                      std::uint64_t max_states) {
    check_state(g, p, w2);
    const auto orbit = orbit_bfs(g, p, w1, max_states);
    const auto target = orbit.index_of(w2);
    return target && recurrence_mask(orbit)[*target];
}

bool naive_recurrent(const Hypergraph& g, const FieldModulus& p, const State& w1, const State& w2,
                     std::uint64_t max_states) {
    check_state(g, p, w2);
    const auto orbit = orbit_bfs(g, p, w1, max_states);
    if (!orbit.contains(w2)) return false;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        if (!orbit_bfs(g, p, orbit.state(i), max_states).contains(w2)) return false;
    }
    return true;
}

StateSpace::StateSpace(const Hypergraph& g, const FieldModulus& p, std::uint64_t limit)
    : p_(p), n_(g.vertex_count()), size_(1) {
    for (std::size_t i = 0; i < n_; ++i) {
        if (size_ > limit / p.value()) {
            throw Error(ErrorCode::StateSpaceTooLarge, "state space exceeds " + std::to_string(limit), limit);
        }
        size_ *= p.value();
    }
    std::vector<std::uint64_t> power(n_, 1);
    for (std::size_t i = 1; i < n_; ++i) power[i] = power[i - 1] * p.value();

    auto successors = [&](std::uint64_t code) {
        std::vector<std::uint64_t> out;
        const State w = decode(code);
        for (const auto& edge : g.edges()) {
            for (Vertex v : edge) {
                if (w[v] == 0) continue;
                std::uint64_t next = code;
                for (Vertex u : edge) {
                    const Residue after = u == v ? w[u] - 1 : p.add(w[u], 1);
                    next = next - w[u] * power[u] + after * power[u];
                }
                out.push_back(next);
            }
        }
        return out;
    };

    // Iterative Tarjan; components are numbered sinks first.
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    std::vector<std::uint32_t> index(size_, kUnset), low(size_, 0);
    component_.assign(size_, kUnset);
    std::vector<bool> on_stack(size_, false);
    std::vector<std::uint32_t> stack;
    struct Frame {
        std::uint32_t node;
        std::vector<std::uint64_t> succ;
        std::size_t next;
    };
    std::vector<Frame> call;
    std::uint32_t counter = 0;
    std::uint32_t components = 0;
    for (std::uint64_t root = 0; root < size_; ++root) {
        if (index[root] != kUnset) continue;
        auto open = [&](std::uint32_t v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            call.push_back(Frame{v, successors(v), 0});
        };
        open(static_cast<std::uint32_t>(root));
        while (!call.empty()) {
            auto& f = call.back();
            if (f.next < f.succ.size()) {
                const auto w = static_cast<std::uint32_t>(f.succ[f.next++]);
                if (index[w] == kUnset) {
                    open(w);
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const auto v = f.node;
            if (low[v] == index[v]) {
                while (true) {
                    const auto w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component_[w] = components;
                    if (w == v) break;
                }
                ++components;
            }
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
        }
    }

    std::vector<std::vector<std::uint32_t>> next(components);
    for (std::uint64_t c = 0; c < size_; ++c) {
        for (auto d : successors(c)) {
            if (component_[d] != component_[c]) next[component_[c]].push_back(component_[d]);
        }
    }
    const std::size_t words = (components + 63) / 64;
    reach_.assign(components, std::vector<std::uint64_t>(words, 0));
    sink_.assign(components, kManySinks);
    for (std::uint32_t c = 0; c < components; ++c) {
        auto& r = reach_[c];
        r[c / 64] |= std::uint64_t{1} << (c % 64);
        if (next[c].empty()) {
            sink_[c] = c;
            continue;
        }
        sink_[c] = sink_[next[c].front()];
        for (auto d : next[c]) {
            for (std::size_t k = 0; k < words; ++k) r[k] |= reach_[d][k];
            if (sink_[d] != sink_[c]) sink_[c] = kManySinks;
        }
    }
}

std::uint64_t StateSpace::encode(const State& w) const {
    std::uint64_t code = 0;
    for (std::size_t i = n_; i-- > 0;) code = code * p_.value() + w.at(i);
    return code;
}

State StateSpace::decode(std::uint64_t code) const {
    State w(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        w[i] = code % p_.value();
        code /= p_.value();
    }
    return w;
}

bool StateSpace::reachable(const State& w1, const State& w2) const {
    const auto a = component_[encode(w1)];
    const auto b = component_[encode(w2)];
    return (reach_[a][b / 64] >> (b % 64)) & 1U;
}

bool StateSpace::recurrent(const State& w1, const State& w2) const {
    return reachable(w1, w2) && sink_[component_[encode(w1)]] == component_[encode(w2)];
}

}  // namespace zpwalk
