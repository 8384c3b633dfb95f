#include "zpwalk/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "zpwalk/error.hpp"

namespace zpwalk {

Hypergraph::Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> edges)
    : n_(n), edges_(std::move(edges)), incident_(n) {
    if (n_ == 0) throw Error(ErrorCode::ShapeError, "hypergraph needs at least one vertex");
    std::set<std::vector<Vertex>> seen;
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        auto& edge = edges_[e];
        std::sort(edge.begin(), edge.end());
        if (edge.size() < 2) {
            throw Error(ErrorCode::EdgeTooSmall, "edge " + std::to_string(e) + " has fewer than 2 vertices");
        }
        if (std::adjacent_find(edge.begin(), edge.end()) != edge.end()) {
            throw Error(ErrorCode::DuplicateVertexInEdge, "edge " + std::to_string(e) + " repeats a vertex");
        }
        if (edge.back() >= n_) {
            throw Error(ErrorCode::VertexOutOfRange,
                        "edge " + std::to_string(e) + " uses vertex " + std::to_string(edge.back()));
        }
        if (!seen.insert(edge).second) {
            throw Error(ErrorCode::DuplicateEdge, "edge " + std::to_string(e) + " duplicates an earlier edge");
        }
        for (Vertex v : edge) incident_[v].push_back(e);
        incidences_ += edge.size();
    }
}

bool Hypergraph::contains(EdgeIndex e, Vertex v) const {
    const auto& edge = edges_.at(e);
    return std::binary_search(edge.begin(), edge.end(), v);
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) words.push_back(line.substr(i, j - i));
        i = j;
    }
    return words;
}

std::uint64_t parse_number(std::string_view word, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto* end = word.data() + word.size();
    auto [ptr, ec] = std::from_chars(word.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                        std::string(word) + "'",
                    line_no);
    }
    return value;
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what, line_no);
}

}  // namespace

Instance parse_hypergraph(std::string_view text) {
    std::optional<std::uint64_t> p;
    std::optional<std::size_t> n;
    std::vector<std::vector<Vertex>> edges;
    std::set<std::vector<Vertex>> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto words = split_words(line);
        if (words.empty()) continue;

        const auto directive = words[0];
        if (directive == "p") {
            if (p) fail_at(line_no, "duplicate 'p' directive");
            if (words.size() != 2) fail_at(line_no, "'p' takes one integer");
            p = parse_number(words[1], line_no);
            if (*p < 2) fail_at(line_no, "modulus must be >= 2");
        } else if (directive == "vertices") {
            if (n) fail_at(line_no, "duplicate 'vertices' directive");
            if (words.size() != 2) fail_at(line_no, "'vertices' takes one integer");
            n = parse_number(words[1], line_no);
            if (*n == 0) fail_at(line_no, "need at least one vertex");
        } else if (directive == "edge") {
            if (!n) fail_at(line_no, "'edge' before 'vertices'");
            if (words.size() < 3) {
                throw Error(ErrorCode::EdgeTooSmall,
                            "line " + std::to_string(line_no) + ": an edge needs at least 2 vertices", line_no);
            }
            std::vector<Vertex> edge;
            for (std::size_t i = 1; i < words.size(); ++i) {
                const auto v = parse_number(words[i], line_no);
                if (v >= *n) {
                    throw Error(ErrorCode::VertexOutOfRange,
                                "line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                                    " not in [0, " + std::to_string(*n) + ")",
                                line_no);
                }
                edge.push_back(static_cast<Vertex>(v));
            }
            std::sort(edge.begin(), edge.end());
            if (std::adjacent_find(edge.begin(), edge.end()) != edge.end()) {
                throw Error(ErrorCode::DuplicateVertexInEdge,
                            "line " + std::to_string(line_no) + ": vertex repeated within an edge", line_no);
            }
            if (!seen.insert(edge).second) {
                throw Error(ErrorCode::DuplicateEdge, "line " + std::to_string(line_no) + ": duplicate edge",
                            line_no);
            }
            edges.push_back(std::move(edge));
        } else {
            fail_at(line_no, "unknown directive '" + std::string(directive) + "'");
        }
    }
    if (!p) throw Error(ErrorCode::ParseError, "missing 'p' directive");
    if (!n) throw Error(ErrorCode::ParseError, "missing 'vertices' directive");
    return Instance{FieldModulus(*p), Hypergraph(*n, std::move(edges))};
}

Instance load_hypergraph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hypergraph(buf.str());
}

std::string format_hypergraph(const FieldModulus& p, const Hypergraph& g) {
    std::ostringstream out;
    out << "p " << p.value() << "\n";
    out << "vertices " << g.vertex_count() << "\n";
    for (const auto& edge : g.edges()) {
        out << "edge";
        for (Vertex v : edge) out << ' ' << v;
        out << "\n";
    }
    return out.str();
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Disconnected: return "Disconnected";
        case ViolationKind::SmallEdge: return "SmallEdge";
        case ViolationKind::BigIntersection: return "BigIntersection";
    }
    return "Unknown";
}

GoodnessReport is_good(const Hypergraph& g) {
    GoodnessReport report;
    const auto parts = connected_components(g);
    if (parts.size() > 1) {
        Violation v{ViolationKind::Disconnected, {}};
        for (const auto& part : parts) v.detail.push_back(part.front());
        report.violations.push_back(std::move(v));
    }
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).size() < 3) report.violations.push_back({ViolationKind::SmallEdge, {e}});
    }
    for (EdgeIndex a = 0; a < g.edge_count(); ++a) {
        for (EdgeIndex b = a + 1; b < g.edge_count(); ++b) {
            const auto& ea = g.edge(a);
            const auto& eb = g.edge(b);
            std::vector<Vertex> common;
            std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(common));
            if (common.size() > 1) report.violations.push_back({ViolationKind::BigIntersection, {a, b}});
        }
    }
    report.good = report.violations.empty();
    return report;
}

Partition connected_components(const Hypergraph& g, std::optional<EdgeIndex> removed_edge) {
    if (removed_edge && *removed_edge >= g.edge_count()) {
        throw Error(ErrorCode::ShapeError, "removed edge " + std::to_string(*removed_edge) + " out of range");
    }
    std::vector<EdgeIndex> edges;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        if (e != removed_edge) edges.push_back(e);
    }
    std::vector<Vertex> vertices(g.vertex_count());
    std::iota(vertices.begin(), vertices.end(), Vertex{0});
    return connected_components(g, edges, vertices);
}

Partition connected_components(const Hypergraph& g, std::span<const EdgeIndex> edges,
                               std::span<const Vertex> vertices) {
    // Union-find over vertex ids.
    std::vector<Vertex> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (EdgeIndex e : edges) {
        const auto& edge = g.edge(e);
        for (std::size_t i = 1; i < edge.size(); ++i) {
            const auto a = find(edge[0]);
            const auto b = find(edge[i]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<Vertex> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    Partition parts;
    std::vector<std::size_t> slot(g.vertex_count(), SIZE_MAX);
    for (Vertex v : sorted) {
        const auto root = find(v);
        if (slot[root] == SIZE_MAX) {
            slot[root] = parts.size();
            parts.emplace_back();
        }
        parts[slot[root]].push_back(v);
    }
    return parts;
}

EdgePath shortest_edge_path(const Hypergraph& g, Vertex from_vertex, EdgeIndex to_edge,
                            std::optional<EdgeIndex> avoid_edge) {
    std::vector<bool> allowed(g.edge_count(), true);
    if (avoid_edge) allowed.at(*avoid_edge) = false;
    return shortest_edge_path(g, from_vertex, to_edge, allowed);
}

EdgePath shortest_edge_path(const Hypergraph& g, Vertex from_vertex, EdgeIndex to_edge,
                            const std::vector<bool>& allowed) {
    if (from_vertex >= g.vertex_count() || to_edge >= g.edge_count()) {
        throw Error(ErrorCode::ShapeError, "path endpoint out of range");
    }
    const bool target_usable = allowed.at(to_edge);
    const auto& target = g.edge(to_edge);
    auto lowest_common = [&](EdgeIndex a, EdgeIndex b) -> std::optional<Vertex> {
        const auto& ea = g.edge(a);
        const auto& eb = g.edge(b);
        std::vector<Vertex> common;
        std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(common));
        if (common.empty()) return std::nullopt;
        return common.front();
    };
    auto is_goal = [&](EdgeIndex e) {
        return target_usable ? e == to_edge : lowest_common(e, to_edge).has_value();
    };

    constexpr EdgeIndex kNone = SIZE_MAX;
    std::vector<EdgeIndex> parent(g.edge_count(), kNone);
    std::vector<bool> seen(g.edge_count(), false);
    std::deque<EdgeIndex> queue;
    for (EdgeIndex e : g.incident_edges(from_vertex)) {
        if (!allowed[e]) continue;
        seen[e] = true;
        queue.push_back(e);
    }
    std::optional<EdgeIndex> found;
    while (!queue.empty()) {
        const auto e = queue.front();
        queue.pop_front();
        if (is_goal(e)) {
            found = e;
            break;
        }
        std::vector<EdgeIndex> next;
        for (Vertex v : g.edge(e)) {
            for (EdgeIndex f : g.incident_edges(v)) {
                if (allowed[f] && !seen[f]) next.push_back(f);
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (EdgeIndex f : next) {
            seen[f] = true;
            parent[f] = e;
            queue.push_back(f);
        }
    }
    if (!found) {
        throw Error(ErrorCode::NoPath, "no edge path from vertex " + std::to_string(from_vertex) + " to edge " +
                                           std::to_string(to_edge));
    }
    EdgePath path;
    for (EdgeIndex e = *found; e != kNone; e = parent[e]) path.edges.push_back(e);
    std::reverse(path.edges.begin(), path.edges.end());
    for (std::size_t i = 0; i + 1 < path.edges.size(); ++i) {
        path.connectors.push_back(*lowest_common(path.edges[i], path.edges[i + 1]));
    }
    if (!target_usable) path.exit = lowest_common(path.edges.back(), to_edge);
    (void)target;
    return path;
}

}  // namespace zpwalk
