#ifndef ZPWALK_HYPERGRAPH_HPP
#define ZPWALK_HYPERGRAPH_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zpwalk/zp.hpp"

namespace zpwalk {

using Vertex = std::size_t;
using EdgeIndex = std::size_t;

/// Undirected hypergraph on vertices [0, n). Edges keep their declaration
/// order (they are addressed by index); each edge stores its vertices sorted.
class Hypergraph {
public:
    Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Vertex>& edge(EdgeIndex e) const { return edges_.at(e); }
    const std::vector<std::vector<Vertex>>& edges() const noexcept { return edges_; }
    const std::vector<EdgeIndex>& incident_edges(Vertex v) const { return incident_.at(v); }
    bool contains(EdgeIndex e, Vertex v) const;
    /// Sum of edge sizes: the number of (edge, vertex) incidences.
    std::size_t incidence_count() const noexcept { return incidences_; }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_;
    std::vector<std::vector<Vertex>> edges_;
    std::vector<std::vector<EdgeIndex>> incident_;
    std::size_t incidences_ = 0;
};

struct Instance {
    FieldModulus modulus;
    Hypergraph graph;
};

/// Reads the line-oriented hypergraph format:
///
///     # comment
///     p 3
///     vertices 3
///     edge 0 1
///     edge 0 2
///
/// Errors carry the offending line number in Error::detail().
Instance parse_hypergraph(std::string_view text);
Instance load_hypergraph(const std::filesystem::path& path);
std::string format_hypergraph(const FieldModulus& p, const Hypergraph& g);

enum class ViolationKind { Disconnected, SmallEdge, BigIntersection };

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    // SmallEdge: {edge}; BigIntersection: {edge, edge}; Disconnected: the
    // smallest vertex of every component.
    std::vector<std::size_t> detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct GoodnessReport {
    bool good = false;
    std::vector<Violation> violations;
};

/// Connected, every edge of size >= 3, and any two edges share at most one
/// vertex.
GoodnessReport is_good(const Hypergraph& g);

/// Components as sorted vertex lists, ordered by smallest vertex.
using Partition = std::vector<std::vector<Vertex>>;

Partition connected_components(const Hypergraph& g, std::optional<EdgeIndex> removed_edge = std::nullopt);

/// Components of the sub-hypergraph made of `vertices` and the edges in
/// `edges` (each edge must lie inside `vertices`).
Partition connected_components(const Hypergraph& g, std::span<const EdgeIndex> edges,
                               std::span<const Vertex> vertices);

/// Edge path e_1..e_k. connectors[i] lies in edges[i] and edges[i+1]. When
/// the target edge itself was not usable the path stops at an edge meeting
/// it, and `exit` is the shared vertex.
struct EdgePath {
    std::vector<EdgeIndex> edges;
    std::vector<Vertex> connectors;
    std::optional<Vertex> exit;

    friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

EdgePath shortest_edge_path(const Hypergraph& g, Vertex from_vertex, EdgeIndex to_edge,
                            std::optional<EdgeIndex> avoid_edge = std::nullopt);

/// Same search restricted to edges with allowed[e] == true.
EdgePath shortest_edge_path(const Hypergraph& g, Vertex from_vertex, EdgeIndex to_edge,
                            const std::vector<bool>& allowed);

}  // namespace zpwalk

#endif  // ZPWALK_HYPERGRAPH_HPP
