#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "zpwalk/error.hpp"
#include "zpwalk/generate.hpp"
#include "zpwalk/hypergraph.hpp"

using namespace zpwalk;

namespace {

ErrorCode parse_error(std::string_view text) {
    try {
        parse_hypergraph(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a parse failure");
    return ErrorCode::UsageError;
}

const char* kTriangle = "p 3\nvertices 3\nedge 0 1\nedge 0 2\nedge 1 2\n";

}  // namespace

TEST_CASE("parsing") {
    const auto tri = parse_hypergraph(kTriangle);
    CHECK(tri.modulus.value() == 3);
    CHECK(tri.graph == Hypergraph(3, {{0, 1}, {0, 2}, {1, 2}}));

    const auto one = parse_hypergraph("# comment\np 3\nvertices 3\nedge 0 1 2  # trailing\n");
    CHECK(one.graph == Hypergraph(3, {{0, 1, 2}}));

    CHECK(parse_error("p 3\nvertices 3\nedge 0 0 1\n") == ErrorCode::DuplicateVertexInEdge);
    CHECK(parse_error("p 3\nvertices 3\nedge 0 1 3\n") == ErrorCode::VertexOutOfRange);
    CHECK(parse_error("p 3\nvertices 3\nedge 0 1 2\nedge 2 1 0\n") == ErrorCode::DuplicateEdge);
    CHECK(parse_error("p 3\nvertices 3\nedge 0\n") == ErrorCode::EdgeTooSmall);
    CHECK(parse_error("p 3\nvertices 3\nbogus 1\n") == ErrorCode::ParseError);
    CHECK(parse_error("vertices 3\nedge 0 1 2\n") == ErrorCode::ParseError);

    try {
        parse_hypergraph("p 3\nvertices 3\n\nedge 0 x\n");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(e.detail() == 4);
    }
}

TEST_CASE("format round-trips") {
    const auto tri = parse_hypergraph(kTriangle);
    const auto again = parse_hypergraph(format_hypergraph(tri.modulus, tri.graph));
    CHECK(again.graph == tri.graph);
    CHECK(again.modulus == tri.modulus);
}

TEST_CASE("goodness") {
    const auto tri = is_good(parse_hypergraph(kTriangle).graph);
    CHECK_FALSE(tri.good);
    REQUIRE(tri.violations.size() == 3);
    for (std::size_t e = 0; e < 3; ++e) {
        CHECK(tri.violations[e].kind == ViolationKind::SmallEdge);
        CHECK(tri.violations[e].detail == std::vector<std::size_t>{e});
    }

    CHECK(is_good(Hypergraph(3, {{0, 1, 2}})).good);

    const auto big = is_good(Hypergraph(4, {{0, 1, 2}, {1, 2, 3}}));
    CHECK_FALSE(big.good);
    REQUIRE(big.violations.size() == 1);
    CHECK(big.violations[0] == Violation{ViolationKind::BigIntersection, {0, 1}});

    const auto apart = is_good(Hypergraph(6, {{0, 1, 2}, {3, 4, 5}}));
    CHECK_FALSE(apart.good);
    CHECK(apart.violations[0].kind == ViolationKind::Disconnected);

    CHECK_FALSE(is_good(Hypergraph(4, {{0, 1, 2}})).good);
}

TEST_CASE("shrinking an edge below three breaks goodness") {
    const Hypergraph g(7, {{0, 1, 2, 3}, {3, 4, 5, 6}});
    REQUIRE(is_good(g).good);
    const Hypergraph shrunk(7, {{0, 1, 2, 3}, {3, 4, 5, 6}, {1, 5}});
    CHECK_FALSE(is_good(shrunk).good);
}

TEST_CASE("connected components") {
    const Hypergraph single(3, {{0, 1, 2}});
    CHECK(connected_components(single, EdgeIndex{0}) == Partition{{0}, {1}, {2}});

    const Hypergraph pair(5, {{0, 1, 2}, {2, 3, 4}});
    CHECK(connected_components(pair).size() == 1);
    CHECK(connected_components(pair, EdgeIndex{0}) == Partition{{0}, {1}, {2, 3, 4}});

    const Hypergraph apart(6, {{0, 1, 2}, {3, 4, 5}});
    CHECK(connected_components(apart).size() == 2);
}

TEST_CASE("edge paths") {
    const Hypergraph pair(5, {{0, 1, 2}, {2, 3, 4}});
    const auto direct = shortest_edge_path(pair, 1, 0);
    CHECK(direct.edges == std::vector<EdgeIndex>{0});
    CHECK(direct.connectors.empty());

    const auto two = shortest_edge_path(pair, 0, 1);
    CHECK(two.edges == std::vector<EdgeIndex>{0, 1});
    CHECK(two.connectors == std::vector<Vertex>{2});

    const Hypergraph chain(7, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}});
    CHECK(shortest_edge_path(chain, 0, 2).edges == std::vector<EdgeIndex>{0, 1, 2});
    try {
        shortest_edge_path(chain, 0, 2, EdgeIndex{1});
        FAIL("expected NoPath");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoPath);
    }
}

TEST_CASE("paths on good graphs have single-vertex connectors") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto g = gen_good_hypergraph(9, 4, seed);
        for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
            const auto path = shortest_edge_path(g, 0, e);
            REQUIRE(path.connectors.size() + 1 == path.edges.size());
            CHECK(g.contains(path.edges.front(), 0));
            CHECK(path.edges.back() == e);
            for (std::size_t i = 0; i + 1 < path.edges.size(); ++i) {
                std::size_t shared = 0;
                for (auto v : g.edge(path.edges[i])) shared += g.contains(path.edges[i + 1], v);
                CHECK(shared == 1);
                CHECK(g.contains(path.edges[i], path.connectors[i]));
                CHECK(g.contains(path.edges[i + 1], path.connectors[i]));
            }
        }
    }
}

TEST_CASE("generator") {
    const auto three = gen_good_hypergraph(3, 1, 1);
    CHECK(three == Hypergraph(3, {{0, 1, 2}}));

    const auto five = gen_good_hypergraph(5, 2, 1);
    CHECK(is_good(five).good);
    REQUIRE(five.edge_count() == 2);
    CHECK(five.edge(0).size() == 3);
    CHECK(five.edge(1).size() == 3);

    try {
        gen_good_hypergraph(3, 2, 1);
        FAIL("expected Infeasible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Infeasible);
    }

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto g = gen_good_hypergraph(10, 4, seed);
        CHECK(is_good(g).good);
        CHECK(g == gen_good_hypergraph(10, 4, seed));
    }
}

TEST_CASE("enumerated family") {
    const auto family = enumerate_good_hypergraphs(6, 2);
    CHECK(family.size() == 7);
    for (const auto& g : family) CHECK(is_good(g).good);
    CHECK(connected_components(family.front()).size() == 1);
    // up to isomorphism: no two members share a canonical form
    std::set<std::pair<std::size_t, std::vector<std::vector<Vertex>>>> seen;
    for (const auto& g : family) CHECK(seen.insert({g.vertex_count(), canonical_edges(g)}).second);
}
