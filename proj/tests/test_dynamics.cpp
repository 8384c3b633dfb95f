#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"
#include "zpwalk/dynamics.hpp"
#include "zpwalk/error.hpp"
#include "zpwalk/generate.hpp"

using namespace zpwalk;

namespace {

const FieldModulus p3(3);
const Hypergraph triangle(3, {{0, 1}, {0, 2}, {1, 2}});

std::vector<State> all_states(std::size_t n, std::uint64_t p) {
    std::vector<State> out;
    ref::for_each_state(n, p, [&](const ref::Vec& w) { out.push_back(w); });
    return out;
}

}  // namespace

TEST_CASE("state and schedule literals") {
    CHECK(parse_state("1,1,1", p3, 3) == State{1, 1, 1});
    CHECK(format_state({0, 2, 1}) == "0,2,1");
    CHECK_THROWS_AS(parse_state("1,3,1", p3, 3), Error);
    CHECK_THROWS_AS(parse_state("1,1", p3, 3), Error);
    const Schedule s{{0, 0}, {2, 1}};
    CHECK(parse_schedule(format_schedule(s)) == s);
    CHECK(parse_schedule("# header\nv 1 e 0\n\n") == Schedule{{1, 0}});
}

TEST_CASE("apply_move") {
    const Hypergraph edge(3, {{0, 1, 2}});
    CHECK(apply_move(edge, p3, {1, 0, 0}, {0, 0}) == State{0, 1, 1});
    CHECK(apply_move(triangle, p3, {1, 1, 1}, {0, 0}) == State{0, 2, 1});
    CHECK_THROWS_AS(apply_move(edge, p3, {0, 1, 1}, {0, 0}), Error);
    CHECK_THROWS_AS(apply_move(triangle, p3, {1, 1, 1}, {2, 0}), Error);
}

TEST_CASE("total changes by |e| - 2") {
    const FieldModulus p5(5);
    const Hypergraph g(6, {{0, 1}, {1, 2, 3}, {3, 4, 5, 0}});
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        State w(6);
        for (auto& x : w) x = rng() % 5;
        const EdgeIndex e = rng() % 3;
        const Vertex v = g.edge(e)[rng() % g.edge(e).size()];
        if (w[v] == 0) continue;
        auto total = [](const State& s) { return std::accumulate(s.begin(), s.end(), Residue{0}) % 5; };
        CHECK(total(apply_move(g, p5, w, {v, e})) == (total(w) + g.edge(e).size() - 2) % 5);
    }
}

TEST_CASE("replay_schedule") {
    const Hypergraph four(4, {{0, 1, 2, 3}});
    CHECK(replay_schedule(four, p3, {1, 1, 0, 0}, {}) == State{1, 1, 0, 0});
    CHECK(replay_schedule(four, p3, {1, 1, 0, 0}, {{0, 0}, {1, 0}, {0, 0}, {1, 0}}) == State{1, 1, 1, 1});
    try {
        replay_schedule(four, p3, {1, 0, 0, 0}, {{0, 0}, {0, 0}});
        FAIL("expected IllegalMove");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IllegalMove);
        CHECK(e.detail() == 1);
    }
}

TEST_CASE("orbits") {
    CHECK(orbit_bfs(triangle, p3, {0, 0, 0}).size() == 1);

    const auto o = orbit_bfs(triangle, p3, {1, 1, 1});
    std::set<State> got;
    for (std::size_t i = 0; i < o.size(); ++i) got.insert(o.state(i));
    std::set<State> want{{1, 1, 1}, {0, 0, 0}};
    State perm{0, 1, 2};
    do want.insert(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got == want);
    CHECK(o.size() == 8);

    const Hypergraph edge(3, {{0, 1, 2}});
    const auto e = orbit_bfs(edge, p3, {1, 0, 0});
    CHECK(e.contains({0, 1, 1}));
    CHECK(e.size() == ref::orbit({{0, 1, 2}}, 3, {1, 0, 0}).size());

    for (std::size_t i = 0; i < e.size(); ++i) CHECK(replay_schedule(edge, p3, {1, 0, 0}, e.path_to(i)) == e.state(i));

    const auto again = orbit_bfs(edge, p3, {1, 0, 0});
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(again.state(i) == e.state(i));

    CHECK_THROWS_AS(orbit_bfs(Hypergraph(7, {{0, 1, 2, 3, 4, 5, 6}}), FieldModulus(5), {1, 0, 0, 0, 0, 0, 0}, 10),
                    Error);
}

TEST_CASE("garden-of-Eden states") {
    CHECK_FALSE(has_predecessor(triangle, p3, {2, 2, 2}));
    const Hypergraph edge(3, {{0, 1, 2}});
    CHECK(has_predecessor(edge, p3, {0, 1, 1}));
    const auto pred = find_predecessor(edge, p3, {0, 0, 0});
    REQUIRE(pred);
    CHECK(apply_move(edge, p3, pred->state, pred->move) == State{0, 0, 0});
}

TEST_CASE("has_predecessor matches a full scan") {
    std::vector<std::pair<Hypergraph, std::uint64_t>> cases{
        {triangle, 3}, {Hypergraph(3, {{0, 1, 2}}), 5}, {Hypergraph(5, {{0, 1, 2}, {2, 3, 4}}), 3},
        {Hypergraph(4, {{0, 1, 2, 3}}), 5}, {Hypergraph(4, {{0, 1}, {1, 2, 3}}), 3}};
    for (const auto& [g, p] : cases) {
        const FieldModulus f(p);
        for (const auto& w : all_states(g.vertex_count(), p)) {
            REQUIRE(has_predecessor(g, f, w) == ref::has_predecessor(g.edges(), p, g.vertex_count(), w));
        }
    }
}

TEST_CASE("oracle reachability and recurrence examples") {
    CHECK(oracle_reachable(triangle, p3, {1, 2, 0}, {1, 2, 0}));
    CHECK_FALSE(oracle_reachable(triangle, p3, {1, 1, 1}, {2, 2, 2}));
    CHECK(oracle_reachable(triangle, p3, {1, 1, 1}, {0, 0, 0}));

    const Hypergraph five(5, {{0, 1, 2, 3, 4}});
    CHECK(oracle_recurrent(five, p3, {1, 0, 0, 0, 0}, {0, 1, 1, 1, 1}));
    CHECK(ref::recurrent(five.edges(), 3, {1, 0, 0, 0, 0}, {0, 1, 1, 1, 1}));
    const Hypergraph three(3, {{0, 1, 2}});
    CHECK_FALSE(oracle_recurrent(three, p3, {1, 1, 1}, {1, 1, 1}));
    CHECK(oracle_recurrent(three, p3, {0, 0, 0}, {0, 0, 0}));

    const auto path = oracle_schedule(five, p3, {1, 0, 0, 0, 0}, {0, 1, 1, 1, 1});
    REQUIRE(path);
    CHECK(replay_schedule(five, p3, {1, 0, 0, 0, 0}, *path) == State{0, 1, 1, 1, 1});
}

TEST_CASE("condensed recurrence matches the literal definition") {
    std::vector<std::pair<Hypergraph, std::uint64_t>> cases{
        {triangle, 3}, {Hypergraph(3, {{0, 1, 2}}), 3}, {Hypergraph(4, {{0, 1, 2, 3}}), 3},
        {Hypergraph(3, {{0, 1, 2}}), 5}, {Hypergraph(4, {{0, 1}, {1, 2, 3}}), 3}};
    for (const auto& [g, p] : cases) {
        const FieldModulus f(p);
        const auto states = all_states(g.vertex_count(), p);
        const StateSpace space(g, f);
        for (const auto& a : states) {
            const auto orbit = ref::orbit(g.edges(), p, a);
            for (const auto& b : states) {
                const bool want = ref::recurrent(g.edges(), p, a, b);
                REQUIRE(oracle_recurrent(g, f, a, b) == want);
                REQUIRE(naive_recurrent(g, f, a, b) == want);
                REQUIRE(space.recurrent(a, b) == want);
                REQUIRE(space.reachable(a, b) == (orbit.count(b) > 0));
                REQUIRE(oracle_reachable(g, f, a, b) == (orbit.count(b) > 0));
            }
        }
    }
}

TEST_CASE("StateSpace matches orbits on generated graphs") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto g = gen_good_hypergraph(7, 3, seed);
        const StateSpace space(g, p3, 3000);
        CHECK(space.size() == 2187);
        std::mt19937_64 rng(seed);
        for (int i = 0; i < 20; ++i) {
            const State a = space.decode(rng() % space.size());
            CHECK(space.encode(a) < space.size());
            const auto o = orbit_bfs(g, p3, a);
            const auto mask = recurrence_mask(o);
            for (std::size_t j = 0; j < o.size(); j += 7) CHECK(space.reachable(a, o.state(j)));
            for (int k = 0; k < 30; ++k) {
                const State b = space.decode(rng() % space.size());
                const auto idx = o.index_of(b);
                CHECK(space.reachable(a, b) == idx.has_value());
                CHECK(space.recurrent(a, b) == (idx.has_value() && mask[*idx]));
            }
        }
    }
    CHECK_THROWS_AS(StateSpace(Hypergraph(9, {{0, 1, 2, 3, 4, 5, 6, 7, 8}}), p3, 1000), Error);
}
