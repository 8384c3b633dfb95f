#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>

#include "support.hpp"
#include "zpwalk/decision.hpp"
#include "zpwalk/error.hpp"
#include "zpwalk/generate.hpp"

using namespace zpwalk;

namespace {

const FieldModulus p3(3);
const Hypergraph triangle(3, {{0, 1}, {0, 2}, {1, 2}});

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::UsageError;
}

State random_state(std::mt19937_64& rng, std::size_t n, std::uint64_t p) {
    State w(n);
    for (auto& x : w) x = rng() % p;
    return w;
}

}  // namespace

TEST_CASE("system of the two-edge triangle") {
    const auto rs = build_system(triangle, p3, {1, 1, 1}, {2, 2, 2});
    CHECK(rs.system.rows() == 3);
    CHECK(rs.system.cols() == 6);
    CHECK(gaussian_solve(rs.system).solvable);
    ResidueVector x(6, 0);
    x[*rs.variable_index(0, 1)] = 2;
    x[*rs.variable_index(1, 2)] = 2;
    CHECK(rs.system.satisfied_by(x));
    CHECK_FALSE(rs.variable_index(0, 2));
}

TEST_CASE("row layout") {
    const Hypergraph g(5, {{0, 1, 2}, {2, 3, 4}});
    const State w{1, 2, 0, 1, 2};
    const auto same = build_system(g, p3, w, w);
    for (std::size_t r = 0; r < same.system.rows(); ++r) CHECK(same.system.rhs(r) == 0);

    // single edge: row i reads x_i - sum of the others = w1(i) - w2(i)
    const Hypergraph edge(4, {{0, 1, 2, 3}});
    const auto rs = build_system(edge, p3, {1, 0, 2, 0}, {0, 2, 2, 1});
    const State rhs{1, 1, 0, 2};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rs.system.rhs(i) == rhs[i]);
        for (std::size_t j = 0; j < 4; ++j) CHECK(rs.system.at(i, j) == (i == j ? 1 : 2));
    }

    // a solution counts moves
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const State a = random_state(rng, 5, 3);
        ResidueVector x(6);
        for (auto& v : x) v = rng() % 3;
        const auto sys = build_system(g, p3, a, a);
        const State delta = state_change(g, p3, sys, x);
        State b(5);
        for (std::size_t v = 0; v < 5; ++v) b[v] = p3.add(a[v], delta[v]);
        CHECK(build_system(g, p3, a, b).system.satisfied_by(x));
    }
}

TEST_CASE("reachability examples") {
    const Hypergraph three(3, {{0, 1, 2}});
    DecisionOptions alg;
    alg.mode = Mode::Algebraic;
    auto d = decide_reachability(three, p3, {1, 1, 1}, {0, 0, 0}, alg);
    CHECK(d.answer);
    CHECK(d.method == Method::Algebraic);
    REQUIRE(std::holds_alternative<ResidueVector>(d.certificate));
    CHECK(build_system(three, p3, {1, 1, 1}, {0, 0, 0}).system.satisfied_by(std::get<ResidueVector>(d.certificate)));

    CHECK(code_of([&] { decide_reachability(triangle, p3, {1, 1, 1}, {2, 2, 2}, alg); }) == ErrorCode::NotGood);
    DecisionOptions oracle;
    oracle.mode = Mode::Oracle;
    CHECK_FALSE(decide_reachability(triangle, p3, {1, 1, 1}, {2, 2, 2}, oracle).answer);
    CHECK(system_solvable(triangle, p3, {1, 1, 1}, {2, 2, 2}));

    CHECK(decide_reachability(triangle, p3, {1, 2, 0}, {1, 2, 0}, oracle).answer);
    CHECK(decide_reachability(three, p3, {2, 0, 1}, {2, 0, 1}).answer);

    const auto both = decide_reachability(three, p3, {1, 0, 0}, {0, 1, 1});
    CHECK(both.answer);
    CHECK(both.oracle_answer == true);

    const auto zero = decide_reachability(three, p3, {0, 0, 0}, {1, 0, 0}, alg);
    CHECK_FALSE(zero.answer);
    CHECK(decide_reachability(three, p3, {0, 0, 0}, {0, 0, 0}, alg).answer);

    CHECK(code_of([&] { decide_reachability(three, FieldModulus(4), {1, 0, 0}, {0, 1, 1}, alg); }) ==
          ErrorCode::InvalidModulus);
    CHECK(code_of([&] { decide_reachability(three, FieldModulus(2), {1, 0, 0}, {0, 1, 1}, alg); }) ==
          ErrorCode::InvalidModulus);
}

TEST_CASE("the all p-1 target has no predecessor") {
    const Hypergraph five(5, {{0, 1, 2, 3, 4}});
    const State w1{1, 0, 0, 0, 0};
    const State top{2, 2, 2, 2, 2};
    REQUIRE(system_solvable(five, p3, w1, top));
    CHECK_FALSE(ref::reachable(five.edges(), 3, w1, top));
    const auto d = decide_reachability(five, p3, w1, top);
    CHECK_FALSE(d.answer);
    CHECK(std::holds_alternative<NoPredecessor>(d.certificate));
}

TEST_CASE("necessary-only filter") {
    DecisionOptions opts;
    opts.mode = Mode::Algebraic;
    opts.necessary_only = true;
    // solvable but unreachable: the filter cannot tell
    REQUIRE_FALSE(ref::reachable(triangle.edges(), 3, {1, 0, 0}, {0, 2, 2}));
    const auto d = decide_reachability(triangle, p3, {1, 0, 0}, {0, 2, 2}, opts);
    CHECK(d.answer);
    CHECK_FALSE(d.conclusive);
    const auto top = decide_reachability(triangle, p3, {1, 1, 1}, {2, 2, 2}, opts);
    CHECK_FALSE(top.answer);
    CHECK(top.conclusive);
    const auto no = decide_reachability(triangle, p3, {1, 1, 1}, {1, 1, 2}, opts);
    CHECK_FALSE(no.answer);
    CHECK(no.conclusive);
}

TEST_CASE("recurrence examples") {
    const Hypergraph five(5, {{0, 1, 2, 3, 4}});
    const Hypergraph three(3, {{0, 1, 2}});
    CHECK(decide_recurrence(five, p3, {1, 0, 0, 0, 0}, {0, 1, 1, 1, 1}).answer);
    for (const State& w2 : {State{1, 1, 1}, State{0, 1, 1}, State{2, 2, 0}}) {
        CHECK_FALSE(decide_recurrence(three, p3, {1, 1, 1}, w2).answer);
    }
    CHECK(decide_recurrence(three, p3, {1, 1, 1}, {0, 0, 0}).answer);
    CHECK_FALSE(decide_recurrence(five, p3, {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}).answer);
}

TEST_CASE("classification examples") {
    const Hypergraph five(5, {{0, 1, 2, 3, 4}});
    const Hypergraph three(3, {{0, 1, 2}});
    CHECK(classify_state(three, p3, {0, 0, 0}).state_class == StateClass::RecurrentOrInaccessible);
    CHECK(classify_state(three, p3, {1, 1, 1}).state_class == StateClass::Transient);
    CHECK(classify_state(five, p3, {1, 0, 0, 0, 0}).state_class == StateClass::RecurrentOrInaccessible);
    CHECK(classify_state(five, p3, {1, 2, 0, 0, 0}).state_class == StateClass::Transient);
}

TEST_CASE("Both mode matches brute force on small good graphs") {
    const std::vector<std::pair<Hypergraph, std::uint64_t>> cases{
        {Hypergraph(3, {{0, 1, 2}}), 3}, {Hypergraph(4, {{0, 1, 2, 3}}), 3}, {Hypergraph(3, {{0, 1, 2}}), 5},
        {Hypergraph(5, {{0, 1, 2}, {2, 3, 4}}), 3}};
    for (const auto& [g, p] : cases) {
        const FieldModulus f(p);
        std::vector<State> states;
        ref::for_each_state(g.vertex_count(), p, [&](const ref::Vec& w) { states.push_back(w); });
        for (const auto& a : states) {
            const auto orbit = ref::orbit(g.edges(), p, a);
            for (const auto& b : states) {
                const bool reach = orbit.count(b) > 0;
                REQUIRE(decide_reachability(g, f, a, b).answer == reach);
                if (g.vertex_count() <= 4) REQUIRE(decide_recurrence(g, f, a, b).answer == ref::recurrent(g.edges(), p, a, b));
            }
        }
    }
}

TEST_CASE("linear invariants agree with elimination") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::size_t m = 1 + seed % 4;
        const auto g = gen_good_hypergraph(2 * m + 1 + seed % 3, m, seed);
        for (std::uint64_t p : {3, 5, 7}) {
            const FieldModulus f(p);
            const LinearInvariants inv(g, f);
            for (int t = 0; t < 40; ++t) {
                const State a = random_state(rng, g.vertex_count(), p);
                const State b = random_state(rng, g.vertex_count(), p);
                CHECK(inv.solvable(a, b) == system_solvable(g, f, a, b));
                CHECK(inv.solvable(a, a));
            }
        }
    }
}

TEST_CASE("differences of solutions solve the connecting system") {
    std::mt19937_64 rng(9);
    const auto g = gen_good_hypergraph(7, 3, 4);
    const FieldModulus f(5);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 60; ++t) {
        const State w1 = random_state(rng, 7, 5);
        const State w2 = random_state(rng, 7, 5);
        const State w3 = random_state(rng, 7, 5);
        const auto s2 = gaussian_solve(build_system(g, f, w1, w2).system);
        const auto s1 = gaussian_solve(build_system(g, f, w1, w3).system);
        if (!s1.solvable || !s2.solvable) continue;
        ++checked;
        ResidueVector y(s2.particular.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = f.sub(s2.particular[i], s1.particular[i]);
        CHECK(build_system(g, f, w3, w2).system.satisfied_by(y));
    }
    CHECK(checked >= 20);
}

TEST_CASE("necessity holds on graphs that are not good") {
    const std::vector<std::pair<Hypergraph, std::uint64_t>> cases{
        {triangle, 3}, {Hypergraph(4, {{0, 1}, {1, 2, 3}}), 3}, {Hypergraph(4, {{0, 1, 2}, {1, 2, 3}}), 3},
        {triangle, 5}};
    std::size_t divergences = 0;
    for (const auto& [g, p] : cases) {
        const FieldModulus f(p);
        std::vector<State> states;
        ref::for_each_state(g.vertex_count(), p, [&](const ref::Vec& w) { states.push_back(w); });
        for (const auto& a : states) {
            const auto orbit = ref::orbit(g.edges(), p, a);
            for (const auto& b : states) {
                const bool solvable = system_solvable(g, f, a, b);
                if (orbit.count(b)) REQUIRE(solvable);
                if (solvable && !orbit.count(b)) ++divergences;
            }
        }
    }
    CHECK(divergences > 0);
}

TEST_CASE("mode parsing") {
    CHECK(parse_mode("algebraic") == Mode::Algebraic);
    CHECK(parse_mode("oracle") == Mode::Oracle);
    CHECK(parse_mode("both") == Mode::Both);
    CHECK(code_of([] { parse_mode("fast"); }) == ErrorCode::UsageError);
}
