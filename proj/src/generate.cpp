#include "zpwalk/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "zpwalk/error.hpp"

namespace zpwalk {

namespace {

constexpr int kAttempts = 2000;

std::optional<Hypergraph> attempt(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::shuffle(order.begin(), order.end(), rng);

    // fresh[i]: vertices that edge i introduces. Edge 0 introduces at least 3.
    std::vector<std::size_t> fresh(m, 0);
    if (n < 3) return std::nullopt;
    fresh[0] = m == 1 ? n : std::uniform_int_distribution<std::size_t>(3, std::min<std::size_t>(n, 5))(rng);
    std::size_t left = n - fresh[0];
    for (std::size_t r = 0; r < left; ++r) {
        fresh[std::uniform_int_distribution<std::size_t>(1, m - 1)(rng)] += 1;
    }

    std::vector<std::vector<Vertex>> edges;
    std::vector<std::vector<bool>> shared(n, std::vector<bool>(n, false));
    std::size_t next = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Vertex> edge(order.begin() + static_cast<std::ptrdiff_t>(next),
                                 order.begin() + static_cast<std::ptrdiff_t>(next + fresh[i]));
        const std::vector<Vertex> covered(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(next));
        next += fresh[i];
        if (i > 0) {
            std::size_t want = std::max<std::size_t>(1, fresh[i] >= 3 ? 1 : 3 - fresh[i]);
            if (std::bernoulli_distribution(0.25)(rng)) ++want;
            std::vector<Vertex> pool = covered;
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<Vertex> picked;
            for (Vertex v : pool) {
                if (picked.size() == want) break;
                if (std::none_of(picked.begin(), picked.end(), [&](Vertex u) { return shared[u][v]; })) {
                    picked.push_back(v);
                }
            }
            if (picked.size() < want) return std::nullopt;
            edge.insert(edge.end(), picked.begin(), picked.end());
        }
        if (edge.size() < 3) return std::nullopt;
        for (Vertex a : edge) {
            for (Vertex b : edge) shared[a][b] = true;
        }
        std::sort(edge.begin(), edge.end());
        edges.push_back(std::move(edge));
    }
    Hypergraph g(n, edges);
    if (!is_good(g).good) return std::nullopt;
    return g;
}

bool next_combination(std::vector<Vertex>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

Hypergraph gen_good_hypergraph(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m == 0) {
        if (n == 1) return Hypergraph(1, {});
        throw Error(ErrorCode::Infeasible, "without edges only a single vertex is connected");
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < kAttempts; ++i) {
        if (auto g = attempt(n, m, rng)) return *g;
    }
    throw Error(ErrorCode::Infeasible,
                "no good hypergraph found with " + std::to_string(n) + " vertices and " + std::to_string(m) + " edges");
}

std::vector<std::vector<Vertex>> canonical_edges(const Hypergraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::vector<std::vector<Vertex>> best;
    bool first = true;
    do {
        std::vector<std::vector<Vertex>> mapped;
        for (const auto& e : g.edges()) {
            std::vector<Vertex> m;
            for (Vertex v : e) m.push_back(perm[v]);
            std::sort(m.begin(), m.end());
            mapped.push_back(std::move(m));
        }
        std::sort(mapped.begin(), mapped.end());
        if (first || mapped < best) {
            best = std::move(mapped);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Hypergraph> enumerate_good_hypergraphs(std::size_t max_n, std::size_t max_m) {
    if (max_n > 8) throw Error(ErrorCode::EnumerationTooLarge, "enumeration is limited to 8 vertices", max_n);
    std::vector<Hypergraph> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<std::vector<Vertex>> candidates;
        for (std::size_t k = 3; k <= n; ++k) {
            std::vector<Vertex> c(k);
            std::iota(c.begin(), c.end(), Vertex{0});
            do {
                candidates.push_back(c);
            } while (next_combination(c, n));
        }
        std::set<std::vector<std::vector<Vertex>>> seen;
        // Edge sets are chosen as increasing index sequences into candidates.
        for (std::size_t m = 0; m <= max_m; ++m) {
            if (m > candidates.size()) break;
            std::vector<Vertex> pick(m);
            std::iota(pick.begin(), pick.end(), Vertex{0});
            do {
                std::vector<std::vector<Vertex>> edges;
                for (auto i : pick) edges.push_back(candidates[i]);
                Hypergraph g(n, edges);
                if (!is_good(g).good) continue;
                auto key = canonical_edges(g);
                if (!seen.insert(key).second) continue;
                out.emplace_back(n, std::move(key));
            } while (m > 0 && next_combination(pick, candidates.size()));
        }
    }
    return out;
}

}  // namespace zpwalk
