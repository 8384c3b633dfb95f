// Small independent reference implementations used only by the tests.
#ifndef ZPWALK_TESTS_SUPPORT_HPP
#define ZPWALK_TESTS_SUPPORT_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <vector>

namespace ref {

using Vec = std::vector<std::uint64_t>;
using Edges = std::vector<std::vector<std::size_t>>;

inline Vec step(const Edges& edges, std::uint64_t p, Vec w, std::size_t v, std::size_t e) {
    for (auto u : edges[e]) w[u] = u == v ? (w[u] + p - 1) % p : (w[u] + 1) % p;
    return w;
}

inline std::set<Vec> orbit(const Edges& edges, std::uint64_t p, const Vec& start) {
    std::set<Vec> seen{start};
    std::deque<Vec> queue{start};
    while (!queue.empty()) {
        Vec w = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            for (auto v : edges[e]) {
                if (w[v] == 0) continue;
                Vec next = step(edges, p, w, v, e);
                if (seen.insert(next).second) queue.push_back(next);
            }
        }
    }
    return seen;
}

inline bool reachable(const Edges& edges, std::uint64_t p, const Vec& a, const Vec& b) {
    return orbit(edges, p, a).count(b) > 0;
}

// The literal definition: b is reached from every state reachable from a.
inline bool recurrent(const Edges& edges, std::uint64_t p, const Vec& a, const Vec& b) {
    const auto o = orbit(edges, p, a);
    if (!o.count(b)) return false;
    for (const auto& c : o) {
        if (!orbit(edges, p, c).count(b)) return false;
    }
    return true;
}

inline void for_each_state(std::size_t n, std::uint64_t p, const std::function<void(const Vec&)>& f) {
    Vec w(n, 0);
    while (true) {
        f(w);
        std::size_t i = 0;
        while (i < n && ++w[i] == p) w[i++] = 0;
        if (i == n) return;
    }
}

inline bool has_predecessor(const Edges& edges, std::uint64_t p, std::size_t n, const Vec& target) {
    bool found = false;
    for_each_state(n, p, [&](const Vec& w) {
        if (found) return;
        for (std::size_t e = 0; e < edges.size() && !found; ++e) {
            for (auto v : edges[e]) {
                if (w[v] != 0 && step(edges, p, w, v, e) == target) found = true;
            }
        }
    });
    return found;
}

// Does some x in Z_p^cols satisfy A x = b? Rows are dense.
inline bool solvable(std::uint64_t p, const std::vector<Vec>& a, const Vec& b, std::size_t cols) {
    bool found = false;
    for_each_state(cols, p, [&](const Vec& x) {
        if (found) return;
        for (std::size_t r = 0; r < a.size(); ++r) {
            std::uint64_t s = 0;
            for (std::size_t c = 0; c < cols; ++c) s = (s + a[r][c] * x[c]) % p;
            if (s != b[r]) return;
        }
        found = true;
    });
    return found;
}

inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
    for (std::uint64_t b = 1; b < p; ++b) {
        if (a * b % p == 1) return b;
    }
    return 0;
}

}  // namespace ref

#endif
