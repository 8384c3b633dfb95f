#ifndef ZPWALK_GENERATE_HPP
#define ZPWALK_GENERATE_HPP

#include <cstdint>
#include <vector>

#include "zpwalk/hypergraph.hpp"

namespace zpwalk {

/// A random good hypergraph with n vertices and m edges. The same seed
/// always gives the same hypergraph. Raises Infeasible when no attempt
/// succeeds (for example n = 3, m = 2).
Hypergraph gen_good_hypergraph(std::size_t n, std::size_t m, std::uint64_t seed);

/// Every good hypergraph with at most max_n vertices and at most max_m
/// edges, one per isomorphism class, ordered by (n, m, edges).
std::vector<Hypergraph> enumerate_good_hypergraphs(std::size_t max_n, std::size_t max_m);

/// Canonical form under vertex relabelling: the lexicographically least
/// sorted edge list.
std::vector<std::vector<Vertex>> canonical_edges(const Hypergraph& g);

}  // namespace zpwalk

#endif  // ZPWALK_GENERATE_HPP
