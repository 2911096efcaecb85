#ifndef SETWL_ORACLE_HPP
#define SETWL_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "setwl/graph.hpp"

namespace setwl {

// Exact color- and adjacency-preserving isomorphism test by backtracking,
// for graphs with at most kIsoMaxNodes nodes. Candidates are ordered by
// (color, degree) so mismatching branches die early.
inline constexpr int kIsoMaxNodes = 16;
bool brute_force_isomorphic(const ColoredGraph& a, const ColoredGraph& b);

// All subsets of size 1..k whose induced subgraph has at most c connected
// components, by direct subset enumeration. Ground truth for the
// supergraph builder; deliberately independent of it.
std::vector<NodeSet> enumerate_kc_sets(const ColoredGraph& g, int k, int c);

enum class Pattern { Triangle, TailedTriangle, Star3, Cycle4 };

// Subgraph occurrence count (not induced); each unordered occurrence
// counted once. Exhaustive enumeration over vertex subsets, n <= 64.
std::uint64_t count_pattern(const ColoredGraph& g, Pattern pattern);

} // namespace setwl

#endif
