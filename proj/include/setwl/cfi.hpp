#ifndef SETWL_CFI_HPP
#define SETWL_CFI_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "setwl/graph.hpp"

namespace setwl {

// Gadget expansion of the complete base graph on k nodes. Every base node v
// becomes the group S_v = { v^X | X subset of the edges at v }, every base
// edge e becomes the pair S_e = { e^0, e^1 }. A vertex v^X is adjacent to
// e^1 when e is in X and to e^0 when it is not; e^0 and e^1 are adjacent.
// All of S_v shares one color, all of S_e another.
struct CfiVertex {
    bool is_edge_vertex = false;
    int base_node = -1;   // v, for node vertices
    std::uint32_t subset = 0;  // X as a bitmask over the edges at v, ascending edge index
    int base_edge = -1;   // e, for edge vertices
    int bit = 0;          // i of e^i
};

struct CfiGraph {
    int k = 0;
    ColoredGraph graph;
    std::vector<CfiVertex> labels;               // aligned with vertex ids
    std::vector<std::pair<Node, Node>> base_edges;  // edges of the base graph, lexicographic
};

// vertex count k(k-1) + k * 2^(k-1) must stay within this cap
inline constexpr int kCfiVertexGuard = 100000;

CfiGraph cfi_expand(int k);

// Induced subgraph keeping all edge vertices and only the v^X with |X|
// even (v outside T) or odd (v inside T).
CfiGraph cfi_subgraph(int k, const std::vector<int>& t_nodes);

// The canonical non-isomorphic pair: T empty versus T = {first base node}.
std::pair<CfiGraph, CfiGraph> cfi_pair(int k);

// The automorphism of the full expansion that flips exactly the edge
// gadgets in F: e^i -> e^(1-i) for e in F, v^X -> v^(X xor (F at v)).
std::vector<Node> cfi_flip_map(int k, const std::vector<std::pair<Node, Node>>& flip_edges);

} // namespace setwl

#endif
