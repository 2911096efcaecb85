#ifndef SETWL_SUPERGRAPH_HPP
#define SETWL_SUPERGRAPH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "setwl/graph.hpp"

namespace setwl {

// One supernode reference: layer index (0-based, sets of size layer+1)
// and position within that layer.
struct SetRef {
    int layer = 0;
    int index = 0;

    bool operator==(const SetRef&) const = default;
    auto operator<=>(const SetRef&) const = default;
};

// Bipartite edge between consecutive layers: parent set at layers[m],
// child = parent + {added} at layers[m+1].
struct BipartiteEdge {
    int parent = 0;
    int child = 0;
    Node added = 0;
};

struct SuperLayer {
    std::vector<NodeSet> sets;    // unique, ascending lexicographic
    std::vector<int> components;  // component count of the induced subgraph
};

// Layered supergraph of all (k,c)(<=)-sets: sets of size 1..k whose
// induced subgraph has at most c connected components, plus the bipartite
// superset relations between consecutive layers. Construction stops at
// layer min(k, n); statistics report missing layers as zero.
struct SuperGraph {
    int n = 0;
    int k = 0;
    int c = 0;
    std::vector<SuperLayer> layers;
    std::vector<std::vector<BipartiteEdge>> bipartite;  // gap m -> m+1 per layer m

    int layer_count() const { return static_cast<int>(layers.size()); }
    std::size_t total_sets() const;
    const NodeSet& set_at(SetRef ref) const { return layers[ref.layer].sets[ref.index]; }
    int components_at(SetRef ref) const { return layers[ref.layer].components[ref.index]; }
};

// For every multi-component set, the single-component sets its induced
// subgraph decomposes into. Single-component sets are absent.
struct ComponentMap {
    std::map<SetRef, std::vector<SetRef>> parts;
};

struct SupergraphStats {
    std::vector<std::uint64_t> layer_sets;       // size k, absent layers zero
    std::vector<std::uint64_t> bipartite_edges;  // size k-1
    std::uint64_t total_sets = 0;
    std::uint64_t total_edges = 0;
};

// One step of the layer construction: all child sets parent + {x} with x in
// the 1-hop neighborhood of the parent's induced subgraph (component count
// carried over), plus, when the parent has fewer than c components, every
// outside x (component count + 1). Duplicate children are merged keeping
// the smallest component count; all generating triples become edges.
struct LayerExtension {
    SuperLayer next;
    std::vector<BipartiteEdge> edges;
};
LayerExtension extend_layer(const ColoredGraph& g, const SuperLayer& layer, int c);

SuperGraph build_supergraph(const ColoredGraph& g, int k, int c);
ComponentMap build_component_map(const SuperGraph& sg);
SupergraphStats supergraph_stats(const SuperGraph& sg);

// Exact supernode/edge counts of the dense structures on n nodes:
// set-based supernodes sum C(n,i) for i=1..k, bipartite edges
// sum i*C(n,i) for i=2..k, versus the k-tuple test's n^k supernodes and
// k*n^(k+1)/2 edges. Computed in 128-bit arithmetic; throws on overflow.
struct DenseCounts {
    unsigned __int128 supernodes = 0;
    unsigned __int128 bipartite_edges = 0;
    unsigned __int128 kwl_nodes = 0;
    unsigned __int128 kwl_edges = 0;
    bool bound_checked = false;  // k <= n/2 branch
    bool bound_holds = false;    // sum C(n,i) <= C(n,k)*(n-k+1)/(n-2k+1)
};
DenseCounts dense_counts(int n, int k);

std::string u128_to_string(unsigned __int128 v);

} // namespace setwl

#endif
