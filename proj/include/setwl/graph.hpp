#ifndef SETWL_GRAPH_HPP
#define SETWL_GRAPH_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace setwl {

using Node = int;

// Undirected simple graph with one integer color per node.
// Adjacency is kept as sorted neighbor lists; self-loops and duplicate
// edges are rejected at construction.
class ColoredGraph {
public:
    ColoredGraph() = default;
    ColoredGraph(int node_count, const std::vector<std::pair<Node, Node>>& edges,
                 std::vector<int> colors = {});

    int node_count() const { return n_; }
    int edge_count() const { return edge_count_; }
    bool has_edge(Node u, Node v) const;
    const std::vector<Node>& neighbors(Node v) const { return adj_[v]; }
    int degree(Node v) const { return static_cast<int>(adj_[v].size()); }
    int color(Node v) const { return colors_[v]; }
    const std::vector<int>& colors() const { return colors_; }

    // All edges as (u, v) with u < v, sorted.
    std::vector<std::pair<Node, Node>> edges() const;

    bool operator==(const ColoredGraph& other) const = default;

private:
    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<Node>> adj_;
    std::vector<int> colors_;
};

// Duplicate-free node ids in strictly ascending order, the canonical
// representation of an m-set (m >= 1 wherever a set enters the supergraph;
// the empty set is allowed as a value for convenience).
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<Node> members);

    static NodeSet from_unsorted(std::vector<Node> members);

    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    Node operator[](int i) const { return members_[i]; }
    const std::vector<Node>& members() const { return members_; }
    bool contains(Node v) const;

    // New set with v inserted (v must not be a member).
    NodeSet with_node(Node v) const;
    // New set with the i-th member removed.
    NodeSet without_index(int i) const;

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool operator==(const NodeSet&) const = default;
    auto operator<=>(const NodeSet&) const = default;

private:
    std::vector<Node> members_;
};

// Partition of a node set into the connected components of its induced
// subgraph. part[i] is the component index of the i-th set member,
// numbered 0..count-1 by first appearance.
struct ComponentPartition {
    int count = 0;
    std::vector<int> part;
};

enum class GraphFormat { EdgeList, Graph6 };

// Edge-list format: "n m", then m lines "u v", optional trailing line
// "colors c0 c1 ... c(n-1)". Graph6: standard ASCII encoding, n <= 62.
ColoredGraph load_graph(std::string_view data, GraphFormat format);
ColoredGraph load_graph_file(const std::string& path);

std::string write_edge_list(const ColoredGraph& g);

ColoredGraph induced_subgraph(const ColoredGraph& g, const NodeSet& s);
ComponentPartition connected_components(const ColoredGraph& g, const NodeSet& s);

// Relabeled copy: node v becomes perm[v], colors carried along.
ColoredGraph permute_graph(const ColoredGraph& g, const std::vector<Node>& perm);

} // namespace setwl

#endif
