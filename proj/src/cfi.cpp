#include "setwl/cfi.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace setwl {

namespace {

void check_cfi_size(int k) {
    if (k < 3)
        throw std::invalid_argument("cfi: k must be at least 3");
    long long vertices = static_cast<long long>(k) * (k - 1) +
                         static_cast<long long>(k) * (1LL << (k - 1));
    if (vertices > kCfiVertexGuard)
        throw std::invalid_argument("cfi: size guard exceeded");
}

std::vector<std::pair<Node, Node>> base_edges_of(int k) {
    std::vector<std::pair<Node, Node>> edges;
    for (Node u = 0; u < k; ++u)
        for (Node v = u + 1; v < k; ++v)
            edges.emplace_back(u, v);
    return edges;
}

int edge_index(int k, Node u, Node v) {
    if (u > v)
        std::swap(u, v);
    if (u < 0 || v >= k || u == v)
        throw std::invalid_argument("cfi: not a base edge");
    // position of (u, v) in lexicographic edge order of the complete graph
    int before = u * (2 * k - u - 1) / 2;
    return before + (v - u - 1);
}

// edge indices incident to each base node, ascending
std::vector<std::vector<int>> incident_edges(int k) {
    std::vector<std::vector<int>> at(k);
    auto edges = base_edges_of(k);
    for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
        at[edges[ei].first].push_back(ei);
        at[edges[ei].second].push_back(ei);
    }
    return at;
}

} // namespace

CfiGraph cfi_expand(int k) {
    check_cfi_size(k);
    CfiGraph out;
    out.k = k;
    out.base_edges = base_edges_of(k);
    int edge_groups = static_cast<int>(out.base_edges.size());
    int group_size = 1 << (k - 1);
    int n = 2 * edge_groups + k * group_size;

    out.labels.resize(n);
    std::vector<int> colors(n);
    for (int ei = 0; ei < edge_groups; ++ei)
        for (int bit = 0; bit < 2; ++bit) {
            int id = 2 * ei + bit;
            out.labels[id] = CfiVertex{true, -1, 0, ei, bit};
            colors[id] = k + ei;
        }
    int v_base = 2 * edge_groups;
    for (Node v = 0; v < k; ++v)
        for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(group_size); ++mask) {
            int id = v_base + v * group_size + static_cast<int>(mask);
            out.labels[id] = CfiVertex{false, v, mask, -1, 0};
            colors[id] = v;
        }

    auto at = incident_edges(k);
    std::vector<std::pair<Node, Node>> edges;
    for (int ei = 0; ei < edge_groups; ++ei)
        edges.emplace_back(2 * ei, 2 * ei + 1);
    for (Node v = 0; v < k; ++v)
        for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(group_size); ++mask) {
            int id = v_base + v * group_size + static_cast<int>(mask);
            for (int j = 0; j < k - 1; ++j) {
                int ei = at[v][j];
                bool in_subset = (mask >> j) & 1;
                edges.emplace_back(id, 2 * ei + (in_subset ? 1 : 0));
            }
        }
    out.graph = ColoredGraph(n, edges, std::move(colors));
    return out;
}

CfiGraph cfi_subgraph(int k, const std::vector<int>& t_nodes) {
    CfiGraph full = cfi_expand(k);
    std::vector<bool> in_t(k, false);
    for (int v : t_nodes) {
        if (v < 0 || v >= k)
            throw std::invalid_argument("cfi: T contains an invalid base node");
        in_t[v] = true;
    }

    std::vector<Node> kept;
    for (Node id = 0; id < full.graph.node_count(); ++id) {
        const CfiVertex& label = full.labels[id];
        if (label.is_edge_vertex) {
            kept.push_back(id);
        } else {
            int parity = std::popcount(label.subset) & 1;
            if (parity == (in_t[label.base_node] ? 1 : 0))
                kept.push_back(id);
        }
    }

    CfiGraph out;
    out.k = k;
    out.base_edges = full.base_edges;
    out.graph = induced_subgraph(full.graph, NodeSet(kept));
    out.labels.reserve(kept.size());
    for (Node id : kept)
        out.labels.push_back(full.labels[id]);
    return out;
}

std::pair<CfiGraph, CfiGraph> cfi_pair(int k) {
    return {cfi_subgraph(k, {}), cfi_subgraph(k, {0})};
}

std::vector<Node> cfi_flip_map(int k, const std::vector<std::pair<Node, Node>>& flip_edges) {
    check_cfi_size(k);
    int edge_groups = k * (k - 1) / 2;
    int group_size = 1 << (k - 1);
    int n = 2 * edge_groups + k * group_size;

    std::vector<bool> flipped(edge_groups, false);
    for (auto [u, v] : flip_edges)
        flipped[edge_index(k, u, v)] = true;

    auto at = incident_edges(k);
    // per node, the mask of its incident edges that lie in F
    std::vector<std::uint32_t> flip_mask(k, 0);
    for (Node v = 0; v < k; ++v)
        for (int j = 0; j < k - 1; ++j)
            if (flipped[at[v][j]])
                flip_mask[v] |= 1u << j;

    std::vector<Node> perm(n);
    for (int ei = 0; ei < edge_groups; ++ei) {
        perm[2 * ei] = flipped[ei] ? 2 * ei + 1 : 2 * ei;
        perm[2 * ei + 1] = flipped[ei] ? 2 * ei : 2 * ei + 1;
    }
    int v_base = 2 * edge_groups;
    for (Node v = 0; v < k; ++v)
        for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(group_size); ++mask) {
            int id = v_base + v * group_size + static_cast<int>(mask);
            perm[id] = v_base + v * group_size + static_cast<int>(mask ^ flip_mask[v]);
        }
    return perm;
}

} // namespace setwl
