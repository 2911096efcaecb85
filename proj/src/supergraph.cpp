#include "setwl/supergraph.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace setwl {

std::size_t SuperGraph::total_sets() const {
    std::size_t total = 0;
    for (const auto& layer : layers)
        total += layer.sets.size();
    return total;
}

LayerExtension extend_layer(const ColoredGraph& g, const SuperLayer& layer, int c) {
    int n = g.node_count();
    struct Gen {
        NodeSet set;
        int components;
        int parent;
        Node added;
    };
    std::vector<Gen> generated;
    std::vector<bool> hop1(n);

    for (int pi = 0; pi < static_cast<int>(layer.sets.size()); ++pi) {
        const NodeSet& s = layer.sets[pi];
        int comps = layer.components[pi];
        assert(comps <= c);
        std::fill(hop1.begin(), hop1.end(), false);
        for (Node v : s)
            for (Node w : g.neighbors(v))
                hop1[w] = true;
        for (Node v : s)
            hop1[v] = false;

        for (Node x = 0; x < n; ++x) {
            if (s.contains(x))
                continue;
            if (hop1[x])
                generated.push_back({s.with_node(x), comps, pi, x});
            else if (comps < c)
                generated.push_back({s.with_node(x), comps + 1, pi, x});
        }
    }

    // merge duplicates; a child reached through a component-merging parent
    // carries an overcount, the minimum across parents is the true count
    std::sort(generated.begin(), generated.end(), [](const Gen& a, const Gen& b) {
        if (a.set != b.set)
            return a.set < b.set;
        return std::pair(a.parent, a.added) < std::pair(b.parent, b.added);
    });
    LayerExtension out;
    for (size_t i = 0; i < generated.size(); ++i) {
        if (i == 0 || generated[i].set != generated[i - 1].set) {
            out.next.sets.push_back(generated[i].set);
            out.next.components.push_back(generated[i].components);
        } else {
            out.next.components.back() =
                std::min(out.next.components.back(), generated[i].components);
        }
        out.edges.push_back(
            {generated[i].parent, static_cast<int>(out.next.sets.size()) - 1, generated[i].added});
    }
#ifndef NDEBUG
    for (size_t i = 0; i < out.next.sets.size(); ++i)
        assert(out.next.components[i] == connected_components(g, out.next.sets[i]).count);
#endif
    return out;
}

SuperGraph build_supergraph(const ColoredGraph& g, int k, int c) {
    if (k < 1 || c < 1 || c > k)
        throw std::invalid_argument("supergraph: require 1 <= c <= k");
    SuperGraph sg;
    sg.n = g.node_count();
    sg.k = k;
    sg.c = c;
    if (sg.n == 0)
        return sg;

    SuperLayer singletons;
    for (Node v = 0; v < sg.n; ++v) {
        singletons.sets.push_back(NodeSet({v}));
        singletons.components.push_back(1);
    }
    sg.layers.push_back(std::move(singletons));

    for (int m = 1; m < std::min(k, sg.n); ++m) {
        LayerExtension ext = extend_layer(g, sg.layers.back(), c);
        if (ext.next.sets.empty())
            break;
        sg.layers.push_back(std::move(ext.next));
        sg.bipartite.push_back(std::move(ext.edges));
    }
    return sg;
}

ComponentMap build_component_map(const SuperGraph& sg) {
    ComponentMap cm;
    // child lookup per gap: (parent index, added node) -> child index
    std::vector<std::unordered_map<std::uint64_t, int>> child_of(sg.bipartite.size());
    auto edge_key = [](int parent, Node added) {
        return (static_cast<std::uint64_t>(parent) << 32) | static_cast<std::uint32_t>(added);
    };
    for (size_t gap = 0; gap < sg.bipartite.size(); ++gap)
        for (const auto& e : sg.bipartite[gap])
            child_of[gap][edge_key(e.parent, e.added)] = e.child;

    for (int layer = 1; layer < sg.layer_count(); ++layer) {
        const auto& gap = sg.bipartite[layer - 1];
        std::vector<std::vector<const BipartiteEdge*>> incoming(sg.layers[layer].sets.size());
        for (const auto& e : gap)
            incoming[e.child].push_back(&e);

        for (int idx = 0; idx < static_cast<int>(sg.layers[layer].sets.size()); ++idx) {
            int owner_comps = sg.layers[layer].components[idx];
            if (owner_comps < 2)
                continue;

            // parent with the most components that does not exceed the
            // owner's count; one of count or count-1 always exists
            const BipartiteEdge* chosen = nullptr;
            int chosen_comps = -1;
            for (const BipartiteEdge* e : incoming[idx]) {
                int pc = sg.layers[layer - 1].components[e->parent];
                if (pc <= owner_comps && pc > chosen_comps) {
                    chosen = e;
                    chosen_comps = pc;
                }
            }
            assert(chosen != nullptr);
            assert(chosen_comps == owner_comps || chosen_comps == owner_comps - 1);

            SetRef parent_ref{layer - 1, chosen->parent};
            std::vector<SetRef> parent_parts;
            if (sg.layers[layer - 1].components[chosen->parent] == 1) {
                parent_parts = {parent_ref};
            } else {
                parent_parts = cm.parts.at(parent_ref);
            }

            std::vector<SetRef> parts;
            if (chosen_comps == owner_comps) {
                // added node extends exactly one part
                for (SetRef p : parent_parts) {
                    auto it = child_of[p.layer].find(edge_key(p.index, chosen->added));
                    if (it != child_of[p.layer].end() &&
                        sg.layers[p.layer + 1].components[it->second] == 1)
                        parts.push_back(SetRef{p.layer + 1, it->second});
                    else
                        parts.push_back(p);
                }
            } else {
                // added node is a fresh singleton component; singleton index
                // equals the node id in layer 0
                parts = parent_parts;
                parts.push_back(SetRef{0, chosen->added});
            }
            cm.parts[SetRef{layer, idx}] = std::move(parts);
        }
    }
    return cm;
}

SupergraphStats supergraph_stats(const SuperGraph& sg) {
    SupergraphStats stats;
    stats.layer_sets.assign(std::max(sg.k, 1), 0);
    stats.bipartite_edges.assign(std::max(sg.k - 1, 0), 0);
    for (int m = 0; m < sg.layer_count(); ++m) {
        stats.layer_sets[m] = sg.layers[m].sets.size();
        stats.total_sets += sg.layers[m].sets.size();
    }
    for (size_t gap = 0; gap < sg.bipartite.size(); ++gap) {
        stats.bipartite_edges[gap] = sg.bipartite[gap].size();
        stats.total_edges += sg.bipartite[gap].size();
    }
    return stats;
}

namespace {

unsigned __int128 checked_mul(unsigned __int128 a, unsigned __int128 b) {
    if (a != 0 && b > static_cast<unsigned __int128>(-1) / a)
        throw std::overflow_error("dense_counts: 128-bit overflow");
    return a * b;
}

unsigned __int128 checked_add(unsigned __int128 a, unsigned __int128 b) {
    unsigned __int128 s = a + b;
    if (s < a)
        throw std::overflow_error("dense_counts: 128-bit overflow");
    return s;
}

// C(n, r) via the multiplicative formula, exact at every step
unsigned __int128 binomial(int n, int r) {
    if (r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    unsigned __int128 result = 1;
    for (int i = 1; i <= r; ++i) {
        result = checked_mul(result, static_cast<unsigned>(n - r + i));
        result /= static_cast<unsigned>(i);
    }
    return result;
}

unsigned __int128 ipow(int base, int exp) {
    unsigned __int128 result = 1;
    for (int i = 0; i < exp; ++i)
        result = checked_mul(result, static_cast<unsigned>(base));
    return result;
}

} // namespace

DenseCounts dense_counts(int n, int k) {
    if (n < 1 || k < 1 || k > n)
        throw std::invalid_argument("dense_counts: require 1 <= k <= n");
    DenseCounts out;
    for (int i = 1; i <= k; ++i)
        out.supernodes = checked_add(out.supernodes, binomial(n, i));
    for (int i = 2; i <= k; ++i)
        out.bipartite_edges =
            checked_add(out.bipartite_edges, checked_mul(static_cast<unsigned>(i), binomial(n, i)));
    out.kwl_nodes = ipow(n, k);
    out.kwl_edges = checked_mul(static_cast<unsigned>(k), ipow(n, k + 1)) / 2;

    if (2 * k <= n) {
        out.bound_checked = true;
        // sum_{i<=k} C(n,i) * (n-2k+1) <= C(n,k) * (n-k+1), exactly
        unsigned __int128 lhs = checked_mul(out.supernodes, static_cast<unsigned>(n - 2 * k + 1));
        unsigned __int128 rhs = checked_mul(binomial(n, k), static_cast<unsigned>(n - k + 1));
        out.bound_holds = lhs <= rhs;
    }
    return out;
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0)
        return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace setwl
