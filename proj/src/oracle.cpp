#include "setwl/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace setwl {

namespace {

struct IsoSearch {
    const ColoredGraph& a;
    const ColoredGraph& b;
    std::vector<Node> order;   // nodes of a in assignment order
    std::vector<Node> image;   // image[v] = mapped node in b, -1 if unset
    std::vector<bool> taken;

    bool extend(size_t depth) {
        if (depth == order.size())
            return true;
        Node u = order[depth];
        for (Node w = 0; w < b.node_count(); ++w) {
            if (taken[w] || b.color(w) != a.color(u) || b.degree(w) != a.degree(u))
                continue;
            bool ok = true;
            for (size_t i = 0; i < depth && ok; ++i)
                ok = a.has_edge(u, order[i]) == b.has_edge(w, image[order[i]]);
            if (!ok)
                continue;
            image[u] = w;
            taken[w] = true;
            if (extend(depth + 1))
                return true;
            taken[w] = false;
            image[u] = -1;
        }
        return false;
    }
};

} // namespace

bool brute_force_isomorphic(const ColoredGraph& a, const ColoredGraph& b) {
    if (a.node_count() > kIsoMaxNodes || b.node_count() > kIsoMaxNodes)
        throw std::invalid_argument("isomorphism: graph exceeds node cap");
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;

    int n = a.node_count();
    // short-circuit on (color, degree) histograms
    auto signature = [](const ColoredGraph& g) {
        std::vector<std::pair<int, int>> sig(g.node_count());
        for (Node v = 0; v < g.node_count(); ++v)
            sig[v] = {g.color(v), g.degree(v)};
        std::sort(sig.begin(), sig.end());
        return sig;
    };
    if (signature(a) != signature(b))
        return false;

    IsoSearch search{a, b, {}, std::vector<Node>(n, -1), std::vector<bool>(n, false)};
    search.order.resize(n);
    std::iota(search.order.begin(), search.order.end(), 0);
    // rare (color, degree) classes first
    std::map<std::pair<int, int>, int> freq;
    for (Node v = 0; v < n; ++v)
        ++freq[{a.color(v), a.degree(v)}];
    std::stable_sort(search.order.begin(), search.order.end(), [&](Node x, Node y) {
        auto kx = std::make_pair(freq[{a.color(x), a.degree(x)}], a.color(x));
        auto ky = std::make_pair(freq[{a.color(y), a.degree(y)}], a.color(y));
        return kx < ky;
    });
    return search.extend(0);
}

std::vector<NodeSet> enumerate_kc_sets(const ColoredGraph& g, int k, int c) {
    int n = g.node_count();
    if (n > 20 || k > 5)
        throw std::invalid_argument("enumerate_kc_sets: beyond enumeration guard");
    if (k < 1 || c < 1 || c > k)
        throw std::invalid_argument("enumerate_kc_sets: invalid (k, c)");

    std::vector<NodeSet> out;
    std::vector<Node> current;
    // combinations in ascending lexicographic order per size
    auto recurse = [&](auto&& self, Node next, int remaining) -> void {
        if (remaining == 0) {
            NodeSet s(current);
            if (connected_components(g, s).count <= c)
                out.push_back(std::move(s));
            return;
        }
        for (Node v = next; v <= n - remaining; ++v) {
            current.push_back(v);
            self(self, v + 1, remaining - 1);
            current.pop_back();
        }
    };
    for (int m = 1; m <= std::min(k, n); ++m)
        recurse(recurse, 0, m);
    return out;
}

std::uint64_t count_pattern(const ColoredGraph& g, Pattern pattern) {
    int n = g.node_count();
    if (n > 64)
        throw std::invalid_argument("count_pattern: beyond enumeration guard");

    std::uint64_t count = 0;
    auto edge = [&](Node u, Node v) { return g.has_edge(u, v); };

    if (pattern == Pattern::Triangle) {
        for (Node i = 0; i < n; ++i)
            for (Node j = i + 1; j < n; ++j)
                for (Node l = j + 1; l < n; ++l)
                    if (edge(i, j) && edge(i, l) && edge(j, l))
                        ++count;
        return count;
    }

    // remaining patterns span exactly 4 vertices
    for (Node a = 0; a < n; ++a)
        for (Node b = a + 1; b < n; ++b)
            for (Node c = b + 1; c < n; ++c)
                for (Node d = c + 1; d < n; ++d) {
                    Node q[4] = {a, b, c, d};
                    switch (pattern) {
                    case Pattern::Star3:
                        // center + 3 leaves
                        for (int center = 0; center < 4; ++center) {
                            bool all = true;
                            for (int i = 0; i < 4; ++i)
                                if (i != center && !edge(q[center], q[i]))
                                    all = false;
                            if (all)
                                ++count;
                        }
                        break;
                    case Pattern::TailedTriangle:
                        // triangle on 3 of the vertices plus one tail edge
                        for (int tail = 0; tail < 4; ++tail) {
                            Node t[3];
                            int w = 0;
                            for (int i = 0; i < 4; ++i)
                                if (i != tail)
                                    t[w++] = q[i];
                            if (edge(t[0], t[1]) && edge(t[0], t[2]) && edge(t[1], t[2]))
                                for (int i = 0; i < 3; ++i)
                                    if (edge(q[tail], t[i]))
                                        ++count;
                        }
                        break;
                    case Pattern::Cycle4:
                        // three cyclic orders of 4 vertices up to rotation/reflection
                        if (edge(a, b) && edge(b, c) && edge(c, d) && edge(d, a))
                            ++count;
                        if (edge(a, b) && edge(b, d) && edge(d, c) && edge(c, a))
                            ++count;
                        if (edge(a, c) && edge(c, b) && edge(b, d) && edge(d, a))
                            ++count;
                        break;
                    case Pattern::Triangle:
                        break;
                    }
                }
    return count;
}

} // namespace setwl
