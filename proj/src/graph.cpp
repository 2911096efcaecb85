#include "setwl/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace setwl {

ColoredGraph::ColoredGraph(int node_count, const std::vector<std::pair<Node, Node>>& edges,
                           std::vector<int> colors)
    : n_(node_count), adj_(node_count >= 0 ? node_count : 0) {
    if (node_count < 0)
        throw std::invalid_argument("graph: negative node count");
    if (colors.empty()) {
        colors_.assign(n_, 0);
    } else {
        if (static_cast<int>(colors.size()) != n_)
            throw std::invalid_argument("graph: colors length does not equal node count");
        colors_ = std::move(colors);
    }
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("graph: node id out of range");
        if (u == v)
            throw std::invalid_argument("graph: self-loop");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw std::invalid_argument("graph: duplicate edge");
    }
    edge_count_ = static_cast<int>(edges.size());
}

bool ColoredGraph::has_edge(Node u, Node v) const {
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<Node, Node>> ColoredGraph::edges() const {
    std::vector<std::pair<Node, Node>> out;
    out.reserve(edge_count_);
    for (Node u = 0; u < n_; ++u)
        for (Node v : adj_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

NodeSet::NodeSet(std::vector<Node> members) : members_(std::move(members)) {
    for (size_t i = 1; i < members_.size(); ++i)
        if (members_[i - 1] >= members_[i])
            throw std::invalid_argument("node set: members not strictly ascending");
}

NodeSet NodeSet::from_unsorted(std::vector<Node> members) {
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw std::invalid_argument("node set: duplicate member");
    NodeSet s;
    s.members_ = std::move(members);
    return s;
}

bool NodeSet::contains(Node v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

NodeSet NodeSet::with_node(Node v) const {
    NodeSet out;
    out.members_.reserve(members_.size() + 1);
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it != members_.end() && *it == v)
        throw std::invalid_argument("node set: member already present");
    out.members_.insert(out.members_.end(), members_.begin(), it);
    out.members_.push_back(v);
    out.members_.insert(out.members_.end(), it, members_.end());
    return out;
}

NodeSet NodeSet::without_index(int i) const {
    NodeSet out;
    out.members_ = members_;
    out.members_.erase(out.members_.begin() + i);
    return out;
}

namespace {

void check_member_range(const ColoredGraph& g, const NodeSet& s) {
    if (!s.empty() && (s[0] < 0 || s[s.size() - 1] >= g.node_count()))
        throw std::out_of_range("node set member out of range");
}

ColoredGraph parse_edge_list(std::string_view data) {
    std::istringstream in{std::string(data)};
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("edge list: empty input");
    std::istringstream header(line);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0)
        throw std::invalid_argument("edge list: malformed header");
    std::string extra;
    if (header >> extra)
        throw std::invalid_argument("edge list: malformed header");

    std::vector<std::pair<Node, Node>> edges;
    edges.reserve(static_cast<size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw std::invalid_argument("edge list: missing edge line");
        std::istringstream es(line);
        long long u, v;
        if (!(es >> u >> v))
            throw std::invalid_argument("edge list: malformed edge line");
        if (es >> extra)
            throw std::invalid_argument("edge list: malformed edge line");
        edges.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
    }

    std::vector<int> colors;
    while (std::getline(in, line)) {
        std::istringstream cs(line);
        std::string tag;
        if (!(cs >> tag))
            continue; // blank trailing line
        if (tag != "colors")
            throw std::invalid_argument("edge list: unexpected trailing line");
        if (!colors.empty())
            throw std::invalid_argument("edge list: repeated colors line");
        long long c;
        while (cs >> c) {
            if (c < 0)
                throw std::invalid_argument("edge list: negative color");
            colors.push_back(static_cast<int>(c));
        }
        if (static_cast<long long>(colors.size()) != n)
            throw std::invalid_argument("edge list: colors length does not equal node count");
    }
    return ColoredGraph(static_cast<int>(n), edges, std::move(colors));
}

ColoredGraph parse_graph6(std::string_view data) {
    // strip optional header and trailing whitespace/newline
    constexpr std::string_view kHeader = ">>graph6<<";
    if (data.substr(0, kHeader.size()) == kHeader)
        data.remove_prefix(kHeader.size());
    while (!data.empty() && (data.back() == '\n' || data.back() == '\r' || data.back() == ' '))
        data.remove_suffix(1);
    if (data.empty())
        throw std::invalid_argument("graph6: empty input");

    auto value = [](char ch) -> int {
        int v = static_cast<unsigned char>(ch) - 63;
        if (v < 0 || v > 63)
            throw std::invalid_argument("graph6: bad character");
        return v;
    };

    int n = value(data[0]);
    if (n == 63)
        throw std::invalid_argument("graph6: extended sizes (n > 62) not supported");
    data.remove_prefix(1);

    size_t bits_needed = static_cast<size_t>(n) * (n - 1) / 2;
    size_t bytes_needed = (bits_needed + 5) / 6;
    if (data.size() != bytes_needed)
        throw std::invalid_argument("graph6: wrong encoding length");

    std::vector<std::pair<Node, Node>> edges;
    size_t bit = 0;
    for (Node v = 1; v < n; ++v) {
        for (Node u = 0; u < v; ++u, ++bit) {
            int byte = value(data[bit / 6]);
            if ((byte >> (5 - bit % 6)) & 1)
                edges.emplace_back(u, v);
        }
    }
    return ColoredGraph(n, edges);
}

} // namespace

ColoredGraph load_graph(std::string_view data, GraphFormat format) {
    switch (format) {
    case GraphFormat::EdgeList: return parse_edge_list(data);
    case GraphFormat::Graph6: return parse_graph6(data);
    }
    throw std::invalid_argument("unknown graph format");
}

ColoredGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    bool g6 = path.size() > 3 && path.compare(path.size() - 3, 3, ".g6") == 0;
    return load_graph(buf.str(), g6 ? GraphFormat::Graph6 : GraphFormat::EdgeList);
}

std::string write_edge_list(const ColoredGraph& g) {
    std::ostringstream out;
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
    out << "colors";
    for (Node v = 0; v < g.node_count(); ++v)
        out << ' ' << g.color(v);
    out << '\n';
    return out.str();
}

ColoredGraph induced_subgraph(const ColoredGraph& g, const NodeSet& s) {
    check_member_range(g, s);
    const auto& members = s.members();
    std::vector<std::pair<Node, Node>> edges;
    std::vector<int> colors(members.size());
    for (int i = 0; i < s.size(); ++i) {
        colors[i] = g.color(members[i]);
        for (int j = i + 1; j < s.size(); ++j)
            if (g.has_edge(members[i], members[j]))
                edges.emplace_back(i, j);
    }
    return ColoredGraph(s.size(), edges, std::move(colors));
}

ComponentPartition connected_components(const ColoredGraph& g, const NodeSet& s) {
    check_member_range(g, s);
    ComponentPartition p;
    p.part.assign(s.size(), -1);
    std::vector<int> stack;
    for (int i = 0; i < s.size(); ++i) {
        if (p.part[i] >= 0)
            continue;
        int comp = p.count++;
        p.part[i] = comp;
        stack.assign(1, i);
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int j = 0; j < s.size(); ++j)
                if (p.part[j] < 0 && g.has_edge(s[cur], s[j])) {
                    p.part[j] = comp;
                    stack.push_back(j);
                }
        }
    }
    return p;
}

ColoredGraph permute_graph(const ColoredGraph& g, const std::vector<Node>& perm) {
    int n = g.node_count();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation: wrong length");
    std::vector<bool> seen(n, false);
    for (Node v : perm) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("permutation: not a bijection");
        seen[v] = true;
    }
    std::vector<std::pair<Node, Node>> edges;
    edges.reserve(g.edge_count());
    for (auto [u, v] : g.edges())
        edges.emplace_back(perm[u], perm[v]);
    std::vector<int> colors(n);
    for (Node v = 0; v < n; ++v)
        colors[perm[v]] = g.color(v);
    return ColoredGraph(n, edges, std::move(colors));
}

} // namespace setwl
