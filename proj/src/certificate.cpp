#include "setwl/certificate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace setwl {

std::string Certificate::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

namespace {

// Depth-first search for the minimal adjacency bit string. Positions are
// filled left to right; position i may only hold nodes of the i-th entry
// of the sorted color sequence. The bit string grows column-wise: placing
// position d appends the d bits adjacent(placed[0..d-1], candidate).
struct CanonSearch {
    const ColoredGraph& g;
    int n;
    std::vector<int> slot_color;             // required color per position
    std::vector<std::uint16_t> adjacency;    // neighbor bitmask per node
    std::vector<Node> placed;
    std::vector<bool> used;
    std::vector<std::uint8_t> bits;          // current prefix, one byte per bit
    std::vector<std::uint8_t> best;
    bool have_best = false;

    explicit CanonSearch(const ColoredGraph& graph) : g(graph), n(graph.node_count()) {
        slot_color = g.colors();
        std::sort(slot_color.begin(), slot_color.end());
        adjacency.assign(n, 0);
        for (Node v = 0; v < n; ++v)
            for (Node w : g.neighbors(v))
                adjacency[v] |= static_cast<std::uint16_t>(1u << w);
        used.assign(n, false);
        placed.reserve(n);
        bits.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    }

    void run() {
        if (n == 0) {
            have_best = true;
            return;
        }
        descend(0, true);
    }

    // same-color nodes whose neighborhoods agree outside {u, v} are swapped
    // by an automorphism, so their subtrees realize the same minimum
    bool twins(Node u, Node v) const {
        return (adjacency[u] & ~static_cast<std::uint16_t>(1u << v)) ==
               (adjacency[v] & ~static_cast<std::uint16_t>(1u << u));
    }

    // tight == true means the current prefix equals best's prefix, so new
    // bits may be pruned against best; once the prefix is strictly smaller
    // (or no best exists yet) every completion must be explored.
    void descend(int depth, bool tight) {
        if (depth == n) {
            if (!have_best || bits < best) {
                best = bits;
                have_best = true;
            }
            return;
        }
        // among candidates with the required color, only those realizing the
        // minimal row of adjacency bits can start a lexicographic minimum
        std::vector<std::pair<std::vector<std::uint8_t>, Node>> rows;
        for (Node v = 0; v < n; ++v) {
            if (used[v] || g.color(v) != slot_color[depth])
                continue;
            std::vector<std::uint8_t> row(depth);
            for (int i = 0; i < depth; ++i)
                row[i] = (adjacency[v] >> placed[i]) & 1;
            rows.emplace_back(std::move(row), v);
        }
        const auto& min_row =
            std::min_element(rows.begin(), rows.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; })
                ->first;
        size_t prefix_len = bits.size();
        std::vector<Node> explored;
        for (auto& [row, v] : rows) {
            if (row != min_row)
                continue;
            bool redundant = false;
            for (Node u : explored)
                if (twins(u, v)) {
                    redundant = true;
                    break;
                }
            if (redundant)
                continue;
            explored.push_back(v);
            bool child_tight = false;
            if (have_best && tight) {
                int cmp = 0;
                for (int i = 0; i < depth && cmp == 0; ++i)
                    cmp = int(row[i]) - int(best[prefix_len + i]);
                if (cmp > 0)
                    continue;
                child_tight = cmp == 0;
            }
            bits.insert(bits.end(), row.begin(), row.end());
            used[v] = true;
            placed.push_back(v);
            descend(depth + 1, child_tight);
            placed.pop_back();
            used[v] = false;
            bits.resize(prefix_len);
        }
    }
};

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

} // namespace

Certificate canonical_certificate(const ColoredGraph& g) {
    int n = g.node_count();
    if (n > kCertificateMaxNodes)
        throw std::invalid_argument("certificate: graph exceeds node cap");

    CanonSearch search(g);
    search.run();

    Certificate cert;
    cert.bytes.push_back(static_cast<std::uint8_t>(n));
    for (int c : search.slot_color)
        append_u32(cert.bytes, static_cast<std::uint32_t>(c));
    std::uint8_t acc = 0;
    int filled = 0;
    for (std::uint8_t bit : search.best) {
        acc = static_cast<std::uint8_t>((acc << 1) | bit);
        if (++filled == 8) {
            cert.bytes.push_back(acc);
            acc = 0;
            filled = 0;
        }
    }
    if (filled > 0)
        cert.bytes.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
    return cert;
}

} // namespace setwl
