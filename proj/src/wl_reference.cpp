#include "setwl/wl_reference.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "setwl/certificate.hpp"

namespace setwl {

const char* wl_variant_name(WlVariant v) {
    switch (v) {
    case WlVariant::OneWl: return "1-wl";
    case WlVariant::KWl: return "k-wl";
    case WlVariant::KFwl: return "k-fwl";
    case WlVariant::KMultisetWl: return "k-multiset-wl";
    case WlVariant::KSetFwl: return "k-set-fwl";
    case WlVariant::KSetWl: return "k-set-wl";
    }
    return "?";
}

WlVariant wl_variant_from_name(const std::string& name) {
    for (WlVariant v : {WlVariant::OneWl, WlVariant::KWl, WlVariant::KFwl, WlVariant::KMultisetWl,
                        WlVariant::KSetFwl, WlVariant::KSetWl})
        if (name == wl_variant_name(v))
            return v;
    throw std::invalid_argument("unknown WL variant: " + name);
}

namespace {

constexpr std::uint64_t kStateGuard = 1000000;

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && out > kStateGuard * 4)
            return kStateGuard + 1;  // early saturation, guard check only
        out *= base;
    }
    return out;
}

std::uint64_t binom_u64(int n, int r) {
    if (r < 0 || r > n)
        return 0;
    std::uint64_t out = 1;
    r = std::min(r, n - r);
    for (int i = 1; i <= r; ++i)
        out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    return out;
}

// atomic type of an ordered tuple: repetition pattern, adjacency pattern,
// then the node colors in order; equality across graphs holds exactly for
// order-preserving isomorphisms of the induced subgraphs
std::string atomic_type_key(const ColoredGraph& g, const std::vector<Node>& tuple) {
    KeyBuilder key('a');
    int k = static_cast<int>(tuple.size());
    std::vector<Code> payload;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            payload.push_back(tuple[i] == tuple[j] ? 1 : 0);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            payload.push_back(g.has_edge(tuple[i], tuple[j]) ? 1 : 0);
    for (Node v : tuple)
        payload.push_back(static_cast<Code>(g.color(v)));
    key.sequence(payload);
    return key.take();
}

struct GraphStates {
    const ColoredGraph* g = nullptr;
    std::vector<std::vector<Node>> states;
    std::unordered_map<std::string, int> state_index;  // packed members -> index

    std::string pack(const std::vector<Node>& members) const {
        std::string out(members.size() * sizeof(Node), '\0');
        std::memcpy(out.data(), members.data(), out.size());
        return out;
    }

    void add(std::vector<Node> members) {
        state_index.emplace(pack(members), static_cast<int>(states.size()));
        states.push_back(std::move(members));
    }

    int index_of(const std::vector<Node>& members) const {
        return state_index.at(pack(members));
    }
};

void enumerate_tuples(GraphStates& gs, int k) {
    int n = gs.g->node_count();
    std::vector<Node> tuple(k, 0);
    while (true) {
        gs.add(tuple);
        int pos = k - 1;
        while (pos >= 0 && tuple[pos] == n - 1)
            tuple[pos--] = 0;
        if (pos < 0)
            break;
        ++tuple[pos];
    }
}

void enumerate_multisets(GraphStates& gs, int k) {
    int n = gs.g->node_count();
    std::vector<Node> ms(k, 0);
    auto recurse = [&](auto&& self, int pos, Node low) -> void {
        if (pos == k) {
            gs.add(ms);
            return;
        }
        for (Node v = low; v < n; ++v) {
            ms[pos] = v;
            self(self, pos + 1, v);
        }
    };
    recurse(recurse, 0, 0);
}

void enumerate_sets(GraphStates& gs, int k) {
    int n = gs.g->node_count();
    std::vector<Node> set;
    auto recurse = [&](auto&& self, Node low, int remaining) -> void {
        if (remaining == 0) {
            gs.add(set);
            return;
        }
        for (Node v = low; v <= n - remaining; ++v) {
            set.push_back(v);
            self(self, v + 1, remaining - 1);
            set.pop_back();
        }
    };
    for (int m = 1; m <= std::min(k, n); ++m)
        recurse(recurse, 0, m);
}

// variant-specific behavior over a prepared state space
struct VariantOps {
    WlVariant variant;
    int k;

    std::string init_key(const GraphStates& gs, int idx) const {
        const auto& st = gs.states[idx];
        switch (variant) {
        case WlVariant::OneWl: {
            KeyBuilder key('n');
            key.code(static_cast<Code>(gs.g->color(st[0])));
            return key.take();
        }
        case WlVariant::KWl:
        case WlVariant::KFwl:
            return atomic_type_key(*gs.g, st);
        case WlVariant::KMultisetWl: {
            // multiset of atomic types over all distinct arrangements
            std::vector<Node> arrangement = st;
            std::vector<std::string> keys;
            do
                keys.push_back(atomic_type_key(*gs.g, arrangement));
            while (std::next_permutation(arrangement.begin(), arrangement.end()));
            std::sort(keys.begin(), keys.end());
            KeyBuilder key('i');
            std::string flat;
            for (const auto& s : keys) {
                std::uint32_t len = static_cast<std::uint32_t>(s.size());
                for (int shift = 0; shift < 32; shift += 8)
                    flat.push_back(static_cast<char>(len >> shift));
                flat += s;
            }
            key.bytes(std::vector<std::uint8_t>(flat.begin(), flat.end()));
            return key.take();
        }
        case WlVariant::KSetFwl:
        case WlVariant::KSetWl: {
            Certificate cert =
                canonical_certificate(induced_subgraph(*gs.g, NodeSet(st)));
            KeyBuilder key('C');
            key.bytes(cert.bytes);
            return key.take();
        }
        }
        throw std::logic_error("unreachable");
    }

    std::string update_key(const GraphStates& gs, int idx, const std::vector<Code>& codes,
                           ColorTable& table) const {
        switch (variant) {
        case WlVariant::OneWl: return update_one_wl(gs, idx, codes);
        case WlVariant::KWl: return update_k_wl(gs, idx, codes, table);
        case WlVariant::KFwl: return update_k_fwl(gs, idx, codes, table);
        case WlVariant::KMultisetWl: return update_k_multiset(gs, idx, codes, table);
        case WlVariant::KSetFwl: return update_k_set_fwl(gs, idx, codes, table);
        case WlVariant::KSetWl: return update_k_set_wl(gs, idx, codes, table);
        }
        throw std::logic_error("unreachable");
    }

    std::string update_one_wl(const GraphStates& gs, int idx,
                              const std::vector<Code>& codes) const {
        Node v = gs.states[idx][0];
        std::vector<Code> neigh;
        neigh.reserve(gs.g->neighbors(v).size());
        for (Node w : gs.g->neighbors(v))
            neigh.push_back(codes[w]);
        std::sort(neigh.begin(), neigh.end());
        KeyBuilder key('u');
        key.code(codes[idx]).multiset(neigh);
        return key.take();
    }

    std::string update_k_wl(const GraphStates& gs, int idx, const std::vector<Code>& codes,
                            ColorTable& table) const {
        int n = gs.g->node_count();
        const auto& tuple = gs.states[idx];
        KeyBuilder key('w');
        key.code(codes[idx]);
        std::vector<Node> scratch = tuple;
        std::vector<Code> inner(n);
        // positional neighbor multisets, in order
        for (int i = 0; i < k; ++i) {
            Node saved = scratch[i];
            for (Node x = 0; x < n; ++x) {
                scratch[i] = x;
                inner[x] = codes[gs.index_of(scratch)];
            }
            scratch[i] = saved;
            std::vector<Code> sorted = inner;
            std::sort(sorted.begin(), sorted.end());
            KeyBuilder inner_key('m');
            inner_key.multiset(sorted);
            key.code(table.intern(inner_key.take()));
        }
        return key.take();
    }

    std::string update_k_fwl(const GraphStates& gs, int idx, const std::vector<Code>& codes,
                             ColorTable& table) const {
        int n = gs.g->node_count();
        const auto& tuple = gs.states[idx];
        std::vector<Code> per_x(n);
        std::vector<Node> scratch = tuple;
        for (Node x = 0; x < n; ++x) {
            KeyBuilder tuple_key('t');
            for (int i = 0; i < k; ++i) {
                Node saved = scratch[i];
                scratch[i] = x;
                tuple_key.code(codes[gs.index_of(scratch)]);
                scratch[i] = saved;
            }
            per_x[x] = table.intern(tuple_key.take());
        }
        std::sort(per_x.begin(), per_x.end());
        KeyBuilder key('f');
        key.code(codes[idx]).multiset(per_x);
        return key.take();
    }

    std::string update_k_multiset(const GraphStates& gs, int idx, const std::vector<Code>& codes,
                                  ColorTable& table) const {
        int n = gs.g->node_count();
        const auto& ms = gs.states[idx];
        std::vector<Code> position_codes;
        std::vector<Node> scratch;
        std::vector<Code> inner(n);
        for (int i = 0; i < k; ++i) {
            for (Node x = 0; x < n; ++x) {
                scratch = ms;
                scratch[i] = x;
                std::sort(scratch.begin(), scratch.end());
                inner[x] = codes[gs.index_of(scratch)];
            }
            std::vector<Code> sorted = inner;
            std::sort(sorted.begin(), sorted.end());
            KeyBuilder inner_key('m');
            inner_key.multiset(sorted);
            position_codes.push_back(table.intern(inner_key.take()));
        }
        // the per-position multisets themselves form a multiset
        std::sort(position_codes.begin(), position_codes.end());
        KeyBuilder key('M');
        key.code(codes[idx]).multiset(position_codes);
        return key.take();
    }

    // replace the i-th member of a set with x; drops to size m-1 when x is
    // already another member, stays put when x is the member itself
    static std::vector<Node> set_replace(const std::vector<Node>& set, int i, Node x) {
        std::vector<Node> out;
        out.reserve(set.size());
        for (size_t j = 0; j < set.size(); ++j)
            if (static_cast<int>(j) != i)
                out.push_back(set[j]);
        if (std::find(out.begin(), out.end(), x) == out.end())
            out.push_back(x);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string update_k_set_fwl(const GraphStates& gs, int idx, const std::vector<Code>& codes,
                                 ColorTable& table) const {
        int n = gs.g->node_count();
        const auto& set = gs.states[idx];
        int m = static_cast<int>(set.size());
        std::vector<Code> per_x(n);
        for (Node x = 0; x < n; ++x) {
            std::vector<Code> subst(m);
            for (int i = 0; i < m; ++i)
                subst[i] = codes[gs.index_of(set_replace(set, i, x))];
            std::sort(subst.begin(), subst.end());
            KeyBuilder inner_key('m');
            inner_key.multiset(subst);
            per_x[x] = table.intern(inner_key.take());
        }
        std::sort(per_x.begin(), per_x.end());
        KeyBuilder key('g');
        key.code(codes[idx]).multiset(per_x);
        return key.take();
    }

    std::string update_k_set_wl(const GraphStates& gs, int idx, const std::vector<Code>& codes,
                                ColorTable& table) const {
        int n = gs.g->node_count();
        const auto& set = gs.states[idx];
        int m = static_cast<int>(set.size());

        std::vector<Code> supersets;
        if (m < k) {
            for (Node x = 0; x < n; ++x) {
                if (std::binary_search(set.begin(), set.end(), x))
                    continue;
                std::vector<Node> up = set;
                up.insert(std::lower_bound(up.begin(), up.end(), x), x);
                supersets.push_back(codes[gs.index_of(up)]);
            }
            std::sort(supersets.begin(), supersets.end());
        }

        std::vector<Code> subsets;
        if (m > 1) {
            for (int i = 0; i < m; ++i) {
                std::vector<Node> down = set;
                down.erase(down.begin() + i);
                subsets.push_back(codes[gs.index_of(down)]);
            }
            std::sort(subsets.begin(), subsets.end());
        }

        // per-position replacement multisets over x outside the set,
        // wrapped as an unordered collection
        std::vector<Code> replacement_codes;
        for (int i = 0; i < m; ++i) {
            std::vector<Code> inner;
            inner.reserve(n - m);
            for (Node x = 0; x < n; ++x) {
                if (std::binary_search(set.begin(), set.end(), x))
                    continue;
                std::vector<Node> repl = set;
                repl[i] = x;
                std::sort(repl.begin(), repl.end());
                inner.push_back(codes[gs.index_of(repl)]);
            }
            std::sort(inner.begin(), inner.end());
            KeyBuilder inner_key('m');
            inner_key.multiset(inner);
            replacement_codes.push_back(table.intern(inner_key.take()));
        }
        std::sort(replacement_codes.begin(), replacement_codes.end());

        KeyBuilder key('S');
        key.code(codes[idx]).multiset(supersets).multiset(subsets).multiset(replacement_codes);
        return key.take();
    }
};

void check_guard(WlVariant variant, int n, int k) {
    if (k < 1)
        throw std::invalid_argument("reference WL: k must be positive");
    switch (variant) {
    case WlVariant::OneWl:
        break;
    case WlVariant::KWl:
    case WlVariant::KFwl:
        if (pow_u64(static_cast<std::uint64_t>(n), k) > kStateGuard)
            throw std::invalid_argument("reference WL: n^k exceeds the scale guard");
        break;
    case WlVariant::KMultisetWl:
    case WlVariant::KSetFwl:
    case WlVariant::KSetWl:
        if (binom_u64(n + k - 1, k) > kStateGuard)
            throw std::invalid_argument("reference WL: state count exceeds the scale guard");
        break;
    }
}

} // namespace

ReferenceRun run_reference_joint(const std::vector<const ColoredGraph*>& graphs,
                                 WlVariant variant, int k, std::optional<int> max_iters) {
    // the folklore variant at k = 1 degenerates to counting colors; treat
    // it as plain color refinement, which is the accepted boundary meaning
    if (variant == WlVariant::KFwl && k == 1)
        variant = WlVariant::OneWl;
    if (variant == WlVariant::OneWl)
        k = 1;

    ReferenceRun run;
    run.variant = variant;
    run.k = k;

    std::vector<GraphStates> all;
    std::uint64_t total_states = 0;
    for (const ColoredGraph* g : graphs) {
        check_guard(variant, g->node_count(), k);
        GraphStates gs;
        gs.g = g;
        switch (variant) {
        case WlVariant::OneWl: {
            for (Node v = 0; v < g->node_count(); ++v)
                gs.add({v});
            break;
        }
        case WlVariant::KWl:
        case WlVariant::KFwl:
            enumerate_tuples(gs, k);
            break;
        case WlVariant::KMultisetWl:
            enumerate_multisets(gs, k);
            break;
        case WlVariant::KSetFwl:
        case WlVariant::KSetWl:
            enumerate_sets(gs, k);
            break;
        }
        total_states += gs.states.size();
        all.push_back(std::move(gs));
    }

    ColorTable table;
    VariantOps ops{variant, k};

    std::vector<std::vector<Code>> codes(all.size());
    for (size_t g = 0; g < all.size(); ++g) {
        codes[g].resize(all[g].states.size());
        for (size_t i = 0; i < all[g].states.size(); ++i)
            codes[g][i] = table.intern(ops.init_key(all[g], static_cast<int>(i)));
    }
    run.code_history.push_back(codes);

    auto class_count = [&] {
        std::unordered_set<Code> distinct;
        for (const auto& per_graph : codes)
            distinct.insert(per_graph.begin(), per_graph.end());
        return distinct.size();
    };

    int limit = max_iters.value_or(static_cast<int>(total_states) + 1);
    std::size_t prev = class_count();
    run.converged = false;
    for (int t = 1; t <= limit; ++t) {
        std::vector<std::vector<Code>> next(all.size());
        for (size_t g = 0; g < all.size(); ++g) {
            const auto& current = codes[g];
            std::vector<std::string> keys(all[g].states.size());
            for (size_t i = 0; i < keys.size(); ++i)
                keys[i] = ops.update_key(all[g], static_cast<int>(i), current, table);
            next[g].resize(keys.size());
            for (size_t i = 0; i < keys.size(); ++i)
                next[g][i] = table.intern(keys[i]);
        }
        codes = std::move(next);
        run.code_history.push_back(codes);
        std::size_t classes = class_count();
        if (classes == prev) {
            run.iterations_to_stable = t - 1;
            run.converged = true;
            break;
        }
        prev = classes;
    }
    if (!run.converged)
        run.iterations_to_stable = limit;

    for (auto& gs : all)
        run.states.push_back(std::move(gs.states));
    return run;
}

ReferenceRun one_wl(const ColoredGraph& g) {
    return run_reference_joint({&g}, WlVariant::OneWl, 1);
}
ReferenceRun k_wl(const ColoredGraph& g, int k) {
    return run_reference_joint({&g}, WlVariant::KWl, k);
}
ReferenceRun k_fwl(const ColoredGraph& g, int k) {
    return run_reference_joint({&g}, WlVariant::KFwl, k);
}
ReferenceRun k_multiset_wl(const ColoredGraph& g, int k) {
    return run_reference_joint({&g}, WlVariant::KMultisetWl, k);
}
ReferenceRun k_set_fwl(const ColoredGraph& g, int k) {
    return run_reference_joint({&g}, WlVariant::KSetFwl, k);
}
ReferenceRun k_set_wl(const ColoredGraph& g, int k) {
    return run_reference_joint({&g}, WlVariant::KSetWl, k);
}

std::vector<std::pair<Code, std::uint64_t>> reference_histogram(const ReferenceRun& run,
                                                                int iteration, int graph) {
    std::map<Code, std::uint64_t> hist;
    for (Code code : run.code_history[iteration][graph])
        ++hist[code];
    return {hist.begin(), hist.end()};
}

Verdict distinguish_reference(const ColoredGraph& a, const ColoredGraph& b, WlVariant variant,
                              int k, std::optional<int> max_iters) {
    ReferenceRun run = run_reference_joint({&a, &b}, variant, k, max_iters);
    Verdict verdict;
    for (size_t t = 0; t < run.code_history.size(); ++t) {
        if (reference_histogram(run, static_cast<int>(t), 0) !=
            reference_histogram(run, static_cast<int>(t), 1)) {
            verdict.distinguished = true;
            verdict.iteration = static_cast<int>(t);
            return verdict;
        }
    }
    verdict.iterations_to_stable = run.iterations_to_stable;
    return verdict;
}

} // namespace setwl
