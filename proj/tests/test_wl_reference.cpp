#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>

#include "setwl/refine.hpp"
#include "setwl/wl_reference.hpp"
#include "test_util.hpp"

using namespace setwl;
using namespace testutil;

namespace {

int distinct_final_classes(const ReferenceRun& run, int graph) {
    std::set<Code> codes(run.final_codes()[graph].begin(), run.final_codes()[graph].end());
    return static_cast<int>(codes.size());
}

// the codes of a run at iteration t, clamped to the stable tail
const std::vector<std::vector<Code>>& codes_at(const ReferenceRun& run, size_t t) {
    return run.code_history[std::min(t, run.code_history.size() - 1)];
}

std::uint64_t tuple_index(int n, int k, const std::vector<Node>& tuple) {
    std::uint64_t idx = 0;
    for (int j = 0; j < k; ++j)
        idx = idx * n + tuple[j];
    return idx;
}

// bag of k-WL colors over all k! position permutations of a multiset
std::vector<Code> wl_bag(const std::vector<Node>& multiset, int n, int k,
                         const std::vector<Code>& tuple_codes) {
    std::vector<int> positions(k);
    std::iota(positions.begin(), positions.end(), 0);
    std::vector<Code> bag;
    do {
        std::vector<Node> tuple(k);
        for (int j = 0; j < k; ++j)
            tuple[j] = multiset[positions[j]];
        bag.push_back(tuple_codes[tuple_index(n, k, tuple)]);
    } while (std::next_permutation(positions.begin(), positions.end()));
    std::sort(bag.begin(), bag.end());
    return bag;
}

// for every pair of multisets across two jointly run graphs, equal
// permutation bags of k-WL colors must imply equal multiset-WL colors,
// iteration by iteration
void check_theorem1(const ColoredGraph& a, const ColoredGraph& b, int k) {
    ReferenceRun wl = run_reference_joint({&a, &b}, WlVariant::KWl, k);
    ReferenceRun mwl = run_reference_joint({&a, &b}, WlVariant::KMultisetWl, k);
    size_t iterations = std::max(wl.code_history.size(), mwl.code_history.size());
    for (size_t t = 0; t < iterations; ++t) {
        std::map<std::vector<Code>, Code> bag_to_color;
        std::map<std::vector<Code>, bool> seen;
        for (int g = 0; g < 2; ++g) {
            const auto& tuple_codes = codes_at(wl, t)[g];
            const auto& multiset_codes = codes_at(mwl, t)[g];
            int n = g == 0 ? a.node_count() : b.node_count();
            for (size_t i = 0; i < mwl.states[g].size(); ++i) {
                std::vector<Code> bag = wl_bag(mwl.states[g][i], n, k, tuple_codes);
                auto [it, inserted] = bag_to_color.try_emplace(bag, multiset_codes[i]);
                if (!inserted)
                    CHECK(it->second == multiset_codes[i]);
            }
        }
    }
}

// compositions of k into m parts, each at least one
void compositions(int k, int m, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (m == 1) {
        if (k >= 1) {
            current.push_back(k);
            out.push_back(current);
            current.pop_back();
        }
        return;
    }
    for (int first = 1; first + (m - 1) <= k; ++first) {
        current.push_back(first);
        compositions(k - first, m - 1, current, out);
        current.pop_back();
    }
}

// per-set multiset-WL color: bag of multiset colors over all repetition
// vectors whose support is the set
std::vector<Code> mwl_set_bag(const std::vector<Node>& set, int k,
                              const std::map<std::vector<Node>, int>& multiset_index,
                              const std::vector<Code>& multiset_codes) {
    int m = static_cast<int>(set.size());
    std::vector<std::vector<int>> reps;
    std::vector<int> scratch;
    compositions(k, m, scratch, reps);
    std::vector<Code> bag;
    for (const auto& rep : reps) {
        std::vector<Node> multiset;
        for (int i = 0; i < m; ++i)
            multiset.insert(multiset.end(), rep[i], set[i]);
        std::sort(multiset.begin(), multiset.end());
        bag.push_back(multiset_codes[multiset_index.at(multiset)]);
    }
    std::sort(bag.begin(), bag.end());
    return bag;
}

// joint supergraph engine run (parallel schedule) with full code history
struct EngineHistory {
    std::vector<SuperGraph> sgs;
    std::vector<std::vector<std::vector<std::vector<Code>>>> history;  // [iter][graph][layer][set]
};

EngineHistory run_engine_joint(const ColoredGraph& a, const ColoredGraph& b, int k, int c) {
    EngineHistory out;
    out.sgs.push_back(build_supergraph(a, k, c));
    out.sgs.push_back(build_supergraph(b, k, c));
    ComponentMap cma = build_component_map(out.sgs[0]);
    ComponentMap cmb = build_component_map(out.sgs[1]);
    ColorTable table;
    auto colorings = init_colors_joint(
        {GraphBundle{&a, &out.sgs[0], &cma}, GraphBundle{&b, &out.sgs[1], &cmb}}, table);
    auto snapshot = [&] {
        out.history.push_back({colorings[0].codes, colorings[1].codes});
    };
    snapshot();
    auto classes = [&] {
        std::set<Code> distinct;
        for (const auto& col : colorings)
            for (const auto& layer : col.codes)
                distinct.insert(layer.begin(), layer.end());
        return distinct.size();
    };
    size_t prev = classes();
    size_t limit = out.sgs[0].total_sets() + out.sgs[1].total_sets() + 1;
    for (size_t t = 0; t < limit; ++t) {
        refine_step_joint(Schedule::Parallel, {&out.sgs[0], &out.sgs[1]}, colorings, table);
        snapshot();
        size_t now = classes();
        if (now == prev)
            break;
        prev = now;
    }
    return out;
}

// multiset-WL set-color equality must imply engine set-color equality,
// iteration by iteration (the engine runs with c = k so every set exists)
void check_theorem4(const ColoredGraph& a, const ColoredGraph& b, int k) {
    ReferenceRun mwl = run_reference_joint({&a, &b}, WlVariant::KMultisetWl, k);
    EngineHistory engine = run_engine_joint(a, b, k, k);

    std::vector<std::map<std::vector<Node>, int>> multiset_index(2);
    for (int g = 0; g < 2; ++g)
        for (size_t i = 0; i < mwl.states[g].size(); ++i)
            multiset_index[g][mwl.states[g][i]] = static_cast<int>(i);

    size_t iterations = std::max(mwl.code_history.size(), engine.history.size());
    for (size_t t = 0; t < iterations; ++t) {
        std::map<std::vector<Code>, Code> bag_to_engine;
        for (int g = 0; g < 2; ++g) {
            const auto& multiset_codes = codes_at(mwl, t)[g];
            const auto& engine_codes =
                engine.history[std::min(t, engine.history.size() - 1)][g];
            const SuperGraph& sg = engine.sgs[g];
            for (int m = 0; m < sg.layer_count(); ++m)
                for (size_t i = 0; i < sg.layers[m].sets.size(); ++i) {
                    std::vector<Code> bag = mwl_set_bag(sg.layers[m].sets[i].members(), k,
                                                        multiset_index[g], multiset_codes);
                    auto [it, inserted] = bag_to_engine.try_emplace(bag, engine_codes[m][i]);
                    if (!inserted)
                        CHECK(it->second == engine_codes[m][i]);
                }
        }
    }
}

std::vector<int> normalized(const std::vector<Code>& codes) {
    std::map<Code, int> ids;
    std::vector<int> out;
    out.reserve(codes.size());
    for (Code c : codes)
        out.push_back(ids.try_emplace(c, static_cast<int>(ids.size())).first->second);
    return out;
}

} // namespace

TEST_CASE("plain color refinement") {
    Verdict v = distinguish_reference(cycle(6), two_triangles(), WlVariant::OneWl, 1);
    CHECK(!v.distinguished);

    ReferenceRun s3 = one_wl(star(3));
    CHECK(distinct_final_classes(s3, 0) == 2);

    for (const ColoredGraph& g : {cycle(5), complete(4), cycle(6)}) {
        ReferenceRun run = one_wl(g);
        CHECK(distinct_final_classes(run, 0) == 1);
    }
}

TEST_CASE("k-WL reference") {
    CHECK(!distinguish_reference(cycle(6), two_triangles(), WlVariant::KWl, 2).distinguished);
    CHECK(distinguish_reference(cycle(6), two_triangles(), WlVariant::KWl, 3).distinguished);

    SUBCASE("isomorphic pairs stay equal") {
        std::mt19937 rng(131);
        for (int trial = 0; trial < 6; ++trial) {
            int n = 3 + static_cast<int>(rng() % 4);
            ColoredGraph g = random_graph(rng, n, 0.4);
            ColoredGraph h = permute_graph(g, random_permutation(rng, n));
            CHECK(!distinguish_reference(g, h, WlVariant::KWl, 2).distinguished);
        }
    }
    SUBCASE("scale guard") {
        CHECK_THROWS(k_wl(empty_graph(101), 3));  // 101^3 > 10^6
    }
}

TEST_CASE("k-FWL reference") {
    // 2-FWL carries 3-WL power
    CHECK(distinguish_reference(cycle(6), two_triangles(), WlVariant::KFwl, 2).distinguished);

    std::mt19937 rng(137);
    ColoredGraph g = random_graph(rng, 5, 0.4);
    ColoredGraph h = permute_graph(g, random_permutation(rng, 5));
    CHECK(!distinguish_reference(g, h, WlVariant::KFwl, 2).distinguished);

    SUBCASE("k = 1 behaves like color refinement") {
        for (const ColoredGraph& graph : {star(3), path(4), cycle(6)}) {
            ReferenceRun fwl = k_fwl(graph, 1);
            ReferenceRun cr = one_wl(graph);
            CHECK(normalized(fwl.final_codes()[0]) == normalized(cr.final_codes()[0]));
        }
        CHECK(!distinguish_reference(cycle(6), two_triangles(), WlVariant::KFwl, 1).distinguished);
        CHECK(distinguish_reference(star(3), path(4), WlVariant::KFwl, 1).distinguished);
    }
}

TEST_CASE("k-MultisetWL reference") {
    CHECK(distinguish_reference(cycle(6), two_triangles(), WlVariant::KMultisetWl, 3)
              .distinguished);

    std::mt19937 rng(139);
    ColoredGraph g = random_graph(rng, 5, 0.4);
    ColoredGraph h = permute_graph(g, random_permutation(rng, 5));
    CHECK(!distinguish_reference(g, h, WlVariant::KMultisetWl, 3).distinguished);
}

TEST_CASE("k-SetFWL reference") {
    CHECK(distinguish_reference(cycle(6), two_triangles(), WlVariant::KSetFwl, 3).distinguished);

    std::mt19937 rng(149);
    ColoredGraph g = random_graph(rng, 5, 0.4);
    ColoredGraph h = permute_graph(g, random_permutation(rng, 5));
    CHECK(!distinguish_reference(g, h, WlVariant::KSetFwl, 3).distinguished);

    SUBCASE("stable coloring is a fixed point") {
        ReferenceRun run = k_set_fwl(path(4), 2);
        REQUIRE(run.converged);
        // the two recorded iterations after stability carry the same partition
        size_t last = run.code_history.size() - 1;
        CHECK(normalized(run.code_history[last][0]) ==
              normalized(run.code_history[last - 1][0]));
    }
}

TEST_CASE("distinguish_reference verdicts") {
    CHECK(!distinguish_reference(cycle(6), two_triangles(), WlVariant::OneWl, 1).distinguished);
    CHECK(distinguish_reference(cycle(6), two_triangles(), WlVariant::KWl, 3).distinguished);
    CHECK(distinguish_reference(cycle(6), two_triangles(), WlVariant::KSetWl, 3).distinguished);
}

TEST_CASE("theorem checks on small corpora") {
    std::mt19937 rng(151);
    std::vector<std::pair<ColoredGraph, ColoredGraph>> pairs;
    pairs.emplace_back(cycle(6), two_triangles());
    pairs.emplace_back(cycle(4), path(4));
    for (int trial = 0; trial < 4; ++trial) {
        int n = 4 + static_cast<int>(rng() % 2);
        pairs.emplace_back(random_graph(rng, n, 0.4), random_graph(rng, n, 0.4));
    }
    for (const auto& [a, b] : pairs) {
        check_theorem1(a, b, 2);
        check_theorem4(a, b, 2);
    }
    check_theorem1(pairs[0].first, pairs[0].second, 3);
    check_theorem4(pairs[0].first, pairs[0].second, 3);
}

TEST_CASE("direct set update agrees with the engine at stability") {
    std::mt19937 rng(157);
    std::vector<ColoredGraph> corpus{cycle(6), two_triangles(), star(3), path(5)};
    for (int trial = 0; trial < 6; ++trial)
        corpus.push_back(random_graph(rng, 4 + static_cast<int>(rng() % 3), 0.4));
    for (const ColoredGraph& g : corpus)
        for (int k = 2; k <= 3; ++k) {
            ReferenceRun direct = k_set_wl(g, k);
            RefinementTrace engine = run_to_stable(g, k, k, Schedule::Parallel);
            std::vector<Code> flat;
            for (const auto& layer : engine.final_coloring.codes)
                flat.insert(flat.end(), layer.begin(), layer.end());
            REQUIRE(flat.size() == direct.final_codes()[0].size());
            CHECK(normalized(flat) == normalized(direct.final_codes()[0]));
        }
}

TEST_CASE("1-WL never beats 3-WL") {
    std::mt19937 rng(163);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        ColoredGraph a = random_graph(rng, n, 0.4);
        ColoredGraph b = random_graph(rng, n, 0.4);
        bool one = distinguish_reference(a, b, WlVariant::OneWl, 1).distinguished;
        bool three = distinguish_reference(a, b, WlVariant::KWl, 3).distinguished;
        if (one)
            CHECK(three);
    }
}
