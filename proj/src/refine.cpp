#include "setwl/refine.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "setwl/certificate.hpp"

namespace setwl {

const char* schedule_name(Schedule s) {
    return s == Schedule::Parallel ? "parallel" : "sequential";
}

Schedule schedule_from_name(const std::string& name) {
    if (name == "parallel")
        return Schedule::Parallel;
    if (name == "sequential")
        return Schedule::Sequential;
    throw std::invalid_argument("unknown schedule: " + name);
}

namespace {

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    int workers = std::min(threads, count);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            int i;
            while ((i = next.fetch_add(1)) < count && !failed.load()) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

// parent/child lists extracted from the bipartite triples
struct NeighborIndex {
    std::vector<std::vector<std::vector<int>>> children;  // [gap][parent]
    std::vector<std::vector<std::vector<int>>> parents;   // [gap][child]
};

NeighborIndex build_index(const SuperGraph& sg) {
    NeighborIndex idx;
    idx.children.resize(sg.bipartite.size());
    idx.parents.resize(sg.bipartite.size());
    for (size_t gap = 0; gap < sg.bipartite.size(); ++gap) {
        idx.children[gap].resize(sg.layers[gap].sets.size());
        idx.parents[gap].resize(sg.layers[gap + 1].sets.size());
        for (const auto& e : sg.bipartite[gap]) {
            idx.children[gap][e.parent].push_back(e.child);
            idx.parents[gap][e.child].push_back(e.parent);
        }
    }
    return idx;
}

Coloring blank_coloring(const SuperGraph& sg) {
    Coloring col;
    col.codes.resize(sg.layer_count());
    col.half.resize(sg.layer_count());
    for (int m = 0; m < sg.layer_count(); ++m) {
        col.codes[m].assign(sg.layers[m].sets.size(), 0);
        col.half[m].assign(sg.layers[m].sets.size(), 0);
    }
    return col;
}

std::vector<Code> sorted_codes(const std::vector<Code>& source, const std::vector<int>& indices) {
    std::vector<Code> out;
    out.reserve(indices.size());
    for (int i : indices)
        out.push_back(source[i]);
    std::sort(out.begin(), out.end());
    return out;
}

// Joint refinement over one or two graphs sharing a table. Codes are
// interned scanning layers ascending (or in sweep order), graphs in the
// order given, sets in stored lexicographic order, so identical inputs
// always produce identical code assignments.
struct Refiner {
    std::vector<const SuperGraph*> sgs;
    std::vector<Coloring>& colorings;
    std::vector<NeighborIndex> index;
    int max_layers = 0;

    Refiner(std::vector<const SuperGraph*> graphs, std::vector<Coloring>& cols)
        : sgs(std::move(graphs)), colorings(cols) {
        for (const SuperGraph* sg : sgs) {
            index.push_back(build_index(*sg));
            max_layers = std::max(max_layers, sg->layer_count());
        }
    }

    void step(Schedule schedule, ColorTable& table) {
        if (schedule == Schedule::Parallel)
            step_parallel(table);
        else
            step_sequential(table);
    }

    void step_parallel(ColorTable& table) {
        size_t count = sgs.size();
        // half step: multiset of superset colors, empty at the top layer
        std::vector<std::vector<std::vector<std::string>>> half_keys(count);
        for (size_t s = 0; s < count; ++s) {
            const auto& col = colorings[s];
            half_keys[s].resize(sgs[s]->layer_count());
            for (int m = 0; m < sgs[s]->layer_count(); ++m) {
                int sets = static_cast<int>(sgs[s]->layers[m].sets.size());
                half_keys[s][m].resize(sets);
                bool has_right = m + 1 < sgs[s]->layer_count();
                for (int i = 0; i < sets; ++i) {
                    KeyBuilder key('H');
                    if (has_right)
                        key.multiset(sorted_codes(col.codes[m + 1], index[s].children[m][i]));
                    else
                        key.multiset({});
                    half_keys[s][m][i] = key.take();
                }
            }
        }
        for (int m = 0; m < max_layers; ++m)
            for (size_t s = 0; s < count; ++s) {
                if (m >= sgs[s]->layer_count())
                    continue;
                for (size_t i = 0; i < half_keys[s][m].size(); ++i)
                    colorings[s].half[m][i] = table.intern(half_keys[s][m][i]);
            }

        // full step: own code, own half, subset codes, subset halves
        std::vector<std::vector<std::vector<std::string>>> full_keys(count);
        for (size_t s = 0; s < count; ++s) {
            const auto& col = colorings[s];
            full_keys[s].resize(sgs[s]->layer_count());
            for (int m = 0; m < sgs[s]->layer_count(); ++m) {
                int sets = static_cast<int>(sgs[s]->layers[m].sets.size());
                full_keys[s][m].resize(sets);
                for (int i = 0; i < sets; ++i) {
                    KeyBuilder key('P');
                    key.code(col.codes[m][i]).code(col.half[m][i]);
                    if (m > 0) {
                        const auto& left = index[s].parents[m - 1][i];
                        key.multiset(sorted_codes(col.codes[m - 1], left));
                        key.multiset(sorted_codes(col.half[m - 1], left));
                    } else {
                        key.multiset({});
                        key.multiset({});
                    }
                    full_keys[s][m][i] = key.take();
                }
            }
        }
        for (int m = 0; m < max_layers; ++m)
            for (size_t s = 0; s < count; ++s) {
                if (m >= sgs[s]->layer_count())
                    continue;
                for (size_t i = 0; i < full_keys[s][m].size(); ++i)
                    colorings[s].codes[m][i] = table.intern(full_keys[s][m][i]);
            }
    }

    void step_sequential(ColorTable& table) {
        size_t count = sgs.size();
        // backward sweep: the top layer contributes its current codes as
        // half-step values, lower layers hash own code with the
        // already-updated half-steps above
        for (size_t s = 0; s < count; ++s) {
            int top = sgs[s]->layer_count() - 1;
            if (top >= 0)
                colorings[s].half[top] = colorings[s].codes[top];
        }
        for (int m = max_layers - 2; m >= 0; --m) {
            for (size_t s = 0; s < count; ++s) {
                if (m + 1 >= sgs[s]->layer_count())
                    continue;
                auto& col = colorings[s];
                int sets = static_cast<int>(sgs[s]->layers[m].sets.size());
                std::vector<std::string> keys(sets);
                for (int i = 0; i < sets; ++i) {
                    KeyBuilder key('B');
                    key.code(col.codes[m][i]);
                    key.multiset(sorted_codes(col.half[m + 1], index[s].children[m][i]));
                    keys[i] = key.take();
                }
                for (int i = 0; i < sets; ++i)
                    col.half[m][i] = table.intern(keys[i]);
            }
        }

        // forward sweep: layer 1 keeps its half-step code, higher layers
        // hash own half-step with the already-updated codes below
        std::vector<std::vector<std::vector<Code>>> next(count);
        for (size_t s = 0; s < count; ++s) {
            next[s].resize(sgs[s]->layer_count());
            if (sgs[s]->layer_count() > 0)
                next[s][0] = colorings[s].half[0];
        }
        for (int m = 1; m < max_layers; ++m) {
            for (size_t s = 0; s < count; ++s) {
                if (m >= sgs[s]->layer_count())
                    continue;
                auto& col = colorings[s];
                int sets = static_cast<int>(sgs[s]->layers[m].sets.size());
                std::vector<std::string> keys(sets);
                for (int i = 0; i < sets; ++i) {
                    KeyBuilder key('F');
                    key.code(col.half[m][i]);
                    key.multiset(sorted_codes(next[s][m - 1], index[s].parents[m - 1][i]));
                    keys[i] = key.take();
                }
                next[s][m].resize(sets);
                for (int i = 0; i < sets; ++i)
                    next[s][m][i] = table.intern(keys[i]);
            }
        }
        for (size_t s = 0; s < count; ++s)
            colorings[s].codes = std::move(next[s]);
    }

    // distinct (layer, code) classes across all graphs; refinement only
    // splits, so an unchanged count means an unchanged partition
    std::size_t joint_class_count() const {
        std::size_t total = 0;
        for (int m = 0; m < max_layers; ++m) {
            std::unordered_set<Code> codes;
            for (size_t s = 0; s < sgs.size(); ++s)
                if (m < sgs[s]->layer_count())
                    codes.insert(colorings[s].codes[m].begin(), colorings[s].codes[m].end());
            total += codes.size();
        }
        return total;
    }
};

std::vector<LayerHistogram> layer_histograms(const SuperGraph& sg, const Coloring& col) {
    std::vector<LayerHistogram> out(sg.layer_count());
    for (int m = 0; m < sg.layer_count(); ++m) {
        std::map<Code, std::uint64_t> hist;
        for (Code code : col.codes[m])
            ++hist[code];
        out[m].assign(hist.begin(), hist.end());
    }
    return out;
}

// per-(size, components, code) multiplicities of two jointly refined
// graphs; equal histograms mean the iteration cannot tell them apart
bool strata_histograms_equal(const SuperGraph& a, const Coloring& ca, const SuperGraph& b,
                             const Coloring& cb) {
    std::map<std::tuple<int, int, Code>, std::pair<std::uint64_t, std::uint64_t>> counts;
    for (int m = 0; m < a.layer_count(); ++m)
        for (size_t i = 0; i < ca.codes[m].size(); ++i)
            ++counts[{m, a.layers[m].components[i], ca.codes[m][i]}].first;
    for (int m = 0; m < b.layer_count(); ++m)
        for (size_t i = 0; i < cb.codes[m].size(); ++i)
            ++counts[{m, b.layers[m].components[i], cb.codes[m][i]}].second;
    for (const auto& [key, pair] : counts)
        if (pair.first != pair.second)
            return false;
    return true;
}

} // namespace

std::vector<Coloring> init_colors_joint(const std::vector<GraphBundle>& graphs, ColorTable& table,
                                        int threads) {
    std::vector<Coloring> colorings;
    int max_layers = 0;
    for (const auto& bundle : graphs) {
        colorings.push_back(blank_coloring(*bundle.sg));
        max_layers = std::max(max_layers, bundle.sg->layer_count());
    }

    for (int m = 0; m < max_layers; ++m) {
        for (size_t s = 0; s < graphs.size(); ++s) {
            const auto& bundle = graphs[s];
            if (m >= bundle.sg->layer_count())
                continue;
            const auto& layer = bundle.sg->layers[m];
            int sets = static_cast<int>(layer.sets.size());
            std::vector<std::string> keys(sets);
            parallel_for(sets, threads, [&](int i) {
                if (layer.components[i] == 1) {
                    Certificate cert =
                        canonical_certificate(induced_subgraph(*bundle.graph, layer.sets[i]));
                    KeyBuilder key('C');
                    key.bytes(cert.bytes);
                    keys[i] = key.take();
                } else {
                    const auto& parts = bundle.cm->parts.at(SetRef{m, i});
                    std::vector<Code> part_codes;
                    part_codes.reserve(parts.size());
                    for (SetRef p : parts)
                        part_codes.push_back(colorings[s].codes[p.layer][p.index]);
                    std::sort(part_codes.begin(), part_codes.end());
                    KeyBuilder key('M');
                    key.multiset(part_codes);
                    keys[i] = key.take();
                }
            });
            for (int i = 0; i < sets; ++i)
                colorings[s].codes[m][i] = table.intern(keys[i]);
        }
    }
    return colorings;
}

Coloring init_colors(const ColoredGraph& g, const SuperGraph& sg, const ComponentMap& cm,
                     ColorTable& table, int threads) {
    auto colorings = init_colors_joint({GraphBundle{&g, &sg, &cm}}, table, threads);
    return std::move(colorings[0]);
}

void refine_step_joint(Schedule schedule, const std::vector<const SuperGraph*>& sgs,
                       std::vector<Coloring>& colorings, ColorTable& table) {
    Refiner refiner(sgs, colorings);
    refiner.step(schedule, table);
}

void refine_parallel(const SuperGraph& sg, Coloring& coloring, ColorTable& table) {
    std::vector<Coloring> cols{std::move(coloring)};
    refine_step_joint(Schedule::Parallel, {&sg}, cols, table);
    coloring = std::move(cols[0]);
}

void refine_sequential(const SuperGraph& sg, Coloring& coloring, ColorTable& table) {
    std::vector<Coloring> cols{std::move(coloring)};
    refine_step_joint(Schedule::Sequential, {&sg}, cols, table);
    coloring = std::move(cols[0]);
}

Fingerprint fingerprint_of(const SuperGraph& sg, const Coloring& coloring) {
    std::map<std::tuple<int, int, Code>, std::uint64_t> counts;
    for (int m = 0; m < sg.layer_count(); ++m)
        for (size_t i = 0; i < coloring.codes[m].size(); ++i)
            ++counts[{m + 1, sg.layers[m].components[i], coloring.codes[m][i]}];
    Fingerprint fp;
    for (const auto& [key, mult] : counts)
        fp.entries.push_back(
            {std::get<0>(key), std::get<1>(key), std::get<2>(key), mult});
    return fp;
}

Fingerprint graph_fingerprint(const RefinementTrace& trace) { return trace.fingerprint; }

RefinementTrace run_to_stable(const ColoredGraph& g, int k, int c, Schedule schedule,
                              std::optional<int> max_iters, int threads) {
    SuperGraph sg = build_supergraph(g, k, c);
    ComponentMap cm = build_component_map(sg);
    ColorTable table;

    RefinementTrace trace;
    trace.k = k;
    trace.c = c;
    trace.schedule = schedule;

    std::vector<Coloring> colorings =
        init_colors_joint({GraphBundle{&g, &sg, &cm}}, table, threads);
    Refiner refiner({&sg}, colorings);

    auto record = [&] {
        trace.histograms.push_back(layer_histograms(sg, colorings[0]));
        trace.code_history.push_back(colorings[0].codes);
    };
    record();

    int limit = max_iters.value_or(static_cast<int>(sg.total_sets()) + 1);
    std::size_t prev_classes = refiner.joint_class_count();
    trace.converged = false;
    for (int t = 1; t <= limit; ++t) {
        refiner.step(schedule, table);
        record();
        std::size_t classes = refiner.joint_class_count();
        if (classes == prev_classes) {
            trace.iterations_to_stable = t - 1;
            trace.converged = true;
            break;
        }
        prev_classes = classes;
    }
    if (!trace.converged)
        trace.iterations_to_stable = limit;

    trace.final_coloring = std::move(colorings[0]);
    trace.fingerprint = fingerprint_of(sg, trace.final_coloring);
    return trace;
}

DistinguishOutcome distinguish_outcome(const ColoredGraph& a, const ColoredGraph& b, int k, int c,
                                       Schedule schedule, std::optional<int> max_iters,
                                       int threads) {
    SuperGraph sga = build_supergraph(a, k, c);
    SuperGraph sgb = build_supergraph(b, k, c);
    ComponentMap cma = build_component_map(sga);
    ComponentMap cmb = build_component_map(sgb);
    ColorTable table;

    std::vector<Coloring> colorings = init_colors_joint(
        {GraphBundle{&a, &sga, &cma}, GraphBundle{&b, &sgb, &cmb}}, table, threads);

    DistinguishOutcome out;
    auto capture_layers = [&] {
        out.layers.clear();
        auto hists = layer_histograms(sga, colorings[0]);
        for (size_t m = 0; m < hists.size(); ++m)
            out.layers.emplace_back(static_cast<int>(m) + 1, std::move(hists[m]));
    };

    if (!strata_histograms_equal(sga, colorings[0], sgb, colorings[1])) {
        out.verdict.distinguished = true;
        out.verdict.iteration = 0;
        capture_layers();
        return out;
    }

    Refiner refiner({&sga, &sgb}, colorings);
    int limit = max_iters.value_or(static_cast<int>(sga.total_sets() + sgb.total_sets()) + 1);
    std::size_t prev_classes = refiner.joint_class_count();
    for (int t = 1; t <= limit; ++t) {
        refiner.step(schedule, table);
        if (!strata_histograms_equal(sga, colorings[0], sgb, colorings[1])) {
            out.verdict.distinguished = true;
            out.verdict.iteration = t;
            capture_layers();
            return out;
        }
        std::size_t classes = refiner.joint_class_count();
        if (classes == prev_classes) {
            out.verdict.iterations_to_stable = t - 1;
            capture_layers();
            return out;
        }
        prev_classes = classes;
    }
    out.verdict.iterations_to_stable = limit;
    capture_layers();
    return out;
}

Verdict distinguish(const ColoredGraph& a, const ColoredGraph& b, int k, int c, Schedule schedule,
                    std::optional<int> max_iters, int threads) {
    return distinguish_outcome(a, b, k, c, schedule, max_iters, threads).verdict;
}

} // namespace setwl
