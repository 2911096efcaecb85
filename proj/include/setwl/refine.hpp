#ifndef SETWL_REFINE_HPP
#define SETWL_REFINE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "setwl/color_table.hpp"
#include "setwl/graph.hpp"
#include "setwl/supergraph.hpp"

namespace setwl {

enum class Schedule { Parallel, Sequential };

const char* schedule_name(Schedule s);
Schedule schedule_from_name(const std::string& name);

// Current color codes per supernode, plus the cached half-step codes of
// the latest iteration.
struct Coloring {
    std::vector<std::vector<Code>> codes;  // [layer][set index]
    std::vector<std::vector<Code>> half;
};

// Sorted histogram of final supernode colors, keyed by set size and
// component count. Comparable across graphs only within a joint run.
struct FingerprintEntry {
    int m = 0;
    int components = 0;
    Code code = 0;
    std::uint64_t multiplicity = 0;

    bool operator==(const FingerprintEntry&) const = default;
    auto operator<=>(const FingerprintEntry&) const = default;
};

struct Fingerprint {
    std::vector<FingerprintEntry> entries;
    bool operator==(const Fingerprint&) const = default;
};

using LayerHistogram = std::vector<std::pair<Code, std::uint64_t>>;  // sorted by code

struct RefinementTrace {
    int k = 0;
    int c = 0;
    Schedule schedule = Schedule::Sequential;
    int iterations_to_stable = 0;  // index of the first iteration whose partition is final
    bool converged = true;
    std::vector<std::vector<LayerHistogram>> histograms;      // [iteration][layer]
    std::vector<std::vector<std::vector<Code>>> code_history; // [iteration][layer][set]
    Coloring final_coloring;
    Fingerprint fingerprint;
};

struct Verdict {
    bool distinguished = false;
    int iteration = -1;            // first differing iteration; -1 if indistinguishable
    int iterations_to_stable = 0;  // of the joint run (when indistinguishable)
};

// One graph prepared for (joint) refinement.
struct GraphBundle {
    const ColoredGraph* graph = nullptr;
    const SuperGraph* sg = nullptr;
    const ComponentMap* cm = nullptr;
};

// Certificate-based initialization with the component shortcut: a
// single-component set is coded by the canonical certificate of its induced
// subgraph; a multi-component set by the sorted multiset of its parts'
// codes, without ever certifying the full induced subgraph.
std::vector<Coloring> init_colors_joint(const std::vector<GraphBundle>& graphs, ColorTable& table,
                                        int threads = 1);
Coloring init_colors(const ColoredGraph& g, const SuperGraph& sg, const ComponentMap& cm,
                     ColorTable& table, int threads = 1);

// One full refinement iteration. Parallel: every set first gets the
// half-step code (multiset of superset colors), then the full update from
// its own, half-step, and subset colors. Sequential: a backward sweep from
// layer k-1 down to 1 computes half-step codes from already-updated
// half-steps above, then a forward sweep from layer 2 up to k computes new
// codes from already-updated codes below.
void refine_step_joint(Schedule schedule, const std::vector<const SuperGraph*>& sgs,
                       std::vector<Coloring>& colorings, ColorTable& table);
void refine_parallel(const SuperGraph& sg, Coloring& coloring, ColorTable& table);
void refine_sequential(const SuperGraph& sg, Coloring& coloring, ColorTable& table);

RefinementTrace run_to_stable(const ColoredGraph& g, int k, int c, Schedule schedule,
                              std::optional<int> max_iters = std::nullopt, int threads = 1);

Fingerprint fingerprint_of(const SuperGraph& sg, const Coloring& coloring);
Fingerprint graph_fingerprint(const RefinementTrace& trace);

// Joint refinement of both graphs against one shared table; reports the
// first iteration (0 = initialization) whose per-(size, components)
// histograms differ, or indistinguishable at joint stability.
Verdict distinguish(const ColoredGraph& a, const ColoredGraph& b, int k, int c, Schedule schedule,
                    std::optional<int> max_iters = std::nullopt, int threads = 1);

// Same, also returning graph A's per-layer histograms at the last
// compared iteration (the differing one, or the stable state).
struct DistinguishOutcome {
    Verdict verdict;
    std::vector<std::pair<int, LayerHistogram>> layers;
};
DistinguishOutcome distinguish_outcome(const ColoredGraph& a, const ColoredGraph& b, int k, int c,
                                       Schedule schedule,
                                       std::optional<int> max_iters = std::nullopt,
                                       int threads = 1);

} // namespace setwl

#endif
