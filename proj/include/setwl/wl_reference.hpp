#ifndef SETWL_WL_REFERENCE_HPP
#define SETWL_WL_REFERENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setwl/color_table.hpp"
#include "setwl/graph.hpp"
#include "setwl/refine.hpp"

namespace setwl {

// Reference color-refinement variants at desk scale. KSetWl is the direct
// update rule over node sets (every set of size <= k), kept as an oracle
// for the supergraph engine's two-step rewrite.
enum class WlVariant { OneWl, KWl, KFwl, KMultisetWl, KSetFwl, KSetWl };

const char* wl_variant_name(WlVariant v);
WlVariant wl_variant_from_name(const std::string& name);

// Joint refinement run over one or more graphs sharing one code table.
// states[g][i] is the i-th colored unit of graph g: an ordered k-tuple for
// the tuple variants, a sorted k-multiset or m-set otherwise.
struct ReferenceRun {
    WlVariant variant = WlVariant::OneWl;
    int k = 1;
    int iterations_to_stable = 0;
    bool converged = true;
    std::vector<std::vector<std::vector<Node>>> states;
    std::vector<std::vector<std::vector<Code>>> code_history;  // [iteration][graph][state]

    const std::vector<std::vector<Code>>& final_codes() const { return code_history.back(); }
};

ReferenceRun run_reference_joint(const std::vector<const ColoredGraph*>& graphs,
                                 WlVariant variant, int k,
                                 std::optional<int> max_iters = std::nullopt);

// Single-graph runs to stability.
ReferenceRun one_wl(const ColoredGraph& g);
ReferenceRun k_wl(const ColoredGraph& g, int k);
ReferenceRun k_fwl(const ColoredGraph& g, int k);
ReferenceRun k_multiset_wl(const ColoredGraph& g, int k);
ReferenceRun k_set_fwl(const ColoredGraph& g, int k);
ReferenceRun k_set_wl(const ColoredGraph& g, int k);

// Sorted (code, count) histogram of one graph at one iteration.
std::vector<std::pair<Code, std::uint64_t>> reference_histogram(const ReferenceRun& run,
                                                                int iteration, int graph);

Verdict distinguish_reference(const ColoredGraph& a, const ColoredGraph& b, WlVariant variant,
                              int k, std::optional<int> max_iters = std::nullopt);

} // namespace setwl

#endif
