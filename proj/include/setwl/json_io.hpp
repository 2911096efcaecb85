#ifndef SETWL_JSON_IO_HPP
#define SETWL_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "setwl/cfi.hpp"
#include "setwl/refine.hpp"
#include "setwl/supergraph.hpp"
#include "setwl/wl_reference.hpp"

namespace setwl {

using Json = nlohmann::ordered_json;

// Full supergraph export: layer sets with component counts, bipartite
// triples [parent, child, added], the component map, and optionally the
// certificate-based initial colors aligned with the layers.
Json supergraph_json(const SuperGraph& sg, const ComponentMap& cm,
                     const std::optional<std::vector<std::vector<Code>>>& init_colors);

Json stats_json(const SupergraphStats& stats);
Json dense_counts_json(int n, int k, const DenseCounts& counts);

Json trace_json(const RefinementTrace& trace);
Json fingerprint_json(const Fingerprint& fp);

// {"verdict", "iteration", "k", "c", "schedule", "layers", "iterations_to_stable"}
Json verdict_json(const Verdict& verdict, int k, int c, Schedule schedule,
                  const std::vector<std::pair<int, LayerHistogram>>& layers);
Json reference_verdict_json(const Verdict& verdict, WlVariant variant, int k);

Json cfi_sidecar_json(const CfiGraph& cfi);

} // namespace setwl

#endif
