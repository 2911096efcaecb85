#include "setwl/json_io.hpp"

namespace setwl {

Json supergraph_json(const SuperGraph& sg, const ComponentMap& cm,
                     const std::optional<std::vector<std::vector<Code>>>& init_colors) {
    Json out;
    out["n"] = sg.n;
    out["k"] = sg.k;
    out["c"] = sg.c;

    Json layers = Json::array();
    for (int m = 0; m < sg.layer_count(); ++m) {
        Json layer;
        layer["m"] = m + 1;
        Json sets = Json::array();
        for (const NodeSet& s : sg.layers[m].sets)
            sets.push_back(s.members());
        layer["sets"] = std::move(sets);
        layer["components"] = sg.layers[m].components;
        layers.push_back(std::move(layer));
    }
    out["layers"] = std::move(layers);

    Json bipartite = Json::array();
    for (size_t gap = 0; gap < sg.bipartite.size(); ++gap) {
        Json block;
        block["m"] = static_cast<int>(gap) + 1;
        Json edges = Json::array();
        for (const auto& e : sg.bipartite[gap])
            edges.push_back(Json::array({e.parent, e.child, e.added}));
        block["edges"] = std::move(edges);
        bipartite.push_back(std::move(block));
    }
    out["bipartite"] = std::move(bipartite);

    Json component_map = Json::array();
    for (const auto& [owner, parts] : cm.parts) {
        Json entry;
        entry["layer"] = owner.layer + 1;
        entry["index"] = owner.index;
        Json refs = Json::array();
        for (const SetRef& p : parts)
            refs.push_back(Json::array({p.layer + 1, p.index}));
        entry["parts"] = std::move(refs);
        component_map.push_back(std::move(entry));
    }
    out["componentMap"] = std::move(component_map);

    if (init_colors)
        out["initColors"] = *init_colors;
    return out;
}

Json stats_json(const SupergraphStats& stats) {
    Json out;
    out["layers"] = stats.layer_sets;
    out["bipartite"] = stats.bipartite_edges;
    out["total_sets"] = stats.total_sets;
    out["total_edges"] = stats.total_edges;
    return out;
}

Json dense_counts_json(int n, int k, const DenseCounts& counts) {
    Json out;
    out["n"] = n;
    out["k"] = k;
    out["setwl_supernodes"] = u128_to_string(counts.supernodes);
    out["setwl_bipartite_edges"] = u128_to_string(counts.bipartite_edges);
    out["kwl_supernodes"] = u128_to_string(counts.kwl_nodes);
    out["kwl_edges"] = u128_to_string(counts.kwl_edges);
    auto rounded_ratio = [](unsigned __int128 num, unsigned __int128 den) {
        return static_cast<std::uint64_t>((2 * num + den) / (2 * den));
    };
    out["node_ratio"] = rounded_ratio(counts.kwl_nodes, counts.supernodes);
    if (counts.bipartite_edges > 0)
        out["edge_ratio"] = rounded_ratio(counts.kwl_edges, counts.bipartite_edges);
    else
        out["edge_ratio"] = nullptr;
    out["bound_checked"] = counts.bound_checked;
    if (counts.bound_checked)
        out["bound_holds"] = counts.bound_holds;
    return out;
}

namespace {

Json histogram_json(const LayerHistogram& hist) {
    Json out = Json::array();
    for (const auto& [code, count] : hist)
        out.push_back(Json::array({code, count}));
    return out;
}

Json layers_json(const std::vector<std::pair<int, LayerHistogram>>& layers) {
    Json out = Json::array();
    for (const auto& [m, hist] : layers) {
        Json layer;
        layer["m"] = m;
        layer["classes"] = hist.size();
        layer["histogram"] = histogram_json(hist);
        out.push_back(std::move(layer));
    }
    return out;
}

} // namespace

Json fingerprint_json(const Fingerprint& fp) {
    Json out = Json::array();
    for (const auto& e : fp.entries)
        out.push_back(Json::array({e.m, e.components, e.code, e.multiplicity}));
    return out;
}

Json trace_json(const RefinementTrace& trace) {
    Json out;
    out["k"] = trace.k;
    out["c"] = trace.c;
    out["schedule"] = schedule_name(trace.schedule);
    out["iterations_to_stable"] = trace.iterations_to_stable;
    out["converged"] = trace.converged;
    std::vector<std::pair<int, LayerHistogram>> layers;
    if (!trace.histograms.empty()) {
        const auto& last = trace.histograms.back();
        for (size_t m = 0; m < last.size(); ++m)
            layers.emplace_back(static_cast<int>(m) + 1, last[m]);
    }
    out["layers"] = layers_json(layers);
    out["fingerprint"] = fingerprint_json(trace.fingerprint);
    return out;
}

Json verdict_json(const Verdict& verdict, int k, int c, Schedule schedule,
                  const std::vector<std::pair<int, LayerHistogram>>& layers) {
    Json out;
    out["verdict"] = verdict.distinguished ? "distinguished" : "indistinguishable";
    if (verdict.distinguished)
        out["iteration"] = verdict.iteration;
    else
        out["iteration"] = nullptr;
    out["k"] = k;
    out["c"] = c;
    out["schedule"] = schedule_name(schedule);
    out["layers"] = layers_json(layers);
    out["iterations_to_stable"] = verdict.distinguished ? Json() : Json(verdict.iterations_to_stable);
    return out;
}

Json reference_verdict_json(const Verdict& verdict, WlVariant variant, int k) {
    Json out;
    out["verdict"] = verdict.distinguished ? "distinguished" : "indistinguishable";
    if (verdict.distinguished)
        out["iteration"] = verdict.iteration;
    else
        out["iteration"] = nullptr;
    out["variant"] = wl_variant_name(variant);
    out["k"] = k;
    out["iterations_to_stable"] = verdict.distinguished ? Json() : Json(verdict.iterations_to_stable);
    return out;
}

Json cfi_sidecar_json(const CfiGraph& cfi) {
    Json out;
    out["k"] = cfi.k;
    out["n"] = cfi.graph.node_count();
    out["edges"] = cfi.graph.edge_count();
    Json base_edges = Json::array();
    for (auto [u, v] : cfi.base_edges)
        base_edges.push_back(Json::array({u, v}));
    out["baseEdges"] = std::move(base_edges);
    Json vertices = Json::array();
    for (size_t id = 0; id < cfi.labels.size(); ++id) {
        const CfiVertex& label = cfi.labels[id];
        Json v;
        v["id"] = id;
        v["color"] = cfi.graph.color(static_cast<Node>(id));
        if (label.is_edge_vertex) {
            v["kind"] = "edge";
            v["baseEdge"] = label.base_edge;
            v["bit"] = label.bit;
        } else {
            v["kind"] = "node";
            v["baseNode"] = label.base_node;
            v["subsetMask"] = label.subset;
        }
        vertices.push_back(std::move(v));
    }
    out["vertices"] = std::move(vertices);
    return out;
}

} // namespace setwl
