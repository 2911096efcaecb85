#include "setwl/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "setwl/certificate.hpp"
#include "setwl/cfi.hpp"
#include "setwl/json_io.hpp"
#include "setwl/oracle.hpp"
#include "setwl/refine.hpp"
#include "setwl/supergraph.hpp"
#include "setwl/wl_reference.hpp"

namespace setwl {

namespace {

ColoredGraph load_input(const std::string& path, const std::string& format) {
    if (format.empty())
        return load_graph_file(path);
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_graph(buf.str(),
                      format == "graph6" ? GraphFormat::Graph6 : GraphFormat::EdgeList);
}

void emit(std::ostream& out, const Json& json) { out << json.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << content;
}

long peak_rss_kb() {
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line))
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream parse(line.substr(6));
            long kb = -1;
            parse >> kb;
            return kb;
        }
    return -1;
}

Pattern pattern_from_name(const std::string& name) {
    if (name == "triangle")
        return Pattern::Triangle;
    if (name == "tailed_triangle")
        return Pattern::TailedTriangle;
    if (name == "star3")
        return Pattern::Star3;
    if (name == "cycle4")
        return Pattern::Cycle4;
    throw std::invalid_argument("unknown pattern: " + name);
}

struct Options {
    std::string input, input_b, format, out_path, out_prefix;
    std::string schedule = "sequential";
    std::string variant = "1-wl";
    std::string pattern = "triangle";
    int k = 2;
    int c = 1;
    int n = 0;
    int threads = 1;
    std::optional<int> max_iters;
    bool stats_only = false;
    bool no_init_colors = false;
    bool sweep_c = false;
    bool deterministic = true;
};

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"(k,c)(<=)-SetWL supergraph refinement toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    int max_iters_flag = -1;

    app.add_option("--threads", opt.threads, "worker threads for certificate computation")
        ->envname("SETWL_THREADS");
    app.add_flag("--deterministic,!--no-deterministic", opt.deterministic,
                 "serial code assignment (always on; flag kept for compatibility)");

    auto add_kc = [&](CLI::App* cmd) {
        cmd->add_option("--k", opt.k, "maximum set size")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--c", opt.c, "maximum component count")->check(CLI::PositiveNumber);
    };

    CLI::App* build = app.add_subcommand("build", "build and export a supergraph");
    build->add_option("--input", opt.input)->required();
    build->add_option("--format", opt.format)->check(CLI::IsMember({"edge-list", "graph6"}));
    add_kc(build);
    build->add_flag("--stats", opt.stats_only, "print layer/edge counts only");
    build->add_option("--out", opt.out_path, "write the supergraph JSON to a file");
    build->add_flag("--no-init-colors", opt.no_init_colors);

    CLI::App* refine = app.add_subcommand("refine", "run refinement to stability");
    refine->add_option("--input", opt.input)->required();
    refine->add_option("--format", opt.format)->check(CLI::IsMember({"edge-list", "graph6"}));
    add_kc(refine);
    refine->add_option("--schedule", opt.schedule)
        ->check(CLI::IsMember({"parallel", "sequential"}));
    refine->add_option("--max-iters", max_iters_flag);

    CLI::App* dist = app.add_subcommand("distinguish", "jointly refine two graphs");
    dist->add_option("--a", opt.input)->required();
    dist->add_option("--b", opt.input_b)->required();
    add_kc(dist);
    dist->add_option("--schedule", opt.schedule)
        ->check(CLI::IsMember({"parallel", "sequential"}));
    dist->add_option("--max-iters", max_iters_flag);
    dist->add_flag("--sweep-c", opt.sweep_c, "also report the smallest distinguishing c");
    dist->add_option("--variant", opt.variant,
                     "reference algorithm instead of the supergraph engine")
        ->check(CLI::IsMember({"setwl", "1-wl", "k-wl", "k-fwl", "k-multiset-wl", "k-set-fwl",
                               "k-set-wl"}))
        ->default_val("setwl");

    CLI::App* cfi = app.add_subcommand("cfi", "generate a CFI graph pair");
    cfi->add_option("--k", opt.k)->required()->check(CLI::Range(3, 64));
    cfi->add_option("--out-prefix", opt.out_prefix, "write <prefix>_a.el, <prefix>_b.el, <prefix>.json");

    CLI::App* bench = app.add_subcommand("bench", "dense counts and timed build+refine");
    bench->add_option("--n", opt.n)->check(CLI::PositiveNumber);
    bench->add_option("--k", opt.k)->required()->check(CLI::PositiveNumber);
    bench->add_option("--c", opt.c)->check(CLI::PositiveNumber);
    bench->add_option("--input", opt.input, "time build+refine on this graph");
    bench->add_option("--schedule", opt.schedule)
        ->check(CLI::IsMember({"parallel", "sequential"}));

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force ground truth");
    oracle->require_subcommand(1);
    CLI::App* oracle_iso = oracle->add_subcommand("iso", "exact isomorphism test");
    oracle_iso->add_option("--a", opt.input)->required();
    oracle_iso->add_option("--b", opt.input_b)->required();
    CLI::App* oracle_count = oracle->add_subcommand("count", "substructure count");
    oracle_count->add_option("--input", opt.input)->required();
    oracle_count->add_option("--pattern", opt.pattern)
        ->required()
        ->check(CLI::IsMember({"triangle", "tailed_triangle", "star3", "cycle4"}));
    CLI::App* oracle_sets = oracle->add_subcommand("kcsets", "enumerate (k,c)(<=)-sets");
    oracle_sets->add_option("--input", opt.input)->required();
    add_kc(oracle_sets);

    CLI::App* canon = app.add_subcommand("canon", "canonical certificate of a small graph");
    canon->add_option("--input", opt.input)->required();
    canon->add_option("--format", opt.format)->check(CLI::IsMember({"edge-list", "graph6"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }
    if (max_iters_flag >= 0)
        opt.max_iters = max_iters_flag;

    try {
        if (*build) {
            ColoredGraph g = load_input(opt.input, opt.format);
            SuperGraph sg = build_supergraph(g, opt.k, opt.c);
            SupergraphStats stats = supergraph_stats(sg);
            if (opt.stats_only) {
                emit(out, stats_json(stats));
                return 0;
            }
            ComponentMap cm = build_component_map(sg);
            std::optional<std::vector<std::vector<Code>>> init;
            if (!opt.no_init_colors) {
                ColorTable table;
                init = init_colors(g, sg, cm, table, opt.threads).codes;
            }
            Json json = supergraph_json(sg, cm, init);
            if (!opt.out_path.empty()) {
                write_file(opt.out_path, json.dump(2) + "\n");
                emit(out, stats_json(stats));
            } else {
                emit(out, json);
            }
        } else if (*refine) {
            ColoredGraph g = load_input(opt.input, opt.format);
            RefinementTrace trace = run_to_stable(g, opt.k, opt.c,
                                                  schedule_from_name(opt.schedule),
                                                  opt.max_iters, opt.threads);
            emit(out, trace_json(trace));
        } else if (*dist) {
            ColoredGraph a = load_input(opt.input, "");
            ColoredGraph b = load_input(opt.input_b, "");
            if (opt.variant != "setwl") {
                Verdict v = distinguish_reference(a, b, wl_variant_from_name(opt.variant), opt.k,
                                                  opt.max_iters);
                emit(out, reference_verdict_json(v, wl_variant_from_name(opt.variant), opt.k));
            } else {
                Schedule schedule = schedule_from_name(opt.schedule);
                DistinguishOutcome outcome =
                    distinguish_outcome(a, b, opt.k, opt.c, schedule, opt.max_iters, opt.threads);
                Json json = verdict_json(outcome.verdict, opt.k, opt.c, schedule, outcome.layers);
                if (opt.sweep_c) {
                    Json sweep = Json::array();
                    Json smallest = nullptr;
                    for (int c = 1; c <= opt.k; ++c) {
                        Verdict v = distinguish(a, b, opt.k, c, schedule, opt.max_iters,
                                                opt.threads);
                        Json entry;
                        entry["c"] = c;
                        entry["verdict"] = v.distinguished ? "distinguished"
                                                           : "indistinguishable";
                        sweep.push_back(std::move(entry));
                        if (v.distinguished && smallest.is_null())
                            smallest = c;
                    }
                    json["sweep"] = std::move(sweep);
                    json["smallest_distinguishing_c"] = std::move(smallest);
                }
                emit(out, json);
            }
        } else if (*cfi) {
            auto [ga, gb] = cfi_pair(opt.k);
            Json sidecar;
            sidecar["k"] = opt.k;
            sidecar["a"] = cfi_sidecar_json(ga);
            sidecar["b"] = cfi_sidecar_json(gb);
            Json report;
            report["k"] = opt.k;
            report["n"] = ga.graph.node_count();
            report["edges"] = ga.graph.edge_count();
            if (!opt.out_prefix.empty()) {
                write_file(opt.out_prefix + "_a.el", write_edge_list(ga.graph));
                write_file(opt.out_prefix + "_b.el", write_edge_list(gb.graph));
                write_file(opt.out_prefix + ".json", sidecar.dump(2) + "\n");
                report["files"] = Json::array({opt.out_prefix + "_a.el", opt.out_prefix + "_b.el",
                                               opt.out_prefix + ".json"});
            } else {
                report["a"] = write_edge_list(ga.graph);
                report["b"] = write_edge_list(gb.graph);
                report["sidecar"] = std::move(sidecar);
            }
            emit(out, report);
        } else if (*bench) {
            Json report;
            if (!opt.input.empty()) {
                ColoredGraph g = load_input(opt.input, "");
                auto start = std::chrono::steady_clock::now();
                SuperGraph sg = build_supergraph(g, opt.k, opt.c);
                ComponentMap cm = build_component_map(sg);
                auto built = std::chrono::steady_clock::now();
                RefinementTrace trace = run_to_stable(g, opt.k, opt.c,
                                                      schedule_from_name(opt.schedule),
                                                      std::nullopt, opt.threads);
                auto done = std::chrono::steady_clock::now();
                auto ms = [](auto a, auto b) {
                    return std::chrono::duration<double, std::milli>(b - a).count();
                };
                report["build_ms"] = ms(start, built);
                report["refine_ms"] = ms(built, done);
                report["iterations_to_stable"] = trace.iterations_to_stable;
                report["stats"] = stats_json(supergraph_stats(sg));
                report["peak_rss_kb_best_effort"] = peak_rss_kb();
                opt.n = g.node_count();
            }
            if (opt.n > 0)
                report["dense"] = dense_counts_json(opt.n, opt.k, dense_counts(opt.n, opt.k));
            emit(out, report);
        } else if (*oracle) {
            if (*oracle_iso) {
                ColoredGraph a = load_input(opt.input, "");
                ColoredGraph b = load_input(opt.input_b, "");
                Json json;
                json["isomorphic"] = brute_force_isomorphic(a, b);
                emit(out, json);
            } else if (*oracle_count) {
                ColoredGraph g = load_input(opt.input, "");
                Json json;
                json["pattern"] = opt.pattern;
                json["count"] = count_pattern(g, pattern_from_name(opt.pattern));
                emit(out, json);
            } else {
                ColoredGraph g = load_input(opt.input, "");
                auto sets = enumerate_kc_sets(g, opt.k, opt.c);
                Json json;
                json["k"] = opt.k;
                json["c"] = opt.c;
                Json list = Json::array();
                for (const NodeSet& s : sets)
                    list.push_back(s.members());
                json["sets"] = std::move(list);
                emit(out, json);
            }
        } else if (*canon) {
            ColoredGraph g = load_input(opt.input, opt.format);
            Certificate cert = canonical_certificate(g);
            Json json;
            json["n"] = g.node_count();
            json["certificate"] = cert.hex();
            emit(out, json);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace setwl
