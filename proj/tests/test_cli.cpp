#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "setwl/cli.hpp"
#include "test_util.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int status;
    std::string out;
    std::string err;

    json parsed() const { return json::parse(out); }
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = setwl::run_command(args, out, err);
    return {status, out.str(), err.str()};
}

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() / ("setwl_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }

    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = dir / name;
        std::ofstream(p) << content;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

const char* kP3 = "3 2\n0 1\n1 2\n";
const char* kC6 = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
const char* kTwoTriangles = "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n";

} // namespace

TEST_CASE("build subcommand") {
    TempDir tmp;
    std::string p3 = tmp.file("p3.el", kP3);

    CliResult stats = run({"build", "--input", p3, "--k", "2", "--c", "1", "--stats"});
    REQUIRE(stats.status == 0);
    json parsed = stats.parsed();
    CHECK(parsed["layers"] == json({3, 2}));
    CHECK(parsed["bipartite"] == json({4}));

    CliResult full = run({"build", "--input", p3, "--k", "2", "--c", "2"});
    REQUIRE(full.status == 0);
    json sg = full.parsed();
    CHECK(sg["n"] == 3);
    CHECK(sg["k"] == 2);
    CHECK(sg["c"] == 2);
    REQUIRE(sg["layers"].size() == 2);
    CHECK(sg["layers"][0]["m"] == 1);
    CHECK(sg["layers"][0]["sets"] == json({{0}, {1}, {2}}));
    CHECK(sg["layers"][1]["sets"] == json({{0, 1}, {0, 2}, {1, 2}}));
    CHECK(sg["layers"][1]["components"] == json({1, 2, 1}));
    // triples hold parent index, child index, added node
    for (const auto& e : sg["bipartite"][0]["edges"]) {
        auto parent = sg["layers"][0]["sets"][e[0].get<int>()].get<std::vector<int>>();
        auto child = sg["layers"][1]["sets"][e[1].get<int>()].get<std::vector<int>>();
        parent.push_back(e[2].get<int>());
        std::sort(parent.begin(), parent.end());
        CHECK(parent == child);
    }
    CHECK(sg["componentMap"].size() == 1);
    CHECK(sg["componentMap"][0]["layer"] == 2);
    CHECK(sg["initColors"].size() == 2);
    // {0,1} and {1,2} share an init color, {0,2} differs
    auto init = sg["initColors"][1].get<std::vector<unsigned>>();
    CHECK(init[0] == init[2]);
    CHECK(init[0] != init[1]);

    SUBCASE("--out writes the export and prints stats") {
        TempDir tmp2;
        std::string p3b = tmp2.file("p3.el", kP3);
        std::string out_path = tmp2.path("sg.json");
        CliResult r = run({"build", "--input", p3b, "--k", "2", "--c", "1", "--out", out_path});
        REQUIRE(r.status == 0);
        CHECK(fs::exists(out_path));
        std::ifstream in(out_path);
        json exported = json::parse(in);
        CHECK(exported["n"] == 3);
    }
}

TEST_CASE("refine subcommand") {
    TempDir tmp;
    std::string c6 = tmp.file("c6.el", kC6);
    CliResult r = run({"refine", "--input", c6, "--k", "2", "--c", "1"});
    REQUIRE(r.status == 0);
    json trace = r.parsed();
    CHECK(trace["k"] == 2);
    CHECK(trace["schedule"] == "sequential");
    CHECK(trace["converged"] == true);
    CHECK(trace["layers"].size() == 2);
    CHECK(trace["layers"][0]["classes"] == 1);
    CHECK(trace["layers"][1]["classes"] == 1);
    CHECK(trace["fingerprint"].size() == 2);
}

TEST_CASE("distinguish subcommand") {
    TempDir tmp;
    std::string c6 = tmp.file("c6.el", kC6);
    std::string tt = tmp.file("tt.el", kTwoTriangles);

    CliResult r = run({"distinguish", "--a", c6, "--b", tt, "--k", "3", "--c", "2"});
    REQUIRE(r.status == 0);
    json verdict = r.parsed();
    CHECK(verdict["verdict"] == "distinguished");
    CHECK(verdict["iteration"] == 0);
    CHECK(verdict["k"] == 3);
    CHECK(verdict["c"] == 2);
    CHECK(verdict["schedule"] == "sequential");
    CHECK(verdict["layers"].is_array());

    SUBCASE("verdict never drives the exit status") {
        CliResult same = run({"distinguish", "--a", c6, "--b", c6, "--k", "2", "--c", "1"});
        CHECK(same.status == 0);
        CHECK(same.parsed()["verdict"] == "indistinguishable");
        CHECK(same.parsed()["iteration"].is_null());
    }
    SUBCASE("reference variant") {
        CliResult ref = run({"distinguish", "--a", c6, "--b", tt, "--k", "1", "--variant",
                             "1-wl"});
        REQUIRE(ref.status == 0);
        CHECK(ref.parsed()["verdict"] == "indistinguishable");
        CHECK(ref.parsed()["variant"] == "1-wl");
    }
    SUBCASE("sweep over c") {
        // the triangles already show up among connected 3-sets, so c = 1 wins
        CliResult sweep = run({"distinguish", "--a", c6, "--b", tt, "--k", "3", "--c", "2",
                               "--sweep-c"});
        REQUIRE(sweep.status == 0);
        json parsed = sweep.parsed();
        REQUIRE(parsed["sweep"].size() == 3);
        CHECK(parsed["smallest_distinguishing_c"] == 1);
        for (const auto& entry : parsed["sweep"])
            CHECK(entry["verdict"] == "distinguished");
    }
}

TEST_CASE("cfi subcommand writes the pair") {
    TempDir tmp;
    std::string prefix = tmp.path("cfi3");
    CliResult r = run({"cfi", "--k", "3", "--out-prefix", prefix});
    REQUIRE(r.status == 0);
    CHECK(r.parsed()["n"] == 12);
    REQUIRE(fs::exists(prefix + "_a.el"));
    REQUIRE(fs::exists(prefix + "_b.el"));
    REQUIRE(fs::exists(prefix + ".json"));

    // the emitted files load as colored graphs and are told apart
    CliResult verdict = run({"distinguish", "--a", prefix + "_a.el", "--b", prefix + "_b.el",
                             "--k", "3", "--c", "2"});
    REQUIRE(verdict.status == 0);
    CHECK(verdict.parsed()["verdict"] == "distinguished");

    std::ifstream sidecar_in(prefix + ".json");
    json sidecar = json::parse(sidecar_in);
    CHECK(sidecar["a"]["vertices"].size() == 12);
    CHECK(sidecar["b"]["vertices"].size() == 12);
}

TEST_CASE("bench subcommand") {
    CliResult r = run({"bench", "--n", "30", "--k", "5"});
    REQUIRE(r.status == 0);
    json parsed = r.parsed();
    CHECK(parsed["dense"]["setwl_supernodes"] == "174436");
    CHECK(parsed["dense"]["setwl_bipartite_edges"] == "835200");
    CHECK(parsed["dense"]["node_ratio"] == 139);
    CHECK(parsed["dense"]["edge_ratio"] == 2182);
    CHECK(parsed["dense"]["bound_holds"] == true);

    SUBCASE("timed run on an input graph") {
        TempDir tmp;
        std::string c6 = tmp.file("c6.el", kC6);
        CliResult timed = run({"bench", "--input", c6, "--k", "3", "--c", "2"});
        REQUIRE(timed.status == 0);
        json t = timed.parsed();
        CHECK(t.contains("build_ms"));
        CHECK(t.contains("refine_ms"));
        CHECK(t["stats"]["layers"].is_array());
        CHECK(t["dense"]["n"] == 6);
    }
}

TEST_CASE("oracle subcommands") {
    TempDir tmp;
    std::string c6 = tmp.file("c6.el", kC6);
    std::string tt = tmp.file("tt.el", kTwoTriangles);
    std::string k4 = tmp.file("k4.el", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");

    CliResult iso = run({"oracle", "iso", "--a", c6, "--b", tt});
    REQUIRE(iso.status == 0);
    CHECK(iso.parsed()["isomorphic"] == false);

    CliResult count = run({"oracle", "count", "--input", k4, "--pattern", "cycle4"});
    REQUIRE(count.status == 0);
    CHECK(count.parsed()["count"] == 3);

    CliResult sets = run({"oracle", "kcsets", "--input", tmp.file("p3.el", kP3), "--k", "2",
                          "--c", "1"});
    REQUIRE(sets.status == 0);
    CHECK(sets.parsed()["sets"] == json({{0}, {1}, {2}, {0, 1}, {1, 2}}));
}

TEST_CASE("canon subcommand") {
    TempDir tmp;
    std::string a = tmp.file("a.el", "3 3\n0 1\n1 2\n0 2\n");
    std::string b = tmp.file("b.el", "3 3\n2 0\n0 1\n1 2\n");
    CliResult ra = run({"canon", "--input", a});
    CliResult rb = run({"canon", "--input", b});
    REQUIRE(ra.status == 0);
    REQUIRE(rb.status == 0);
    CHECK(ra.parsed()["certificate"] == rb.parsed()["certificate"]);

    std::string p3 = tmp.file("p3.el", kP3);
    CliResult rc = run({"canon", "--input", p3});
    CHECK(rc.parsed()["certificate"] != ra.parsed()["certificate"]);
}

TEST_CASE("exit codes") {
    TempDir tmp;
    CHECK(run({"nonsense"}).status == 2);
    CHECK(run({"build", "--k", "2", "--c", "1"}).status == 2);  // missing --input
    CHECK(run({"build", "--input", tmp.path("absent.el"), "--k", "2", "--c", "1"}).status == 1);
    std::string p3 = tmp.file("p3.el", kP3);
    CHECK(run({"build", "--input", p3, "--k", "2", "--c", "5"}).status == 1);  // c > k
    std::string bad = tmp.file("bad.el", "2 1\n0 0\n");
    CHECK(run({"build", "--input", bad, "--k", "2", "--c", "1"}).status == 1);  // self-loop
}

TEST_CASE("identical invocations produce identical bytes") {
    TempDir tmp;
    std::string c6 = tmp.file("c6.el", kC6);
    std::string tt = tmp.file("tt.el", kTwoTriangles);
    std::vector<std::string> args{"distinguish", "--a", c6, "--b", tt, "--k", "3", "--c", "2"};
    CliResult first = run(args);
    CliResult second = run(args);
    CHECK(first.out == second.out);

    CliResult threaded = run({"distinguish", "--a", c6, "--b", tt, "--k", "3", "--c", "2",
                              "--threads", "4"});
    CHECK(threaded.out == first.out);
}
