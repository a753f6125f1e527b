#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "homlab/cli.hpp"
#include "homlab/graph_io.hpp"

using namespace homlab;

namespace {

struct Run {
    int code;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = "homlab_cli_test_" + name;
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST_CASE("graph specs") {
    CHECK(parse_graph_spec("k3").num_edges() == 3);
    CHECK(parse_graph_spec("k2x3").num_edges() == 6);
    CHECK(parse_graph_spec("c5").num_edges() == 5);
    CHECK(parse_graph_spec("star3").num_vertices() == 4);
    CHECK(parse_graph_spec("empty4").num_edges() == 0);
    CHECK(parse_graph_spec("petersen").num_vertices() == 10);
    CHECK_THROWS(parse_graph_spec("no-such-graph"));
}

TEST_CASE("cfi subcommands") {
    Run b = run({"cfi", "build", "--gamma", "2", "--base", "k3", "--u", "1,0,0"});
    CHECK(b.code == 0);
    CHECK(b.json()["n"] == 6);
    Run t = run({"cfi", "twist", "--gamma", "2", "--base", "k3", "--edge", "0-1"});
    CHECK(t.code == 0);
    CHECK(t.json()["target_u"] == "1,1,0");
    CHECK(t.json()["verified"] == true);
    CHECK(run({"cfi", "twist", "--base", "p3", "--edge", "0-2"}).code == 1);
    CHECK(run({"cfi", "twist", "--edge", "zero-one"}).code == 2);
    Run n = run({"cfi", "nice", "--n", "1"});
    CHECK(n.code == 0);
    CHECK(n.json()["planar"] == true);
    CHECK(n.json()["nice"] == "nice");
}

TEST_CASE("hom subcommands") {
    Run one = run({"hom", "count", "k1", "k1"});
    CHECK(one.code == 0);
    CHECK(one.json()["counts"]["brute"] == "1");
    Run three = run({"hom", "count", "c4", "--base", "k3", "--gamma", "3", "--method", "brute,cfi,tw"});
    CHECK(three.code == 0);
    auto counts = three.json()["counts"];
    CHECK(counts["brute"] == counts["cfi"]);
    CHECK(counts["brute"] == counts["tw"]);
    CHECK(run({"hom", "count", "k2", "k3", "--method", "cfi"}).code == 2);
    CHECK(run({"hom", "count", "k2", "k3", "--method", "magic"}).code == 2);
    Run mod = run({"hom", "count", "k2", "k3", "--modulus", "4"});
    CHECK(mod.json()["counts"]["brute"] == "2");
    Run d = run({"hom", "distinguish", "--gamma", "2", "--base", "k4", "--u", "1,0,0,0", "--family", "planar",
                 "--max-size", "6"});
    CHECK(d.code == 0);
    CHECK(d.json()["found"] == true);
    CHECK(d.json()["pattern_isomorphic_to_base"] == true);
    Run none = run({"hom", "distinguish", "k1", "empty3", "--modulus", "2", "--max-size", "5"});
    CHECK(none.json()["found"] == false);
}

TEST_CASE("verify subcommand") {
    Run ok = run({"verify", "nice"});
    CHECK(ok.code == 0);
    CHECK(ok.json()["status"] == "pass");
    Run bad = run({"verify", "unknown-id"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("unknown") != std::string::npos);
    Run csv = run({"--csv", "verify", "nice"});
    CHECK(csv.out.rfind("id,instance,expected,actual,status,millis\n", 0) == 0);
    CHECK(run({"verify", "planar-witness"}).out == run({"verify", "planar-witness"}).out);
}

TEST_CASE("game, wl and reduce subcommands") {
    std::string g = temp_file("g.json", graph_to_json(Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}})).dump());
    std::string h = temp_file("h.txt", "6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n");
    Run wl1 = run({"wl", "--k", "1", g, h});
    CHECK(wl1.json()["distinguished"] == false);
    Run wl2 = run({"wl", "--k", "2", g, h});
    CHECK(wl2.json()["distinguished"] == true);
    CHECK(wl2.json().contains("rounds"));
    Run r = run({"reduce", "--p", "2", "empty3"});
    CHECK(r.code == 0);
    CHECK(r.json()["vertices"] == 1);
    Run game = run({"game", "solve-tiny", "k3", "p3", "--k", "3"});
    CHECK(game.code == 0);
    CHECK(game.json()["status"] == "spoiler_wins");
    nlohmann::json transcript{{"a", graph_to_json(Graph(2))}, {"b", graph_to_json(Graph(3))}, {"k", 2},
                              {"primes", {2}}, {"rounds", nlohmann::json::array()}};
    std::string tp = temp_file("t.json", transcript.dump());
    Run v = run({"game", "validate-transcript", tp});
    CHECK(v.code == 0);
    CHECK(v.json()["spoiler_won"] == true);
    for (const auto& p : {g, h, tp}) std::remove(p.c_str());
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"hom", "count"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
