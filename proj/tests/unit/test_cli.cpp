#include "fixtures.hpp"

#include "newtonpoly/cli.hpp"
#include "newtonpoly/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>

using namespace newtonpoly;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    for (auto& a : args)
        if (a.rfind("@", 0) == 0) a = fixture_path(a.substr(1));
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("newtonpoly_cli_" + name);
    std::ofstream(p) << content;
    return p.string();
}

const char* kQuadrics = "2 0 0\n0 2 0\n0 0 2\n1 1 0\n1 0 1\n0 1 1\n";

}  // namespace

TEST_CASE("support") {
    auto r = run({"support", "--sparse", "@disc.poly", "--w", "1,0,1"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["results"][0]["h"] == 2);
    r = run({"support", "--slp", "@const5.slp", "--w", "1,1"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["results"][0]["h"] == 0);
    r = run({"support", "--sparse", "@f1.poly", "--w", "1,1,1,1,1,1", "--w", "1,0,0,0,0,0"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["results"][0]["h"] == 3);
    CHECK(j["results"][1]["h"] == 1);
    r = run({"support", "--sparse", "@disc.poly", "--w", "1/2,0,1", "--format", "text"});
    CHECK(r.out == "h(1/2,0,1) = 3/2\n");
}

TEST_CASE("vertex, eval backend") {
    const auto quad = temp_file("quadrics.txt", kQuadrics);
    auto r = run({"vertex", "--sparse", "@disc.poly", "--w=-1.2,0.4,3.7", "--t", "45", "--superset", quad, "--delta",
                  "2", "--lambda", "2"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["beta"] == json::array({1, 0, 1}));
    CHECK(j["ratio"].get<double>() == doctest::Approx(2.864).epsilon(0.005 / 2.864));
    r = run({"vertex", "--sparse", "@disc.poly", "--w", "1.2,-0.4,-3.7", "--t", "45", "--superset", quad, "--delta",
             "2", "--lambda", "2", "--format", "csv"});
    CHECK(r.out == "0,2,0\n");
    // default t is twice the threshold
    r = run({"vertex", "--sparse", "@disc.poly", "--w=-1.2,0.4,3.7", "--superset", quad, "--delta", "2", "--lambda", "2"});
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["t"].get<double>() == doctest::Approx(2 * j["threshold_t"].get<double>()));
    const auto mono = temp_file("mono.poly", "3 : 2 1 3\n");
    r = run({"vertex", "--sparse", mono, "--w", "5,-2,7", "--adaptive", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "2,1,3\n");
}

TEST_CASE("vertex, witness backend") {
    auto r = run({"vertex", "--witness-config", "@quad_witness.json", "--w", "1,1"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["beta"] == json::array({2, 0}));
    CHECK(j["certificate"]["diverging"] == 0);
    r = run({"vertex", "--witness-config", "@quad_witness.json", "--w=-1,-1"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["beta"] == json::array({0, 0}));
    r = run({"vertex", "--witness-config", "@quad_witness.json", "--w", "0,1", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("path_id,t,re_s,im_s,residual\n", 0) == 0);
}

TEST_CASE("reconstruct") {
    auto r = run({"reconstruct", "--sparse", "@f1.poly", "--backend", "eval", "--adaptive", "--jobs", "2"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["vertices"].size() == 5);
    CHECK(j["facets"].size() == 6);
    CHECK(j["complete"] == true);
    CHECK(j["unconfirmed"].empty());
    // byte-identical under the same seed, regardless of jobs
    CHECK(run({"reconstruct", "--sparse", "@f1.poly", "--adaptive", "--jobs", "1"}).out == r.out);

    const auto c = temp_file("const.poly", "7 : 0 0\n");
    r = run({"reconstruct", "--sparse", c, "--adaptive", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "0,0\n");

    const auto quad = temp_file("quadrics.txt", kQuadrics);
    r = run({"reconstruct", "--sparse", "@disc.poly", "--superset", quad, "--delta", "2", "--lambda", "2", "--format",
             "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "0,2,0\n1,0,1\n");

    r = run({"reconstruct", "--witness-config", "@quad_witness.json", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "0,0\n0,1\n2,0\n");

    const auto out = temp_file("out.json", "");
    r = run({"reconstruct", "--sparse", "@disc.poly", "--adaptive", "--out", out});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    CHECK(json::parse(in)["vertices"].size() == 2);
}

TEST_CASE("hull, lattice, isom") {
    const auto one = temp_file("one.txt", "1 2 3\n");
    auto r = run({"hull", "--points", one});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["dim"] == 0);
    CHECK(j["vertices"] == json::array({json::array({1, 2, 3})}));
    const auto sq = temp_file("sq.json", "[[0,0],[2,0],[0,2],[2,2],[1,1]]");
    r = run({"hull", "--points", sq, "--format", "csv"});
    CHECK(r.out == "0,0\n0,2\n2,0\n2,2\n");

    r = run({"lattice", "--polytope", "@delta4.json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["count"] == 65);
    r = run({"lattice", "--polytope", "@delta.json", "--format", "csv"});
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);

    r = run({"isom", "--p", "@delta.json", "--q", "@bipyramid.json"});
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["isomorphic"] == true);
    CHECK(j["witness"]["vertex_map"].size() == 5);
    r = run({"isom", "--p", "@delta.json", "--q", "@delta4.json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["isomorphic"] == false);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"support", "--w", "1"}).code == 2);
    CHECK(run({"support", "--sparse", "/nonexistent.poly", "--w", "1"}).code == 2);
    const auto bad = temp_file("bad.poly", "1 : x y\n");
    auto r = run({"support", "--sparse", bad, "--w", "1,1"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
    const auto junk = temp_file("junk.json", "{\"n\": 2, \"vertices\": [[0, 0], [1]]}");
    CHECK(run({"lattice", "--polytope", junk}).code == 2);
    CHECK(run({"hull", "--points", temp_file("junk.txt", "1 a\n")}).code == 2);
    CHECK(run({"vertex", "--sparse", "@disc.poly", "--w", "1,0,1"}).code == 2);
    const auto quad = temp_file("quadrics.txt", kQuadrics);
    // (1,1,1) ties every quadric: not generic
    CHECK(run({"vertex", "--sparse", "@disc.poly", "--w", "1,1,1", "--superset", quad, "--delta", "2", "--lambda", "2"})
              .code == 3);
    CHECK(run({"support", "--sparse", "@disc.poly", "--w", "1,0,1", "--format", "yaml"}).code == 2);
    CHECK(run({"support", "--help"}).code == 0);
}

TEST_CASE("parse_point_list") {
    CHECK(parse_point_list("# header\n1, 2\n3 4\n\n") == std::vector<LatticePoint>{{1, 2}, {3, 4}});
    CHECK(parse_point_list("[[1,-2]]") == std::vector<LatticePoint>{{1, -2}});
    CHECK(parse_point_list("{\"n\":1,\"vertices\":[[5]]}") == std::vector<LatticePoint>{{5}});
    CHECK_THROWS_AS(parse_point_list("[[1.5]]"), Error);
}
