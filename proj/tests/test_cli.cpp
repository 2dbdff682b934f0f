#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geolog/json_io.hpp"

#include "fixtures.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace geolog;
using namespace geolog::fixtures;

namespace {

std::string bin_path() {
    const char* p = std::getenv("GEOLOG_BIN");
    REQUIRE(p != nullptr);
    return p;
}

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + bin_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string scratch_file(const std::string& name, const std::string& text) {
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                       "/geolog_cli_" + name;
    std::ofstream out(path);
    REQUIRE(bool(out));
    out << text;
    return path;
}

const char* kGermInput = R"({
  "fan": {
    "lattice_rank": 2,
    "rays": [[-1, 3], [0, 1], [1, 0]],
    "cones": [[0, 1], [1, 2]],
    "relative_support": {
      "lattice_rank": 2,
      "rays": [[-1, 3], [1, 0]],
      "cones": [[0, 1]],
      "map": [[1, 0], [0, 1]]
    }
  },
  "components": [{"coefficients": ["0", "1", "0"], "id": "E"}]
})";

const char* kPlaneInput = R"({
  "fan": {
    "lattice_rank": 2,
    "rays": [[1, 0], [0, 1], [-1, -1]],
    "cones": [[0, 1], [0, 2], [1, 2]]
  }
})";

const char* kCremonaInput = R"({
  "surface": {
    "rank": 4,
    "gram": [["1","0","0","0"],["0","-1","0","0"],["0","0","-1","0"],["0","0","0","-1"]],
    "canonical": ["-3","1","1","1"],
    "curves": [["0","1","0","0"],["0","0","1","0"],["0","0","0","1"],
               ["1","-1","-1","0"],["1","-1","0","-1"],["1","0","-1","-1"]],
    "labels": ["e1","e2","e3","l12","l13","l23"]
  },
  "components": [
    {"class": ["4","0","0","0"], "id": "D1"},
    {"class": ["8","-4","-4","-4"], "id": "D2"}
  ]
})";

}  // namespace

TEST_CASE("fan validation accepts good fans and rejects bad files") {
    std::string good = scratch_file("p2.json", kPlaneInput);
    CliResult res = run_cli("fan validate " + good);
    CHECK(res.code == 0);
    Json j = Json::parse(res.out);
    CHECK(j.at("ok") == true);
    CHECK(j.at("rays") == 3);

    std::string bad =
        scratch_file("bad.json",
                     R"({"fan": {"lattice_rank": 2, "rays": [[1,0],[2,0]], "cones": [[0,1]]}})");
    CHECK(run_cli("fan validate " + bad).code == 1);

    CHECK(run_cli("fan validate /nonexistent.json").code == 1);
}

TEST_CASE("the relative geography report has three chambers and the exact wall") {
    std::string in = scratch_file("germ.json", kGermInput);
    CliResult res = run_cli("geography " + in);
    REQUIRE(res.code == 0);
    Json j = Json::parse(res.out);
    CHECK(j.at("chambers") == 3);

    // the interior wall, in primitive normal form, is 3a = 1
    bool found = false;
    for (const auto& w : j.at("walls"))
        if (vec_from_json(w.at("normal")) == QVec{Rat(3)} &&
            rat_from_json(w.at("offset")) == 1)
            found = true;
    CHECK(found);

    // byte-identical reruns
    CliResult again = run_cli("geography " + in);
    CHECK(res.out == again.out);
}

TEST_CASE("sampled verification respects the seed and the thread cap") {
    std::string in = scratch_file("germ.json", kGermInput);
    CliResult res = run_cli("geography " + in + " --verify 25 --seed 11",
                            "GEOLOG_THREADS=2 ");
    CHECK(res.code == 0);
    CliResult again = run_cli("geography " + in + " --verify 25 --seed 11",
                              "GEOLOG_THREADS=1 ");
    CHECK(res.out == again.out);
}

TEST_CASE("a nef divisor produces a trace with zero surgeries") {
    std::string in = scratch_file("p2.json", kPlaneInput);
    CliResult res = run_cli("mmp " + in + " --divisor 1,1,1");
    REQUIRE(res.code == 0);
    Json j = Json::parse(res.out);
    CHECK(j.at("step_count") == 0);
    CHECK(j.at("fibration") == false);
    CHECK(vec_from_json(j.at("final_divisor")) == QVec(3, Rat(1)));
}

TEST_CASE("cones and chambers reports parse and match the library") {
    std::string in = scratch_file("p2.json", kPlaneInput);
    CliResult res = run_cli("cones " + in);
    REQUIRE(res.code == 0);
    Json j = Json::parse(res.out);
    ConeReport rep = positive_cones(projective_plane());
    CHECK(mat_from_json(j.at("nef").at("rays")) == rep.nef_div.rays);

    res = run_cli("chambers " + in);
    REQUIRE(res.code == 0);
    j = Json::parse(res.out);
    CHECK(j.at("count") == mori_chambers(projective_plane()).size());
}

TEST_CASE("zariski splits agree with the library on both categories") {
    std::string in = scratch_file("p2.json", kPlaneInput);
    CliResult res = run_cli("zariski " + in + " --divisor 2,0,0");
    REQUIRE(res.code == 0);
    Json j = Json::parse(res.out);
    QVec mobile = vec_from_json(j.at("mobile"));
    QVec exceptional = vec_from_json(j.at("exceptional"));
    CHECK(add(mobile, exceptional) == QVec{Rat(2), Rat(0), Rat(0)});

    std::string surf = scratch_file("cremona.json", kCremonaInput);
    res = run_cli("zariski " + surf + " --divisor 1,0,0,2");
    REQUIRE(res.code == 0);
    j = Json::parse(res.out);
    QVec pos = vec_from_json(j.at("positive"));
    QVec neg = vec_from_json(j.at("negative"));
    CHECK(add(pos, neg) == QVec{Rat(1), Rat(0), Rat(0), Rat(2)});
    CHECK(neg != qvec_zero(4));
}

TEST_CASE("round-trip: serialized models and surfaces re-parse to equal values") {
    ToricModel germ = resolved_cone_surface(4);
    Json j = model_json(germ);
    ToricModel back = model_from_json(Json::parse(dump_canonical(j)));
    CHECK(same_model(germ, back));

    SurfaceLattice s = surface_from_json(Json::parse(kCremonaInput).at("surface"));
    SurfaceLattice again = surface_from_json(Json::parse(dump_canonical(surface_json(s))));
    CHECK(s.rank == again.rank);
    CHECK(s.gram == again.gram);
    CHECK(s.canonical_class == again.canonical_class);
    CHECK(s.curve_classes == again.curve_classes);
    CHECK(s.curve_labels == again.curve_labels);
}

TEST_CASE("separatrix output lists the pieces of the region boundary") {
    std::string in = scratch_file("cremona.json", kCremonaInput);
    CliResult res = run_cli("separatrix " + in);
    REQUIRE(res.code == 0);
    Json j = Json::parse(res.out);
    CHECK(j.at("pieces").size() > 0);
    CHECK(j.at("vertices").size() == j.at("projected").size());
}

TEST_CASE("factoring the quadratic involution through the command line") {
    Json in;
    in["source"] = Json::parse(kPlaneInput).at("fan");
    in["target"] = Json::parse(kPlaneInput).at("fan");
    in["map"] = Json::array({Json::array({"-1", "0"}), Json::array({"0", "-1"})});
    std::string path = scratch_file("cremona_map.json", dump_canonical(in));

    CliResult res = run_cli("links factor " + path);
    REQUIRE(res.code == 0);
    Json j = Json::parse(res.out);
    CHECK(j.at("link_count") == 4);
    for (const auto& l : j.at("links")) CHECK(l.at("cte") == true);
    CHECK(mat_from_json(j.at("composite")) ==
          QMat{QVec{Rat(-1), Rat(0)}, QVec{Rat(0), Rat(-1)}});
}

TEST_CASE("rendering: intervals and squares come out, higher dimensions need a slice") {
    std::string germ = scratch_file("germ.json", kGermInput);
    CliResult res = run_cli("render " + germ);
    REQUIRE(res.code == 0);
    CHECK(res.out.find("<svg") != std::string::npos);
    CHECK(res.out.find("<line") != std::string::npos);

    std::string surf = scratch_file("cremona.json", kCremonaInput);
    res = run_cli("render " + surf);
    REQUIRE(res.code == 0);
    CHECK(res.out.find("<polygon") != std::string::npos);
    CliResult again = run_cli("render " + surf);
    CHECK(res.out == again.out);

    // three components: no picture without a slice, exit 3 = unsupported
    Json three = Json::parse(kCremonaInput);
    three["components"].push_back(
        {{"class", Json::array({"3", "-1", "-1", "-1"})}, {"id", "D3"}});
    std::string path = scratch_file("three.json", dump_canonical(three));
    CHECK(run_cli("render " + path).code == 3);
    CHECK(run_cli("render " + path + " --slice 2=1/2").code == 0);
}
