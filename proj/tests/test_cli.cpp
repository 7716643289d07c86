#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using namespace plab;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::vector<json> lines;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r{run_cli(args, out, err), {}};
    std::istringstream in(out.str());
    for (std::string line; std::getline(in, line);) {
        INFO(line);
        REQUIRE_NOTHROW(r.lines.push_back(json::parse(line)));
    }
    return r;
}

}  // namespace

TEST_CASE("verify coxeter") {
    auto r = run({"verify", "--system", "d6", "--check", "coxeter"});
    CHECK(r.code == 0);
    REQUIRE(r.lines.size() == 1);
    CHECK(r.lines[0]["check"] == "coxeter");
    CHECK(r.lines[0]["status"] == "PASS");
    for (const char* k : {"system", "subject", "millis"}) CHECK(r.lines[0].contains(k));
}

TEST_CASE("ansatz compare") {
    auto r = run({"ansatz", "--derive", "d6", "--compare"});
    CHECK(r.code == 0);
    REQUIRE(r.lines.size() == 1);
    CHECK(r.lines[0]["dimension"] == 1);
    CHECK(r.lines[0]["status"] == "PASS");
}

TEST_CASE("mutated generator fails with a witness") {
    auto r = run({"verify", "--system", "d6", "--check", "backlund", "--mutate", "s3:drop-alpha2-shift"});
    CHECK(r.code == 1);
    REQUIRE(r.lines.size() == 1);
    CHECK(r.lines[0]["status"] == "FAIL");
    CHECK(r.lines[0].contains("witness"));
    CHECK(r.lines[0]["witness"] != "0");
}

TEST_CASE("usage errors exit 2 with a JSON line") {
    for (auto args : std::vector<std::vector<std::string>>{{"verify", "--system", "p7"},
                                                           {"verify", "--check", "nothing"},
                                                           {"verify", "--bogus"},
                                                           {"frobnicate"},
                                                           {},
                                                           {"verify", "--mutate", "s9:drop-alpha2-shift"},
                                                           {"verify", "--mutate", "s3:twist"},
                                                           {"holomorphy", "--system", "d6", "--chart", "r9"},
                                                           {"holomorphy", "--system", "b6a"},
                                                           {"ansatz", "--derive", "p9"},
                                                           {"confluence", "--run", "d6-to-a4"},
                                                           {"equivalence", "--run", "d6-to-a5"},
                                                           {"integrate", "--system", "d6auto", "--h", "0"},
                                                           {"integrate", "--system", "d6auto", "--init", "1,2,3"},
                                                           {"integrate", "--system", "d6auto", "--param", "zz=1"},
                                                           {"export"}}) {
        CAPTURE(args.size() ? args[0] : "");
        auto r = run(args);
        CHECK(r.code == 2);
        REQUIRE(r.lines.size() == 1);
        CHECK(r.lines[0]["status"] == "ERROR");
    }
}

TEST_CASE("holomorphy, confluence, equivalence") {
    auto h = run({"holomorphy", "--system", "a4"});
    CHECK(h.code == 0);
    CHECK(h.lines.size() == 5);
    auto one = run({"holomorphy", "--system", "d6", "--chart", "r0", "--mode", "field"});
    CHECK(one.code == 0);
    CHECK(run({"confluence", "--run", "d6-to-a5"}).code == 0);
    CHECK(run({"confluence", "--run", "p6-to-p5"}).code == 0);
    auto e = run({"equivalence", "--run", "d6-to-b6a"});
    CHECK(e.code == 0);
    CHECK(e.lines.size() == 9);
}

TEST_CASE("integrate writes CSV and reports drift") {
    std::string csv = "plab_cli_test.csv";
    auto r = run({"integrate", "--system", "d6auto", "--param", "a0=1/7", "--param", "a1=1/9", "--param", "a2=1/11",
                  "--param", "a3=1/13", "--param", "a4=1/17", "--param", "a5=1/19", "--param", "eta=2", "--csv", csv});
    CHECK(r.code == 0);
    REQUIRE(r.lines.size() == 1);
    CHECK(r.lines[0]["steps"] == 1000);
    CHECK(r.lines[0]["drift"].get<double>() < 1e-9);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x,y,z,w,H");
    std::size_t rows = 0;
    for (std::string l; std::getline(in, l);) ++rows;
    CHECK(rows == 1001);
    std::remove(csv.c_str());

    // crossing the pole t = 1 of D6
    auto g = run({"integrate", "--system", "d6", "--t0", "0.5", "--t1", "1.5", "--h", "1e-2"});
    CHECK(g.code == 1);
    REQUIRE(g.lines.size() == 1);
    CHECK(g.lines[0]["status"] == "FAIL");
}

TEST_CASE("export") {
    auto s = run({"export", "--system", "a4"});
    CHECK(s.code == 0);
    REQUIRE(s.lines.size() == 1);
    CHECK(s.lines[0]["field"].size() == 4);
    auto m = run({"export", "--map", "s2"});
    CHECK(m.code == 0);
    CHECK(m.lines[0]["images"][0] == "(x*y + a2)/y");
    CHECK(m.lines[0]["poisson_series"] == true);
}

TEST_CASE("output file") {
    std::string path = "plab_cli_test.jsonl";
    std::ostringstream out, err;
    CHECK(run_cli({"-o", path, "verify", "--system", "a4", "--check", "coxeter"}, out, err) == 0);
    CHECK(out.str().empty());
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(json::parse(line)["status"] == "PASS");
    std::remove(path.c_str());
}
