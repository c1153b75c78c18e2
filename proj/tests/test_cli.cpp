#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "arbor/cli.hpp"
#include "arbor/json_io.hpp"

using namespace arbor;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string error_code_of(const CliResult& r) {
    Json j = Json::parse(r.err);
    return j.at("error").at("code").get<std::string>();
}

// f = x - x^2/2 in divided-power storage, truncated at 5.
const char* kHalfSquareFixture = R"({
  "kind": "comm",
  "convention": "divided-power",
  "dimension": 1,
  "truncation": 5,
  "components": [
    {"coeffs": [{"alpha": [1], "value": "1"}, {"alpha": [2], "value": "-1"}]}
  ]
})";

} // namespace

TEST_CASE("invert fixture produces the double factorials") {
    CliResult r = run_cli({"invert", "--path", "tree", "-"}, kHalfSquareFixture);
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["kind"] == "comm");
    const Json& coeffs = j["components"][0]["coeffs"];
    REQUIRE(coeffs.size() == 5);
    std::vector<std::string> values;
    for (const Json& e : coeffs) values.push_back(e["value"].get<std::string>());
    CHECK(values == std::vector<std::string>{"1", "1", "3", "15", "105"});

    // Both inversion paths emit byte-identical output.
    CliResult rec = run_cli({"invert", "--path", "recursive", "-"}, kHalfSquareFixture);
    REQUIRE(rec.exit_code == 0);
    CHECK(rec.out == r.out);

    // Emitted JSON is a fixed point of parse + re-emit.
    CliResult again = run_cli({"invert", "--path", "recursive", "-"}, r.out);
    REQUIRE(again.exit_code == 0);
    Json reparsed = Json::parse(r.out);
    CommMap m = comm_map_from_json(reparsed);
    CHECK(to_json(m).dump(2) + "\n" == r.out);
}

TEST_CASE("trees count verbs") {
    CliResult r =
        run_cli({"trees", "count", "--family", "proper", "--leaves", "5", "--dim", "1"});
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["count"] == 236);

    CliResult lst = run_cli({"trees", "list", "--family", "proper", "--dim", "1", "--alpha", "3"});
    REQUIRE(lst.exit_code == 0);
    Json l = Json::parse(lst.out);
    CHECK(l["count"] == 4);
    CHECK(l["trees"].size() == 4);

    CliResult word = run_cli(
        {"trees", "count", "--family", "final", "--dim", "3", "--root", "2", "--word", "3,1,1"});
    REQUIRE(word.exit_code == 0);
    CHECK(Json::parse(word.out)["count"] == 3 + 27 + 9 + 9);

    CliResult fern = run_cli({"trees", "count", "--family", "fern", "--dim", "2", "--alpha",
                              "0,1", "--gens", "2", "--terminal", "2"});
    REQUIRE(fern.exit_code == 0);
    CHECK(Json::parse(fern.out)["count"] == 4);

    CliResult alt = run_cli({"trees", "list", "--family", "alternating", "--dim", "1",
                             "--alpha", "2"});
    REQUIRE(alt.exit_code == 0);
    CHECK(Json::parse(alt.out)["count"] == 1);
}

TEST_CASE("app verbs") {
    CliResult h = run_cli({"app", "hermite", "--k", "4"});
    REQUIRE(h.exit_code == 0);
    CHECK(Json::parse(h.out) == Json::parse("[3, 0, -6, 0, 1]"));

    CliResult b = run_cli({"app", "bell", "--k", "5"});
    REQUIRE(b.exit_code == 0);
    CHECK(Json::parse(b.out)["bell"] == 52);

    CliResult s = run_cli({"app", "stirling", "--k", "3", "--j", "2"});
    REQUIRE(s.exit_code == 0);
    CHECK(Json::parse(s.out)["stirling"] == 3);

    CliResult c = run_cli({"app", "count-trees", "--k", "4"});
    REQUIRE(c.exit_code == 0);
    Json cj = Json::parse(c.out);
    CHECK(cj["by_series"] == 26);
    CHECK(cj["by_enumeration"] == 26);

    const char* gauss = R"({"kind":"comm-series","convention":"divided-power",
        "dimension":1,"truncation":6,"coeffs":[{"alpha":[2],"value":"1"}]})";
    CliResult m = run_cli({"app", "moments", "-"}, gauss);
    REQUIRE(m.exit_code == 0);
    Json mj = Json::parse(m.out);
    REQUIRE(mj["coeffs"].size() == 3);
    CHECK(mj["coeffs"][2]["alpha"] == Json::parse("[6]"));
    CHECK(mj["coeffs"][2]["value"] == "15");

    const char* expfix = R"({"kind":"comm-series","convention":"divided-power",
        "dimension":1,"truncation":3,
        "coeffs":[{"alpha":[0],"value":"1"},{"alpha":[1],"value":"1"},
                  {"alpha":[2],"value":"1"},{"alpha":[3],"value":"1"}]})";
    CliResult rec = run_cli({"app", "reciprocal", "-"}, expfix);
    REQUIRE(rec.exit_code == 0);
    Json rj = Json::parse(rec.out);
    CHECK(rj["coeffs"][1]["value"] == "-1");
    CHECK(rj["coeffs"][2]["value"] == "1");
    CHECK(rj["coeffs"][3]["value"] == "-1");
}

TEST_CASE("compose and free verbs") {
    const char* ffix = R"({"kind":"comm","convention":"divided-power","dimension":1,
        "truncation":4,"components":[{"coeffs":[{"alpha":[2],"value":"2"}]}]})";
    // x^2 composed with itself twice is zero at truncation 4 except x^4.
    std::string path1 = "/tmp/arbor_test_f1.json";
    {
        std::ofstream file(path1);
        file << ffix;
    }
    CliResult r = run_cli({"compose", "--direct", path1, path1});
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["components"][0]["coeffs"].size() == 1);
    CHECK(j["components"][0]["coeffs"][0]["alpha"] == Json::parse("[4]"));
    CHECK(j["components"][0]["coeffs"][0]["value"] == "24");

    // The tree-sum flag emits byte-identical output.
    CliResult fdb = run_cli({"compose", "--fdb", path1, path1});
    REQUIRE(fdb.exit_code == 0);
    CHECK(fdb.out == r.out);

    const char* freefix = R"({"kind":"free","convention":"plain","dimension":1,
        "truncation":4,"components":[{"coeffs":[{"word":[1],"value":"1"},
        {"word":[1,1],"value":"-1"}]}]})";
    CliResult fi = run_cli({"free-invert", "-"}, freefix);
    REQUIRE(fi.exit_code == 0);
    Json fj = Json::parse(fi.out);
    CHECK(fj["components"][0]["coeffs"][3]["value"] == "5");
    // Free output is a serialization fixed point too.
    CHECK(to_json(free_map_from_json(fj)).dump(2) + "\n" == fi.out);

    const char* hfix = R"({"kind":"free-series","convention":"plain","dimension":4,
        "truncation":5,"coeffs":[{"word":[2,2,1,2,4],"value":"1"}]})";
    CliResult hd = run_cli({"hausdorff", "--var", "2", "-"}, hfix);
    REQUIRE(hd.exit_code == 0);
    Json hj = Json::parse(hd.out);
    REQUIRE(hj["coeffs"].size() == 2);
    CHECK(hj["coeffs"][0]["word"] == Json::parse("[2,1,2,4]"));
    CHECK(hj["coeffs"][0]["value"] == "2");
    CHECK(hj["coeffs"][1]["word"] == Json::parse("[2,2,1,4]"));
    CHECK(hj["coeffs"][1]["value"] == "1");
}

TEST_CASE("phi and fern-check verbs") {
    const char* hfix = R"({"kind":"comm","convention":"divided-power","dimension":1,
        "truncation":4,"components":[{"coeffs":[{"alpha":[2],"value":"1"}]}]})";
    CliResult r = run_cli({"phi", "-"}, hfix);
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    const Json& coeffs = j["components"][0]["coeffs"];
    REQUIRE(coeffs.size() == 3);
    CHECK(coeffs[0]["value"] == "-1");
    CHECK(coeffs[1]["value"] == "-3");
    CHECK(coeffs[2]["value"] == "-15");

    const char* nil = R"({"kind":"comm","convention":"divided-power","dimension":2,
        "truncation":3,"components":[{"coeffs":[{"alpha":[0,2],"value":"2"}]},
        {"coeffs":[]}]})";
    CliResult ok = run_cli({"fern-check", "--m", "2", "--bound", "2", "-"}, nil);
    REQUIRE(ok.exit_code == 0);
    CHECK(Json::parse(ok.out)["nilpotent"] == true);

    CliResult no = run_cli({"fern-check", "--m", "1", "--bound", "1", "--path", "fern", "-"}, nil);
    REQUIRE(no.exit_code == 0);
    Json nj = Json::parse(no.out);
    CHECK(nj["nilpotent"] == false);
    CHECK(nj["witness"]["i"] == 1);
    CHECK(nj["witness"]["j"] == 2);
    CHECK(nj["witness"]["alpha"] == Json::parse("[0,1]"));
    CHECK(nj["witness"]["value"] == "2");
}

TEST_CASE("error paths carry stable machine-readable codes") {
    CHECK(run_cli({}).exit_code == 2);

    CliResult unknown = run_cli({"frobnicate"});
    CHECK(unknown.exit_code == 2);
    CHECK(error_code_of(unknown) == "unknown-verb");

    CliResult malformed = run_cli({"invert", "-"}, "{not json");
    CHECK(malformed.exit_code == 2);
    CHECK(error_code_of(malformed) == "malformed-json");

    CliResult badkind = run_cli({"invert", "-"}, R"({"kind":"free","convention":"plain",
        "dimension":1,"truncation":2,"components":[{"coeffs":[]}]})");
    CHECK(badkind.exit_code == 2);
    CHECK(error_code_of(badkind) == "malformed-json");

    CliResult dim = run_cli({"invert", "-"}, R"({"kind":"comm","convention":"divided-power",
        "dimension":2,"truncation":2,"components":[{"coeffs":[{"alpha":[1],"value":"1"}]},
        {"coeffs":[]}]})");
    CHECK(dim.exit_code == 2);
    CHECK(error_code_of(dim) == "dimension-mismatch");

    CliResult trunc = run_cli({"invert", "-"}, R"({"kind":"comm","convention":"divided-power",
        "dimension":1,"truncation":2,"components":[{"coeffs":[{"alpha":[3],"value":"1"}]}]})");
    CHECK(trunc.exit_code == 2);
    CHECK(error_code_of(trunc) == "truncation-mismatch");

    CliResult singular = run_cli({"invert", "--path", "reduce", "-"},
                                 R"({"kind":"comm","convention":"divided-power","dimension":2,
        "truncation":2,"components":[{"coeffs":[{"alpha":[1,0],"value":"1"}]},
        {"coeffs":[{"alpha":[1,0],"value":"1"}]}]})");
    CHECK(singular.exit_code == 2);
    CHECK(error_code_of(singular) == "singular-linear-term");

    // Caps exceeded exit with status 3.
    CliResult caps =
        run_cli({"trees", "count", "--family", "proper", "--leaves", "9", "--dim", "1"});
    CHECK(caps.exit_code == 3);
    CHECK(error_code_of(caps) == "resource-limit");

    // Raised caps make the same request valid.
    CliResult raised = run_cli({"trees", "count", "--family", "final", "--gens", "2",
                                "--leaves", "9", "--dim", "1", "--max-leaves", "9",
                                "--max-degree", "12"});
    CHECK(raised.exit_code == 0);

    CliResult philinear = run_cli({"phi", "-"}, R"({"kind":"comm","convention":"divided-power",
        "dimension":1,"truncation":3,"components":[{"coeffs":[{"alpha":[1],"value":"1"}]}]})");
    CHECK(philinear.exit_code == 2);
    CHECK(error_code_of(philinear) == "invalid-argument");

    CliResult missing = run_cli({"invert", "/nonexistent/path.json"});
    CHECK(missing.exit_code == 2);
    CHECK(error_code_of(missing) == "io-error");

    CliResult usage = run_cli({"invert"});
    CHECK(usage.exit_code == 2);
    CHECK(error_code_of(usage) == "usage-error");

    CliResult help = run_cli({"--help"});
    CHECK(help.exit_code == 0);
}
