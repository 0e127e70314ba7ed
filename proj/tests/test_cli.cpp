#include "turnpike/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "turnpike_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = turnpike::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& id) { return std::string(TURNPIKE_DATA_DIR) + "/corpus/" + id + ".json"; }

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("cli reports on valid documents") {
    auto v = run({"validate", corpus("ex1")});
    REQUIRE(v.code == turnpike::kExitOk);
    CHECK(parse(v)["valid"] == true);
    CHECK(parse(v)["decision_rules"] == 4);

    auto s = run({"solve", corpus("ex1"), "--alpha", "1/2"});
    REQUIRE(s.code == 0);
    auto j = parse(s);
    CHECK(j["value"]["x1"] == "1");
    CHECK(j["value"]["x2"] == "2");
    CHECK(j["policy"]["label"] == "phi4");

    auto t = run({"turnpike", corpus("ex1"), "--alpha", "1/4"});
    REQUIRE(t.code == 0);
    CHECK(parse(t)["N"] == 2);

    auto p = run({"partition", corpus("ex4")});
    REQUIRE(p.code == 0);
    bool found = false;
    auto points = parse(p)["irregular_points"];
    for (const auto& pt : points)
        if (pt["point"]["value"] == "1/2") {
            found = true;
            CHECK(pt["class"] == "break");
        }
    CHECK(found);

    auto c = run({"conditions", corpus("ex5"), "--point", "2/3"});
    REQUIRE(c.code == 0);
    CHECK(parse(c)["left"]["bound"] == "bounded");

    auto sd = run({"small-discount", corpus("ex6")});
    REQUIRE(sd.code == 0);
    CHECK(parse(sd)["Delta"].back() == "1/2");
}

TEST_CASE("cli output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"partition", corpus("ex2")}, {"turnpike", corpus("ex2"), "--interval", "0,9/10"}}) {
        auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("cli input errors exit with code 2") {
    CHECK(run({"validate", "/nonexistent/file.json"}).code == turnpike::kExitInputError);
    CHECK(run({"solve", corpus("ex1"), "--alpha", "3/2"}).code == 2);
    CHECK(run({"solve", corpus("ex1"), "--alpha", "half"}).code == 2);
    CHECK(run({"solve", corpus("ex1"), "--alpha", "0.5"}).out == run({"solve", corpus("ex1"), "--alpha", "1/2"}).out);
    CHECK(run({"conditions", corpus("ex4"), "--point", "1/4"}).code == 2);
    CHECK(run({"bogus"}).code == 2);

    auto dir = std::filesystem::temp_directory_path() / "turnpike_cli_test";
    std::filesystem::create_directories(dir);
    auto bad = dir / "bad.json";
    std::ofstream(bad) << "{\"format_version\": 1, \"states\": [\"x\"]}";
    auto r = run({"validate", bad.string()});
    CHECK(r.code == 2);
    CHECK(parse(r)["valid"] == false);
    CHECK(parse(r)["error"].get<std::string>().find("actions") != std::string::npos);
}

TEST_CASE("cli cap errors exit with code 3") {
    setenv("TURNPIKE_ENUM_CAP", "2", 1);
    auto r = run({"partition", corpus("ex1")});
    unsetenv("TURNPIKE_ENUM_CAP");
    REQUIRE(r.code == turnpike::kExitCapExceeded);
    auto j = parse(r);
    CHECK(j["error"] == "cap exceeded");
    CHECK(j["cap"] == "enumeration");
    CHECK(j["requested"] == 4);
    CHECK(j["limit"] == 2);
    CHECK(run({"partition", corpus("ex1")}).code == 0);
}

TEST_CASE("cli sweep writes one row per grid point") {
    auto path = std::filesystem::temp_directory_path() / "turnpike_sweep_test.csv";
    auto r = run({"sweep", corpus("ex1"), "--interval", "0,1/2", "--steps", "3", "--out", path.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "alpha,N,num_optimal_rules,in_interval_id");
    CHECK(lines[1].rfind("1/8,2,", 0) == 0);
    CHECK(lines[2].rfind("1/4,2,", 0) == 0);
    CHECK(lines[3].rfind("3/8,2,", 0) == 0);
}

TEST_CASE("cli corpus subcommand emits parseable documents") {
    auto r = run({"corpus", "--id", "ex3", "--m", "5"});
    REQUIRE(r.code == 0);
    CHECK(parse(r)["states"].size() == 5);
    CHECK(run({"corpus", "--id", "ex9"}).code == 2);
}
