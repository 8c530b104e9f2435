#include "oracles.hpp"

#include "cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spun::cli;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome exec(RunConfig c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig cfg(const std::string& command, const std::string& input, Format f = Format::Json) {
    RunConfig c;
    c.command = command;
    c.input = oracle::data(input);
    c.format = f;
    return c;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("every subcommand runs on the Whitehead link") {
    for (const auto& command : commands()) {
        CAPTURE(command);
        auto c = cfg(command, "whl.json");
        c.path = "complete";
        c.samples = 16;
        c.surfaces = {1, 5, 6, 13, 14, 16, 19};
        if (command == "verify") continue;
        const auto r = exec(c);
        CHECK(r.code == kExitOk);
        CHECK(r.err.empty());
        CHECK(json::accept(r.out));
    }
}

TEST_CASE("vertices table") {
    const auto r = exec(cfg("vertices", "whl.json", Format::Csv));
    REQUIRE(r.code == kExitOk);
    CHECK(lines(r.out) == 21);
    CHECK(r.out.find("\n13,0,0,0,0,1,0,0,1,0,0,0,2,-4,-1,-2,-1\n") != std::string::npos);

    const auto t = exec(cfg("vertices", "whl.json", Format::Table));
    CHECK(t.code == kExitOk);
    CHECK_FALSE(t.out.empty());
}

TEST_CASE("output is deterministic") {
    for (const auto* command : {"vertices", "orbits", "prevariety", "correspond", "equations"}) {
        CAPTURE(command);
        auto c = cfg(command, "whl.json");
        c.threads = 1;
        const auto a = exec(c);
        c.threads = 4;
        const auto b = exec(c);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("validation failures exit 2 with a JSON error line") {
    const auto r = exec(cfg("validate", "empty.json"));
    CHECK(r.code == kExitValidation);
    const auto e = json::parse(r.err);
    CHECK(e["error"] == "UnpairedFace");

    auto p = cfg("probe", "whl.json");
    p.path = "no-such-path";
    CHECK(exec(p).code == kExitValidation);
}

TEST_CASE("missing files exit 4") {
    RunConfig c;
    c.command = "validate";
    c.input = "/nonexistent/whl.json";
    const auto r = exec(c);
    CHECK(r.code == kExitIo);
    CHECK(json::parse(r.err)["error"] == "Io");

    auto v = cfg("verify", "whl.json");
    v.vertices = "/nonexistent/vertices.json";
    CHECK(exec(v).code == kExitIo);
}

TEST_CASE("certify reports beta+") {
    auto c = cfg("certify", "whl.json");
    c.surfaces = {2, 7, 8, 13, 15, 16, 18};
    const auto r = exec(c);
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["feasible"] == true);
    CHECK(j["alpha"] == json({"1", "0", "0", "0", "0", "1", "0", "0", "1", "1", "0", "0"}));
    CHECK(j["dual_vertices"] == json({2, 7, 8, 13, 15, 16, 18}));

    c.surfaces.clear();
    for (int i = 1; i <= 20; ++i) c.surfaces.push_back(i);
    CHECK(exec(c).code == kExitComputation);

    c.surfaces = {1, 14};
    c.strict = true;
    CHECK(exec(c).code == kExitComputation);
}

TEST_CASE("verify round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "spun_cli_test";
    std::filesystem::create_directories(dir);
    const auto file = dir / "vertices.json";
    {
        std::ofstream f(file);
        f << exec(cfg("vertices", "whl.json")).out;
    }
    auto v = cfg("verify", "whl.json");
    v.vertices = file;
    const auto ok = exec(v);
    CHECK(ok.code == kExitOk);

    // Corrupt one coordinate.
    auto j = json::parse(exec(cfg("vertices", "whl.json")).out);
    j["vertices"][0]["coordinates"][0] = "7";
    {
        std::ofstream f(file);
        f << j.dump();
    }
    CHECK(exec(v).code != kExitOk);
    std::filesystem::remove_all(dir);
}

TEST_CASE("probe output") {
    auto c = cfg("probe", "whl.json");
    c.path = "whl-4";
    c.samples = 64;
    const auto r = exec(c);
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["divergent"] == true);
    CHECK(j["direction"].size() == 12);
    CHECK(j["samples"] == 64);
}

TEST_CASE("argument parsing") {
    const std::string input = oracle::data("whl.json").string();
    std::vector<std::string> args = {"spun", "orbits", input, "--group", "full", "--format", "json"};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    CHECK(main_entry(static_cast<int>(argv.size()), argv.data(), out, err) == kExitOk);
    CHECK(json::parse(out.str())["orbits"].size() == 3);

    std::vector<std::string> bad = {"spun", "frobnicate", input};
    std::vector<char*> bargv;
    for (auto& a : bad) bargv.push_back(a.data());
    std::ostringstream o2, e2;
    CHECK(main_entry(static_cast<int>(bargv.size()), bargv.data(), o2, e2) == kExitValidation);
}
