#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "flowc/cli.hpp"

namespace fs = std::filesystem;
using namespace flowc;
using flowc::testing::read_text;
using flowc::testing::source_path;

namespace {

struct TempDir {
    fs::path path;

    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() / ("flowc_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string write(const std::string& name, const std::string& content) const
    {
        auto p = path / name;
        std::ofstream(p, std::ios::binary) << content;
        return p.string();
    }
};

struct CurrentDir {
    fs::path saved = fs::current_path();
    explicit CurrentDir(const fs::path& p) { fs::current_path(p); }
    ~CurrentDir() { fs::current_path(saved); }
};

const char* kSelfLoop = R"({"entry":"a","instructions":{"a":{"kind":"block","code":["x = 1"],"next":"a"}}})";

std::string example(const std::string& name)
{
    return source_path("flowcharts/" + name + ".flow.json");
}

nlohmann::json run_scene(const std::string& name, std::uint64_t seed, const TempDir& dir)
{
    cli::RunArgs args;
    args.path = example(name);
    args.seed = seed;
    args.scene_out = (dir.path / (name + ".scene.json")).string();
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(args, out, err) == cli::kOk);
    return nlohmann::json::parse(read_text(*args.scene_out));
}

int count_prefab(const nlohmann::json& scene, bool building)
{
    static const nlohmann::json details = [] {
        nlohmann::json names = nlohmann::json::array();
        auto catalog = nlohmann::json::parse(read_text(source_path("assets/catalog.json")));
        for (const auto& p : catalog["prefabs"])
            if (p["category"] == "detail")
                names.push_back(p["name"]);
        return names;
    }();
    int n = 0;
    for (const auto& node : scene["nodes"]) {
        bool is_detail = node.contains("prefab") &&
                         std::find(details.begin(), details.end(), node["prefab"]) != details.end();
        n += building ? !is_detail : is_detail;
    }
    return n;
}

}  // namespace

TEST_CASE("validate exit codes")
{
    TempDir dir;
    std::ostringstream err;
    CHECK(cli::cmd_validate(example("euclid"), err) == cli::kOk);
    CHECK(err.str().empty());

    std::ostringstream loop_err;
    CHECK(cli::cmd_validate(dir.write("loop.flow.json", kSelfLoop), loop_err) == cli::kConstraint);
    std::istringstream lines(loop_err.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        auto d = nlohmann::json::parse(line);
        CHECK(d["rule"] == "C1_SELF_LOOP");
        CHECK(d["instruction"] == "a");
        ++count;
    }
    CHECK(count == 1);

    std::ostringstream missing_err;
    CHECK(cli::cmd_validate((dir.path / "absent.flow.json").string(), missing_err) == cli::kIo);
}

TEST_CASE("warnings alone keep exit 0")
{
    TempDir dir;
    auto path = dir.write("island.flow.json", R"({"entry":"a","instructions":{
        "a":{"kind":"block","code":["print 1"],"next":null},
        "b":{"kind":"block","code":["print 2"],"next":null}}})");
    std::ostringstream err;
    CHECK(cli::cmd_validate(path, err) == cli::kOk);
    CHECK(nlohmann::json::parse(err.str())["rule"] == "W_UNREACHABLE");
}

TEST_CASE("compile writes the golden Euclid listing")
{
    TempDir dir;
    auto input = dir.write("euclid.flow.json", read_text(example("euclid")));
    cli::CompileArgs args;
    args.path = input;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_compile(args, out, err) == cli::kOk);
    CHECK(read_text((dir.path / "euclid.py").string()) == read_text(source_path("flowcharts/euclid.py")));

    cli::CompileArgs to_stdout;
    to_stdout.path = input;
    to_stdout.out = "-";
    std::ostringstream code;
    REQUIRE(cli::cmd_compile(to_stdout, code, err) == cli::kOk);
    CHECK(code.str() == read_text(source_path("flowcharts/euclid.py")));

    CHECK(cli::default_output_path("a/b.flow.json") == "a/b.py");
    CHECK(cli::default_output_path("x.json") == "x.py");
    CHECK(cli::default_output_path("plain") == "plain.py");
}

TEST_CASE("compile --annotate and --scene")
{
    TempDir dir;
    cli::CompileArgs args;
    args.path = example("euclid");
    args.out = "-";
    args.annotate = true;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_compile(args, out, err) == cli::kOk);
    for (const char* id : {"init", "test", "step", "report"})
        CHECK(out.str().find(std::string("# origin: ") + id) != std::string::npos);

    CurrentDir cd(dir.path);
    cli::CompileArgs scene;
    scene.path = example("building");
    scene.scene = true;
    REQUIRE(cli::cmd_compile(scene, out, err) == cli::kOk);
    CHECK(fs::exists(dir.path / "build_scene.py"));
    CHECK(read_text((dir.path / "build_scene.py").string()).find("from procedural import *") != std::string::npos);
}

TEST_CASE("compile refuses invalid documents without writing output")
{
    TempDir dir;
    cli::CompileArgs args;
    args.path = dir.write("loop.flow.json", kSelfLoop);
    std::ostringstream out, err;
    CHECK(cli::cmd_compile(args, out, err) == cli::kConstraint);
    CHECK_FALSE(fs::exists(dir.path / "loop.py"));
    CHECK(err.str().find("C1_SELF_LOOP") != std::string::npos);
    args.path = (dir.path / "nope.flow.json").string();
    CHECK(cli::cmd_compile(args, out, err) == cli::kIo);
}

TEST_CASE("run prints interpreter output")
{
    cli::RunArgs args;
    args.path = example("euclid");
    std::ostringstream out, err;
    CHECK(cli::cmd_run(args, out, err) == cli::kOk);
    CHECK(out.str() == "Greatest common divisor is:\n2\n");
}

TEST_CASE("run reports step-limit exhaustion with partial output")
{
    TempDir dir;
    auto path = dir.write("spin.flow.json", R"({"entry":"s","instructions":{
        "s":{"kind":"block","code":["print \"start\"", "x = 1"],"next":"w"},
        "w":{"kind":"branch","condition":"x > 0","true_next":"b","false_next":null},
        "b":{"kind":"block","code":["x += 1"],"next":"w"}}})");
    cli::RunArgs args;
    args.path = path;
    args.step_limit = 50;
    args.scene_out = (dir.path / "spin.scene.json").string();
    std::ostringstream out, err;
    CHECK(cli::cmd_run(args, out, err) == cli::kRuntime);
    CHECK(out.str() == "start\n");
    auto report = nlohmann::json::parse(err.str());
    CHECK(report["error"] == "step_limit");
    CHECK_FALSE(fs::exists(*args.scene_out));
}

TEST_CASE("runtime errors exit 3 and name the instruction")
{
    TempDir dir;
    auto path = dir.write("div.flow.json", R"({"entry":"s","instructions":{
        "s":{"kind":"block","code":["x = 0", "y = 1 / x"],"next":null}}})");
    cli::RunArgs args;
    args.path = path;
    std::ostringstream out, err;
    CHECK(cli::cmd_run(args, out, err) == cli::kRuntime);
    auto report = nlohmann::json::parse(err.str());
    CHECK(report["error"] == "runtime");
    CHECK(report["instruction"] == "s");
}

TEST_CASE("districts flowchart yields 100 buildings and 200 trees")
{
    TempDir dir;
    auto scene = run_scene("districts", 0, dir);
    CHECK(scene["nodes"].size() == 300);
    CHECK(count_prefab(scene, true) == 100);
    CHECK(count_prefab(scene, false) == 200);
    int trees = 0;
    for (const auto& node : scene["nodes"])
        trees += node.value("prefab", "") == "tree";
    CHECK(trees == 200);
    CHECK(scene["districts"].size() == 100);
}

TEST_CASE("same seed, byte-identical scene files")
{
    TempDir dir;
    for (const char* name : {"districts", "randomness", "building"}) {
        std::string first, second, obj1, obj2;
        for (int pass = 0; pass < 2; ++pass) {
            cli::RunArgs args;
            args.path = example(name);
            args.seed = 7;
            args.scene_out = (dir.path / ("s" + std::to_string(pass) + ".json")).string();
            args.obj_out = (dir.path / ("s" + std::to_string(pass) + ".obj")).string();
            std::ostringstream out, err;
            REQUIRE(cli::cmd_run(args, out, err) == cli::kOk);
            (pass ? second : first) = read_text(*args.scene_out);
            (pass ? obj2 : obj1) = read_text(*args.obj_out);
        }
        CHECK(first == second);
        CHECK(obj1 == obj2);
        CHECK(first.back() == '\n');
    }
}

TEST_CASE("the flowc binary dispatches subcommands")
{
    TempDir dir;
    auto shell = [&](const std::string& cmd) {
        int status = std::system((cmd + " > " + (dir.path / "out.txt").string() + " 2> " +
                                  (dir.path / "err.txt").string())
                                     .c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    std::string flowc = FLOWC_BINARY;
    CHECK(shell(flowc + " validate " + example("euclid")) == 0);
    CHECK(shell(flowc + " validate " + dir.write("loop.flow.json", kSelfLoop)) == 1);
    CHECK(shell(flowc + " validate " + (dir.path / "missing.json").string()) == 2);
    CHECK(shell(flowc + " run " + example("euclid") + " --seed 3") == 0);
    CHECK(read_text((dir.path / "out.txt").string()) == "Greatest common divisor is:\n2\n");
    CHECK(shell(flowc + " compile " + example("euclid") + " --out -") == 0);
    CHECK(read_text((dir.path / "out.txt").string()) == read_text(source_path("flowcharts/euclid.py")));
    CHECK(shell(flowc + " frobnicate") == 2);
}
