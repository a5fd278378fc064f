// End-to-end checks of the aoibench binary: exit codes, output schema,
// and run-to-run determinism.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "aoi/analysis.hpp"
#include "aoi/json_io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

std::string temp_path(const char* name) {
    return std::string("cli_test_") + name + ".tmp";
}

RunResult run(const std::string& args) {
    const std::string out_file = temp_path("out");
    const std::string command = std::string(AOIBENCH_BIN) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(command.c_str());

    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    std::remove(out_file.c_str());
    return result;
}

std::string config(const char* name) {
    return std::string(SAMPLE_CONFIG_DIR) + "/" + name;
}

std::string write_temp(const char* name, const std::string& content) {
    const std::string path = temp_path(name);
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("analyze: unit config totals 2.0") {
    const RunResult result = run("analyze " + config("unit.json"));
    REQUIRE(result.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(result.output);
    CHECK(doc["aoi"]["total"] == 2.0);
    CHECK(doc["aoi"]["per_process"][0] == 2.0);
    CHECK(doc["pi"][0][0] == 0.5);
}

TEST_CASE("analyze: output matches the in-process library bit for bit") {
    const RunResult result = run("analyze " + config("two_sensor.json"));
    REQUIRE(result.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(result.output);

    const aoi::ParsedConfig parsed = aoi::parse_config_file(config("two_sensor.json"));
    const aoi::AoiReport report = aoi::aoi_sum(parsed.system, *parsed.policy);
    CHECK(doc["aoi"]["total"].get<double>() == report.total);
    for (int j = 0; j < 2; ++j)
        CHECK(doc["aoi"]["per_process"][j].get<double>() == report.per_process[j]);
}

TEST_CASE("analyze: malformed JSON exits 2 with a diagnostic") {
    const std::string path = write_temp("bad", "{this is not json");
    const RunResult result = run("analyze " + path);
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("JSON") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("analyze: validation failures exit 2") {
    const std::string path = write_temp(
        "uncov",
        R"({"sensors":1,"processes":1,"lambda":[1.0],"mu":1.0,"correlation":[[0.0]],"preemption":[1.0]})");
    const RunResult plain = run("analyze " + path);
    CHECK(plain.exit_code == 2);

    const RunResult relaxed = run("analyze --allow-uncovered " + path);
    CHECK(relaxed.exit_code == 0);
    CHECK(relaxed.output.find("null") != std::string::npos);  // infinity serialized as null
    std::remove(path.c_str());
}

TEST_CASE("analyze: missing subcommand or file is an input error") {
    CHECK(run("").exit_code == 2);
    CHECK(run("analyze does_not_exist.json").exit_code == 2);
}

TEST_CASE("simulate: JSON output with overridden flags, repeat runs identical") {
    const std::string args =
        "simulate " + config("two_sensor.json") + " --horizon 20000 --reps 3 --seed 7";
    const RunResult first = run(args);
    REQUIRE(first.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(first.output);
    CHECK(doc["replications"] == 3);
    CHECK(doc["horizon"] == 20000.0);
    CHECK(doc["seed"] == 7);
    CHECK(doc["aoi_mean"].size() == 2);

    const RunResult second = run(args);
    CHECK(second.output == first.output);
}

TEST_CASE("simulate: CSV rows per replication and process") {
    const RunResult result =
        run("simulate " + config("two_sensor.json") + " --horizon 5000 --reps 2 --csv");
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.rfind("replication,process,aoi", 0) == 0);
    int lines = 0;
    for (char c : result.output)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 2 * 2);
}

TEST_CASE("optimize: certified result with the documented keys") {
    const RunResult result = run("optimize " + config("two_sensor.json") + " --epsilon 0.01");
    REQUIRE(result.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(result.output);
    for (const char* key : {"p_star", "objective", "lower_bound", "gap", "iterations", "nodes",
                            "certified", "theorem2_bound"})
        CHECK(doc.contains(key));
    CHECK(doc["certified"] == true);
    CHECK(doc["gap"].get<double>() <= 0.01);
}

TEST_CASE("bound: reports the iteration bound") {
    const RunResult result = run("bound " + config("unit.json") + " --epsilon 0.1");
    REQUIRE(result.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(result.output);
    CHECK(doc["theorem2_bound"] == 8);
}

TEST_CASE("sweep: spec file to CSV, bit-identical across runs and jobs") {
    const std::string args = "sweep --spec " + config("sweep_example.json");
    const RunResult first = run(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.output.rfind("parameter,value,", 0) == 0);
    CHECK(first.output.find("lambda_1") != std::string::npos);

    const RunResult parallel = run(args + " --jobs 3");
    CHECK(parallel.output == first.output);
}

TEST_CASE("sweep: preset with tiny sim override runs all rows") {
    const RunResult result =
        run("sweep --preset fig3a --horizon 2000 --reps 2 --jobs 4");
    REQUIRE(result.exit_code == 0);
    int lines = 0;
    for (char c : result.output)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 15);  // header + 5 values x 3 policies
}

TEST_CASE("sweep: input errors exit 2") {
    CHECK(run("sweep --preset nope").exit_code == 2);
    CHECK(run("sweep").exit_code == 2);
    const std::string args = "sweep --preset fig5a --spec x.json";
    CHECK(run(args).exit_code == 2);
}

TEST_CASE("out flag writes the file instead of stdout") {
    const std::string out_path = temp_path("analyze_out");
    const RunResult result = run("analyze " + config("unit.json") + " --out " + out_path);
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.empty());
    std::ifstream in(out_path);
    REQUIRE(in.good());
    const nlohmann::json doc = nlohmann::json::parse(in);
    CHECK(doc["aoi"]["total"] == 2.0);
    std::remove(out_path.c_str());
}
