#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "sdcomp/instance.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SDCOMP_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[512];
    while (fgets(buf, sizeof(buf), pipe)) res.output += buf;
    int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    return res;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

} // namespace

TEST_CASE("analyze reports structure bounds") {
    write_file("/tmp/sdcomp_cli_c6.json",
               R"({"n":6,"edges":[{"u":0,"v":1},{"u":1,"v":2},{"u":2,"v":3},
                                  {"u":3,"v":4},{"u":4,"v":5},{"u":0,"v":5}]})");
    auto res = run_cli("analyze /tmp/sdcomp_cli_c6.json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("sd* <= 1") != std::string::npos);
    CHECK(res.output.find("sd <= 2") != std::string::npos);

    write_file("/tmp/sdcomp_cli_k4.json",
               R"({"n":4,"edges":[{"u":0,"v":1},{"u":0,"v":2},{"u":0,"v":3},
                                  {"u":1,"v":2},{"u":1,"v":3},{"u":2,"v":3}]})");
    res = run_cli("analyze /tmp/sdcomp_cli_k4.json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("sd = 1 (exact") != std::string::npos);

    write_file("/tmp/sdcomp_cli_w7.json",
               R"({"n":7,"edges":[{"u":0,"v":1},{"u":0,"v":2},{"u":0,"v":3},{"u":0,"v":4},
                                  {"u":0,"v":5},{"u":0,"v":6},{"u":1,"v":2},{"u":2,"v":3},
                                  {"u":3,"v":4},{"u":4,"v":5},{"u":5,"v":6},{"u":6,"v":1}]})");
    res = run_cli("analyze /tmp/sdcomp_cli_w7.json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("no bound from structure theorems") != std::string::npos);
}

TEST_CASE("analyze rejects malformed files with exit 2") {
    write_file("/tmp/sdcomp_cli_bad.json", "definitely not json");
    auto res = run_cli("analyze /tmp/sdcomp_cli_bad.json");
    CHECK(res.exit_code == 2);
}

TEST_CASE("generate then reduce then verify round-trips") {
    auto gen = run_cli("generate cycle -n 5 --out /tmp/sdcomp_cli_c5");
    REQUIRE(gen.exit_code == 0);

    auto reduce = run_cli(
        "reduce /tmp/sdcomp_cli_c5.instance.json --cert /tmp/sdcomp_cli_c5.cert.json");
    CHECK(reduce.exit_code == 0);
    CHECK(reduce.output.find("2 stage(s)") != std::string::npos);

    auto verify =
        run_cli("verify /tmp/sdcomp_cli_c5.instance.json /tmp/sdcomp_cli_c5.cert.json");
    CHECK(verify.exit_code == 0);
    CHECK(verify.output.find("c1") != std::string::npos);
    CHECK(verify.output.find("FAIL") == std::string::npos);
}

TEST_CASE("reduce flags infeasible instances with exit 3") {
    write_file("/tmp/sdcomp_cli_infeas.json",
               R"({"n":3,"edges":[{"u":0,"v":1,"kind":"eq","c":1.0},
                                  {"u":1,"v":2,"kind":"eq","c":1.0},
                                  {"u":0,"v":2,"kind":"eq","c":-1.0}]})");
    auto res = run_cli("reduce /tmp/sdcomp_cli_infeas.json");
    CHECK(res.exit_code == 3);
}

TEST_CASE("reduce emits one stage for a forced pair") {
    write_file("/tmp/sdcomp_cli_k2.json",
               R"({"n":2,"edges":[{"u":0,"v":1,"kind":"eq","c":1.0}]})");
    auto res = run_cli("reduce /tmp/sdcomp_cli_k2.json --json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"stages\": 1") != std::string::npos);
    CHECK(res.output.find("\"solution_rank\": 1") != std::string::npos);
}

TEST_CASE("generated gk instances reduce with at least k-1 stages") {
    auto gen = run_cli("generate gk -k 4 --out /tmp/sdcomp_cli_g4");
    REQUIRE(gen.exit_code == 0);
    auto res = run_cli("reduce /tmp/sdcomp_cli_g4.instance.json --json");
    CHECK(res.exit_code == 0);
    // stage count appears as "stages": s with s >= 3
    auto pos = res.output.find("\"stages\": ");
    REQUIRE(pos != std::string::npos);
    int stages = std::atoi(res.output.c_str() + pos + 10);
    CHECK(stages >= 3);
}

TEST_CASE("rigidity verdicts") {
    auto gen = run_cli("generate cycle -n 5 --out /tmp/sdcomp_cli_rig");
    REQUIRE(gen.exit_code == 0);
    auto res = run_cli("rigidity /tmp/sdcomp_cli_rig.framework.json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("universally rigid") != std::string::npos);

    // a square with generic weights and slack is not universally rigid
    write_file("/tmp/sdcomp_cli_square.json",
               R"({"n":4,"d":2,
                   "coords":[[1,0],[0,1],[-1,0],[0,-1]],
                   "edges":[{"u":0,"v":1,"kind":"eq","c":0},{"u":1,"v":2,"kind":"eq","c":0},
                            {"u":2,"v":3,"kind":"eq","c":0},{"u":0,"v":3,"kind":"eq","c":0}]})");
    res = run_cli("rigidity /tmp/sdcomp_cli_square.json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("not universally rigid") != std::string::npos);
}

TEST_CASE("met-check separates members from violations") {
    write_file("/tmp/sdcomp_cli_met_ok.json",
               R"({"n":3,"edges":[{"u":0,"v":1,"kind":"eq","c":0.5},
                                  {"u":1,"v":2,"kind":"eq","c":0.5},
                                  {"u":0,"v":2,"kind":"eq","c":0.0}]})");
    auto res = run_cli("met-check /tmp/sdcomp_cli_met_ok.json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("membership: yes") != std::string::npos);

    write_file("/tmp/sdcomp_cli_met_bad.json",
               R"({"n":3,"edges":[{"u":0,"v":1,"kind":"eq","c":1.0},
                                  {"u":1,"v":2,"kind":"eq","c":1.0},
                                  {"u":0,"v":2,"kind":"eq","c":-1.0}]})");
    res = run_cli("met-check /tmp/sdcomp_cli_met_bad.json");
    CHECK(res.exit_code == 3);
    CHECK(res.output.find("membership: no") != std::string::npos);
}

TEST_CASE("json mode emits a single document") {
    write_file("/tmp/sdcomp_cli_k2b.json",
               R"({"n":2,"edges":[{"u":0,"v":1,"kind":"eq","c":0.5}]})");
    auto res = run_cli("--json reduce /tmp/sdcomp_cli_k2b.json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.front() == '{');
}

TEST_CASE("deterministic outputs") {
    write_file("/tmp/sdcomp_cli_det.json",
               R"({"n":3,"edges":[{"u":0,"v":1,"kind":"eq","c":0.5},
                                  {"u":1,"v":2,"kind":"eq","c":-0.25}]})");
    auto a = run_cli("--json reduce /tmp/sdcomp_cli_det.json");
    auto b = run_cli("--json reduce /tmp/sdcomp_cli_det.json");
    CHECK(a.output == b.output);
}
