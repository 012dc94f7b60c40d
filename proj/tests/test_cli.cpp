#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "latgen/json_io.hpp"

#ifndef LATGEN_CLI_PATH
#error "LATGEN_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
    static int serial = 0;
    const std::string out_path = "cli_out_" + std::to_string(serial) + ".txt";
    const std::string err_path = "cli_err_" + std::to_string(serial) + ".txt";
    ++serial;
    std::string cmd = env;
    if (!env.empty())
        cmd += ' ';
    cmd += '"';
    cmd += LATGEN_CLI_PATH;
    cmd += "\" ";
    cmd += args;
    cmd += " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("construct emits a conforming result document") {
    RunResult r = run_cli("construct --b 2 --m 3 --s 2 --policy no-repeat");
    REQUIRE(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(latgen::validate_result_json(doc).empty());
    CHECK(doc["z_scaled"] == nlohmann::json({1, 3}));
    CHECK(doc["policy"] == "no-repeat");
    CHECK(doc["N"] == 8);
}

TEST_CASE("construct output is byte-identical across runs and thread budgets") {
    const std::string args = "construct --b 3 --m 3 --s 6 --schedule log --policy anti-diagonal";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    RunResult c = run_cli(args, "LATGEN_THREADS=1");
    RunResult d = run_cli(args, "LATGEN_THREADS=7");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out == d.out);
}

TEST_CASE("engines produce the same document apart from labels and counters") {
    RunResult fast = run_cli("construct --b 5 --m 3 --s 5 --schedule linear:0.7 --engine fast");
    RunResult naive = run_cli("construct --b 5 --m 3 --s 5 --schedule linear:0.7 --engine naive");
    REQUIRE(fast.exit_code == 0);
    REQUIRE(naive.exit_code == 0);
    nlohmann::json f = nlohmann::json::parse(fast.out);
    nlohmann::json n = nlohmann::json::parse(naive.out);
    CHECK(f["z_scaled"] == n["z_scaled"]);
    CHECK(f["step_errors"] == n["step_errors"]);
    CHECK(f["engine"] != n["engine"]);
}

TEST_CASE("invalid parameters exit with code 1 and a structured error") {
    RunResult r = run_cli("construct --b 4 --m 3 --s 2");
    CHECK(r.exit_code == 1);
    nlohmann::json err = nlohmann::json::parse(r.err);
    CHECK(err["error"]["code"] == 1);

    CHECK(run_cli("construct --b 2 --m 3 --s 2 --schedule nonsense").exit_code == 1);
    CHECK(run_cli("construct --m 3 --s 2").exit_code == 1);  // missing required --b
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("bound --b 2 --m 3 --d 3 --lambda 0.4").exit_code == 1);
}

TEST_CASE("a custom exclusion set covering the space exits with code 2") {
    const std::string path = "cli_custom_full.json";
    std::ofstream(path) << "{\"2\": [1, 3, 5, 7]}";
    RunResult r = run_cli("construct --b 2 --m 3 --s 2 --custom-exclusions " + path);
    std::remove(path.c_str());
    CHECK(r.exit_code == 2);
    nlohmann::json err = nlohmann::json::parse(r.err);
    CHECK(err["error"]["code"] == 2);
}

TEST_CASE("tiny moduli trigger the fallback notice") {
    RunResult r = run_cli("construct --b 2 --m 1 --s 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("fell back") != std::string::npos);
}

TEST_CASE("csv output starts with the expected header") {
    RunResult r = run_cli("construct --b 2 --m 3 --s 3 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("d,z_unscaled,z_scaled,w,step_error,exclusion_size\n", 0) == 0);
}

TEST_CASE("bound consumes a construct result file") {
    const std::string path = "cli_result.json";
    REQUIRE(run_cli("construct --b 2 --m 4 --s 5 --schedule log --policy no-repeat -o " + path)
                .exit_code == 0);

    RunResult b = run_cli("bound --input " + path + " --curve");
    CHECK(b.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(b.out);
    CHECK(latgen::validate_bound_json(doc).empty());
    CHECK(doc["per_d"].size() == 5);
    CHECK(doc["thm1_value"].get<double>() > 0.0);

    RunResult synth = run_cli("bound --b 2 --m 4 --d 4 --schedule log --lambda 0.8");
    CHECK(synth.exit_code == 0);
    nlohmann::json sdoc = nlohmann::json::parse(synth.out);
    CHECK(sdoc["lambda_star_1"] == 0.8);

    RunResult check = run_cli("check --checks file --input " + path);
    CHECK(check.exit_code == 0);
    CHECK(check.out.find("check file: pass") != std::string::npos);

    // corrupt one step error and the file check must fail with code 3
    nlohmann::json doc2 = nlohmann::json::parse(slurp(path));
    doc2["step_errors"][1] = 42.0;
    std::ofstream(path) << doc2.dump();
    RunResult bad = run_cli("check --checks file --input " + path);
    CHECK(bad.exit_code == 3);
    CHECK(bad.out.find("check file: FAIL") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("named checks run and unknown names are rejected") {
    RunResult r = run_cli("check --checks omega");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("check omega: pass") != std::string::npos);
    CHECK(run_cli("check --checks nonsense").exit_code == 1);
}
