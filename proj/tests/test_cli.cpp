#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <nlohmann/json.hpp>

#include "cslopes/io.hpp"

using nlohmann::ordered_json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/cslopes_test_") + name;
}

} // namespace

TEST_CASE("fusion command, both modes agree") {
    RunResult r = run("fusion --m1 2 --m2 1 --n-max 10 --mode both");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"brute_force_agreement\": true") != std::string::npos);
    CHECK(r.out.find("n,d_plus") != std::string::npos);
    CHECK(r.out.find("\"region\": \"I1\"") != std::string::npos);
}

TEST_CASE("fusion command reroutes degenerate m2") {
    RunResult r = run("fusion --m1 3 --m2 0 --n-max 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("T(2,7)") != std::string::npos);

    RunResult t = run("fusion --m1 1 --m2 -1 --n-max 5");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("T(2,-1)") != std::string::npos);
    CHECK(t.out.find("trivial") != std::string::npos);
}

TEST_CASE("fusion command rejects malformed invocations") {
    CHECK(run("fusion --m2 1").exit_code == 2);
    CHECK(run("fusion --m1 2 --m2 1 --mode nonsense").exit_code == 2);
}

TEST_CASE("cable command on a golden base") {
    RunResult r = run("cable --base qp:" + std::string(GOLDEN_DIR) +
                      "/820.json -p 7 -q 2 --n-max 12");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"regime\": \"R\"") != std::string::npos);
    CHECK(r.out.find("\"A\": \"7/2\"") != std::string::npos);
    CHECK(r.out.find("\"agreement\": true") != std::string::npos);
}

TEST_CASE("cable command with the exact engine") {
    RunResult r = run("cable --base unknot -p 2 -q 3 --n-max 12 --exact");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"exact_engine_agreement\": true") != std::string::npos);
    // unknot has b = +1/2: no closed form, but the run still succeeds
    CHECK(r.out.find("\"closed_form\": null") != std::string::npos);
}

TEST_CASE("cable command validates parameters") {
    CHECK(run("cable --base unknot -p 2 -q 1 --n-max 5").exit_code == 2);
    CHECK(run("cable --base unknot -p 4 -q 2 --n-max 5").exit_code == 2);
    CHECK(run("cable --base nonsense -p 1 -q 2 --n-max 5").exit_code == 2);
}

TEST_CASE("fit command round trips the fusion table") {
    std::string csv = tmp_path("k21.csv");
    RunResult gen = run("fusion --m1 2 --m2 1 --n-max 40 --output " + csv);
    REQUIRE(gen.exit_code == 0);
    ordered_json fusion_json = ordered_json::parse(gen.out);

    RunResult fit = run("fit --input " + csv + " --max-period 8");
    CHECK(fit.exit_code == 0);
    ordered_json fit_json = ordered_json::parse(fit.out);
    CHECK(fit_json["period"] == 4);
    CHECK(fit_json == fusion_json["quasipoly"]);
    std::remove(csv.c_str());
}

TEST_CASE("fit command error paths") {
    std::string bad = tmp_path("bad.csv");
    cslopes::write_file(bad, "nope\n1,2\n");
    CHECK(run("fit --input " + bad + " --max-period 4").exit_code == 2);
    std::remove(bad.c_str());

    std::string short_csv = tmp_path("short.csv");
    cslopes::write_file(short_csv, "n,d_plus\n1,0\n2,0\n");
    CHECK(run("fit --input " + short_csv + " --max-period 4").exit_code == 1);
    std::remove(short_csv.c_str());
}

TEST_CASE("verify command exit codes") {
    CHECK(run("verify --grid empty").exit_code == 0);
    RunResult small = run("verify --m1-range 2:2 --m2-range 1:1 --q 2 --p-window 2");
    CHECK(small.exit_code == 0);
    CHECK(small.out.find("all reports pass") != std::string::npos);

    RunResult corrupt = run("verify --m1-range 1:0 --m2-range 1:1 --qp " +
                            std::string(FIXTURE_DIR) + "/820_corrupt.json");
    CHECK(corrupt.exit_code == 1);
}

TEST_CASE("verify output is byte-identical across runs") {
    std::string a = tmp_path("rep_a.json"), b = tmp_path("rep_b.json");
    std::string args = "verify --m1-range 2:3 --m2-range 1:1 --q 2 --p-window 1 --output ";
    REQUIRE(run(args + a).exit_code == 0);
    REQUIRE(run(args + b).exit_code == 0);
    CHECK(cslopes::read_file(a) == cslopes::read_file(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("torus-exact prints canonical polynomials") {
    RunResult r = run("torus-exact -p 2 -q 3 --n-max 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1: 1*v^(0)") != std::string::npos);
    CHECK(r.out.find("2: -1*v^(9/2) + 1*v^(5/2) + 1*v^(3/2) + 1*v^(1/2)") !=
          std::string::npos);
}
