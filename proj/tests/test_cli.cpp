#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = {}) {
    const std::string cmd = env + (env.empty() ? "" : " ") + PLCS_BINARY + std::string(" ") + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_tmp(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "plcs_cli_test";
    fs::create_directories(dir);
    const fs::path f = dir / name;
    std::ofstream(f, std::ios::binary) << content;
    return f.string();
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) out.push_back(x);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

TEST_CASE("lcs command") {
    const auto a = write_tmp("a.txt", "banana"), b = write_tmp("b.txt", "ananas");
    Run r = run("lcs " + a + " " + b);
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["length"] == 5);
    CHECK(std::string("banana").substr(j["pos_s"], 5) == std::string("ananas").substr(j["pos_t"], 5));
    CHECK_FALSE(j.contains("time_ms"));
    CHECK(run("lcs " + a + " " + b + " --timing").out.find("time_ms") != std::string::npos);
    CHECK(json::parse(run("lcs " + a + " " + a).out)["length"] == 6);
    CHECK(run("lcs " + a + " " + b).out == r.out);  // deterministic
    CHECK(json::parse(run("lcs " + a + " " + b + " --force-regime short").out)["regime"] == "short");
}

TEST_CASE("klcs command") {
    const auto a = write_tmp("c.txt", "abcde"), b = write_tmp("d.txt", "abxde");
    json j = json::parse(run("klcs -k 1 " + a + " " + b).out);
    CHECK(j["length"] == 5);
    CHECK(j["mismatches"] == json::array({2}));
    json z = json::parse(run("klcs -k 0 " + a + " " + b).out);
    CHECK(z["length"] == j["lcs"]);
    CHECK(run("klcs -k 9 " + a + " " + b).code == 2);
}

TEST_CASE("inputs") {
    const auto fa = write_tmp("x.fa", ">seq1\nACGT\r\nAC\n"), fb = write_tmp("y.fa", ">seq2\nGTAC\n");
    json j = json::parse(run("lcs " + fa + " " + fb).out);
    CHECK(j["inputs"]["s"]["length"] == 6);
    CHECK(j["length"] == 4);  // GTAC
    json raw = json::parse(run("lcs --raw " + fa + " " + fb).out);
    CHECK(raw["inputs"]["s"]["length"] == 15);
    CHECK(run("lcs " + write_tmp("bad.fa", ">only a header\n") + " " + fb).code == 2);
    CHECK(run("lcs /nonexistent/file " + fb).code == 2);
    json env = json::parse(run("lcs " + fa + " " + fb, "PACKED_LCS_TABLE_BITS=10").out);
    CHECK(env["inputs"]["table_bits_cap"] == 10);
}

TEST_CASE("verify command and exit codes") {
    Run ok = run("verify sync --seed 7 --scale 0.05");
    CHECK(ok.code == 0);
    json j = json::parse(ok.out);
    CHECK(j["pass"] == true);
    CHECK(j["checks"][0]["id"] == "sync-validity");
    CHECK(run("verify sync --seed 7 --scale 0.05").out == ok.out);

    Run bad = run("verify sync --seed 7 --scale 0.05 --inject sync-drop");
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.out)["checks"][0].contains("counterexample"));

    CHECK(run("verify nosuch").code == 2);
    CHECK(run("verify sync --inject nosuch").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("bench schema") {
    std::ifstream g(std::string(GOLDEN_DIR) + "/bench_header.csv");
    std::string golden;
    std::getline(g, golden);
    Run r = run("bench planted-lcs 1500 4 3 --seed 5 --no-timing");
    REQUIRE(r.code == 0);
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == golden);
    const std::size_t cols = split(golden).size();
    std::size_t rows = 0;
    while (std::getline(ss, line)) {
        auto f = split(line);
        REQUIRE(f.size() == cols);
        CHECK(f[6] == f[7]);  // reported length matches the plant
        CHECK(f[8].empty());
        ++rows;
    }
    CHECK(rows == 6);  // 3 repeats x 2 algorithms
    CHECK(run("bench planted-lcs 1500 4 3 --seed 5 --no-timing").out == r.out);
    Run timed = run("bench random 3000 2 1");
    std::stringstream ts(timed.out);
    std::getline(ts, line);
    std::getline(ts, line);
    CHECK_FALSE(split(line)[8].empty());
    CHECK(run("bench zipf 10 2 1").code == 2);
}
