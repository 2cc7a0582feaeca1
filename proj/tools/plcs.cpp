// plcs: command-line front end for LCS / k-LCS, self-verification and benchmarks.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "packed_lcs/config.hpp"
#include "packed_lcs/klcs.hpp"
#include "packed_lcs/lcs.hpp"
#include "packed_lcs/verify.hpp"

using json = nlohmann::ordered_json;
using namespace plcs;

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// FASTA when the first byte is '>' (unless raw): header lines dropped, the rest joined.
std::string read_input(const std::string& path, bool raw) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (raw || data.empty() || data[0] != '>') return data;
    std::string seq;
    std::istringstream lines(data);
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '>') continue;
        seq += line;
    }
    if (seq.empty()) throw UsageError("malformed FASTA in " + path + ": no sequence lines");
    return seq;
}

std::size_t distinct_bytes(const std::string& a, const std::string& b) {
    bool seen[256] = {};
    std::size_t n = 0;
    for (const std::string* x : {&a, &b})
        for (unsigned char c : *x) n += !seen[c], seen[c] = true;
    return n;
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

json inputs_json(const std::string& ps, const std::string& s, const std::string& pt, const std::string& t) {
    return {{"s", {{"path", ps}, {"length", s.size()}}},
            {"t", {{"path", pt}, {"length", t.size()}}},
            {"alphabet_size", distinct_bytes(s, t)},
            {"table_bits_cap", table_bits_cap()}};
}

json check_json(const CheckResult& r, bool timing) {
    json j = {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"soft", r.soft}, {"cases", r.cases}};
    json m = json::object();
    for (const Metric& x : r.metrics) m[x.name] = x.value;
    j["metrics"] = m;
    if (!r.failure.empty()) j["counterexample"] = r.failure;
    if (timing) j["seconds"] = r.seconds;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Longest common substring (exact and with k mismatches) over packed strings"};
    app.require_subcommand(1);

    std::string file_s, file_t, regime = "auto", suite, gen;
    bool raw = false, timing = false, no_timing = false;
    std::size_t k = 1, max_n = 0, n = 0, sigma = 2, repeats = 1;
    std::uint64_t seed = 1;
    double scale = 1.0;
    std::string inject;

    auto* c_lcs = app.add_subcommand("lcs", "exact LCS of two files, JSON report");
    c_lcs->add_option("S", file_s, "first input (raw bytes or FASTA)")->required();
    c_lcs->add_option("T", file_t, "second input")->required();
    c_lcs->add_flag("--raw", raw, "never treat input as FASTA");
    c_lcs->add_flag("--timing", timing, "include wall time");
    c_lcs->add_option("--force-regime", regime, "run one routine only")->check(CLI::IsMember({"auto", "short", "medium", "long"}));

    auto* c_klcs = app.add_subcommand("klcs", "LCS with at most k mismatches, JSON report");
    c_klcs->add_option("S", file_s, "first input")->required();
    c_klcs->add_option("T", file_t, "second input")->required();
    c_klcs->add_option("-k", k, "mismatch budget")->required();
    c_klcs->add_flag("--raw", raw, "never treat input as FASTA");
    c_klcs->add_flag("--timing", timing, "include wall time");

    auto* c_verify = app.add_subcommand("verify", "oracle-equivalence suites, JSON report");
    c_verify->add_option("suite", suite, "lcs, klcs, sync, families, wavelet or all")->required()->check(CLI::IsMember(suite_names()));
    c_verify->add_option("--seed", seed, "generator seed");
    c_verify->add_option("--max-n", max_n, "size limit (0 keeps the suite defaults)");
    c_verify->add_option("--scale", scale, "case-count multiplier")->check(CLI::PositiveNumber);
    c_verify->add_option("--inject", inject, "inject a fault (negative test)")->check(CLI::IsMember(fault_names()));
    c_verify->add_flag("--timing", timing, "include wall time per check");

    auto* c_bench = app.add_subcommand("bench", "timing matrix, CSV");
    c_bench->add_option("generator", gen, "random, periodic, planted-lcs or planted-klcs")
        ->required()
        ->check(CLI::IsMember({"random", "periodic", "planted-lcs", "planted-klcs"}));
    c_bench->add_option("n", n, "string length")->required()->check(CLI::PositiveNumber);
    c_bench->add_option("sigma", sigma, "alphabet size")->required()->check(CLI::Range(1, 26));
    c_bench->add_option("repeats", repeats, "runs per algorithm")->required()->check(CLI::PositiveNumber);
    c_bench->add_option("--seed", seed, "generator seed");
    c_bench->add_option("-k", k, "mismatches for planted-klcs");
    c_bench->add_flag("--no-timing", no_timing, "leave time columns empty (reproducible output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kUsage;
    }

    try {
        if (c_lcs->parsed()) {
            const std::string s = read_input(file_s, raw), t = read_input(file_t, raw);
            const Regime force = regime == "short" ? Regime::Short : regime == "medium" ? Regime::Medium
                                 : regime == "long" ? Regime::Long : Regime::Auto;
            const auto t0 = std::chrono::steady_clock::now();
            const LcsReport rep = lcs_report(s, t, force);
            const double ms = since(t0);
            json j = {{"command", "lcs"},
                      {"inputs", inputs_json(file_s, s, file_t, t)},
                      {"regime", regime_name(rep.regime)},
                      {"forced", force != Regime::Auto},
                      {"length", rep.result.length},
                      {"pos_s", rep.result.pos_s},
                      {"pos_t", rep.result.pos_t},
                      {"params", {{"tau", rep.params.tau}, {"m", rep.params.m}, {"delta_cap", rep.params.delta_cap}}},
                      {"structures",
                       {{"medium_anchors", {rep.medium.anchors_i, rep.medium.anchors_ii, rep.medium.anchors_iii}},
                        {"medium_families", {rep.medium.family_i, rep.medium.family_ii, rep.medium.family_iii}},
                        {"long_anchors", rep.long_anchors}}}};
            if (timing) j["time_ms"] = ms;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (c_klcs->parsed()) {
            if (k > kMaxMismatches) throw UsageError("k = " + std::to_string(k) + " exceeds the supported maximum " + std::to_string(kMaxMismatches));
            const std::string s = read_input(file_s, raw), t = read_input(file_t, raw);
            const auto t0 = std::chrono::steady_clock::now();
            const KlcsReport rep = klcs_report(s, t, k);
            const double ms = since(t0);
            std::size_t family = 0, instances = 0;
            for (const KStats& st : rep.runs) family += st.p_family_total, instances += st.instances;
            json j = {{"command", "klcs"},
                      {"inputs", inputs_json(file_s, s, file_t, t)},
                      {"k", k},
                      {"length", rep.result.length},
                      {"pos_s", rep.result.pos_s},
                      {"pos_t", rep.result.pos_t},
                      {"mismatches", rep.result.mismatches},
                      {"lcs", rep.lcs},
                      {"tested_lengths", rep.ells},
                      {"structures",
                       {{"anchors_max", rep.anchors_max},
                        {"family_runs", rep.runs.size()},
                        {"brute_evaluations", rep.brute_evaluations},
                        {"p_family_total", family},
                        {"instances", instances}}}};
            if (timing) j["time_ms"] = ms;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (c_verify->parsed()) {
            VerifyConfig cfg{seed, max_n, scale, inject};
            json checks = json::array();
            bool ok = true;
            for (const CheckResult& r : run_suite(suite, cfg)) {
                checks.push_back(check_json(r, timing));
                if (!r.pass && !r.soft) {
                    ok = false;
                    std::cerr << "FAIL " << r.id << ": " << r.failure << "\n";
                }
            }
            json j = {{"command", "verify"}, {"suite", suite}, {"seed", seed}, {"max_n", max_n}, {"scale", scale}, {"pass", ok}, {"checks", checks}};
            if (!inject.empty()) j["inject"] = inject;
            std::cout << j.dump(2) << "\n";
            return ok ? 0 : 1;
        }
        if (c_bench->parsed()) {
            const Generator g = *parse_generator(gen);
            std::mt19937_64 rng(seed);
            const GeneratedPair in = generate(g, n, sigma, rng, k);
            std::cout << "n,sigma,generator,algorithm,regime,repeat,length,planted,time_ns,anchors,speedup\n";
            auto time_ns = [](auto&& f) {
                const auto t0 = std::chrono::steady_clock::now();
                f();
                return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
            };
            auto row = [&](const char* algo, const std::string& reg, std::size_t r, std::size_t len, long long ns, std::size_t anchors,
                           double speedup) {
                std::cout << n << ',' << sigma << ',' << gen << ',' << algo << ',' << reg << ',' << r << ',' << len << ',' << in.planted << ',';
                if (!no_timing) std::cout << ns;
                std::cout << ',' << anchors << ',';
                if (!no_timing) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.3f", speedup);
                    std::cout << buf;
                }
                std::cout << '\n';
            };
            for (std::size_t r = 0; r < repeats; ++r) {
                LcsResult base;
                const long long t_base = time_ns([&] { base = lcs_suffix_automaton(in.s, in.t); });
                row("sam", "baseline", r, base.length, t_base, 0, 1.0);
                LcsReport rep;
                const long long t_packed = time_ns([&] { rep = lcs_report(in.s, in.t); });
                const std::size_t anchors = rep.medium.anchors_i + rep.medium.anchors_ii + rep.medium.anchors_iii + rep.long_anchors;
                row("packed", regime_name(rep.regime), r, rep.result.length, t_packed, anchors,
                    static_cast<double>(t_base) / static_cast<double>(std::max<long long>(t_packed, 1)));
                if (g == Generator::PlantedKlcs) {
                    KlcsReport kr;
                    const long long t_k = time_ns([&] { kr = klcs_report(in.s, in.t, k); });
                    row("klcs", "k=" + std::to_string(k), r, kr.result.length, t_k, kr.anchors_max,
                        static_cast<double>(t_base) / static_cast<double>(std::max<long long>(t_k, 1)));
                }
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}
