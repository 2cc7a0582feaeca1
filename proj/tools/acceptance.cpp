// Acceptance runner: one PASS/FAIL line per criterion, then the recorded constants.
// Exit status 1 when any hard criterion fails; the throughput target is soft.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "packed_lcs/verify.hpp"

using namespace plcs;

namespace {

struct Line {
    std::string name;
    bool pass;
    bool soft;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string why(const CheckResult& r) { return r.pass ? std::string() : "; " + r.failure; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::uint64_t seed = 1;
    double scale = 1.0;
    std::size_t perf_n = std::size_t{1} << 22;
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--scale", scale, "case-count multiplier (1 = full criteria)")->check(CLI::PositiveNumber);
    app.add_option("--perf-n", perf_n, "length for the throughput smoke test")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    VerifyConfig cfg{seed, 0, scale, {}};
    std::vector<Line> lines;
    auto secs = [](const CheckResult& r) { return fmt("%.1f s", r.seconds); };

    const CheckResult lcs = check_lcs_equivalence(cfg);
    const bool lcs_fast = lcs.seconds < 300;
    lines.push_back({"LCS oracle equivalence", lcs.pass && lcs_fast, false,
                     std::to_string(lcs.cases) + " cases (" + fmt("%.0f", lcs.metric("random_cases")) + " random, " +
                         fmt("%.0f", lcs.metric("planted_cases")) + " planted: " + fmt("%.0f", lcs.metric("planted_short")) + " short / " +
                         fmt("%.0f", lcs.metric("planted_medium")) + " medium / " + fmt("%.0f", lcs.metric("planted_long")) +
                         " long), " + secs(lcs) + " of 300 s" + why(lcs)});

    const std::vector<CheckResult> k = check_klcs(cfg);
    const CheckResult& keq = k[0];
    lines.push_back({"k-LCS oracle equivalence", keq.pass && keq.seconds < 600, false,
                     std::to_string(keq.cases) + " pairs over k = 1, 2, 3, " + secs(keq) + " of 600 s" + why(keq)});

    const CheckResult paper = check_paper_value(cfg);
    lines.push_back({"Paper value LCP_3 = 6 and maxpair", paper.pass, false,
                     "LCP_3 = " + fmt("%.0f", paper.metric("lcp_k")) + ", maxpair check " + (paper.metric("maxpair") > 0 ? "passed" : "failed") + why(paper)});

    const CheckResult sync = check_sync_validity(cfg);
    lines.push_back({"Synchronizing-set validity", sync.pass, false,
                     std::to_string(sync.cases) + " strings, max |A|*tau/n = " + fmt("%.2f", sync.metric("density_max")) + why(sync)});

    const CheckResult ab = check_alpha_beta_agreement(cfg), pre = check_prefix_agreement(cfg);
    lines.push_back({"Solver cross-agreement", ab.pass && pre.pass, false,
                     std::to_string(ab.cases) + " (alpha,beta) instances, " + std::to_string(pre.cases) + " prefix instances" + why(ab) + why(pre)});

    const CheckResult mp = check_max_pair_k(cfg);
    lines.push_back({"maxPairLCP_k equivalence", mp.pass, false, std::to_string(mp.cases) + " instances" + why(mp)});

    const CheckResult& growth = k[1];
    lines.push_back({"Family growth bounds", growth.pass, false,
                     std::to_string(growth.cases) + " family runs, C_fam = " + fmt("%.3f", growth.metric("c_fam")) +
                         " (limit 64), per-source excess " + fmt("%.0f", growth.metric("per_source_excess")) + why(growth)});

    const CheckResult merge = check_merge_work(cfg);
    const CheckResult& kmerge = k[2];
    lines.push_back({"Merge-work bound", merge.pass && kmerge.pass, false,
                     "max merged / (N ceil(lg N)^2) = " + fmt("%.3f", merge.metric("merge_ratio_max")) + " on " + std::to_string(merge.cases) +
                         " solver instances, " + fmt("%.3f", kmerge.metric("merge_ratio_max")) + " inside k-LCS" + why(merge) + why(kmerge)});

    const CheckResult perf = check_perf_smoke(perf_n, 2, seed);
    lines.push_back({"Performance smoke", perf.pass, perf.soft,
                     "n = " + fmt("%.0f", perf.metric("n")) + ", LCS " + fmt("%.0f", perf.metric("lcs")) + ", baseline " +
                         fmt("%.2f s", perf.metric("sam_seconds")) + ", packed " + fmt("%.2f s", perf.metric("packed_seconds")) +
                         " (speedup " + fmt("%.3f", perf.metric("speedup")) + "), medium path alone " + fmt("%.2f s", perf.metric("medium_seconds")) +
                         (perf.pass ? "" : perf.soft ? "; soft target of 2x not met" : why(perf))});

    bool ok = true;
    for (const Line& l : lines) {
        const char* tag = l.pass ? "PASS" : l.soft ? "FAIL (soft)" : "FAIL";
        std::printf("[%s] %s: %s\n", tag, l.name.c_str(), l.detail.c_str());
        if (!l.pass && !l.soft) ok = false;
    }
    std::printf("constants: C_fam=%.3f C_anchor=%.3f merge_ratio=%.3f sync_density=%.3f speedup=%.3f\n", growth.metric("c_fam"),
                keq.metric("anchor_ratio_max"), std::max(merge.metric("merge_ratio_max"), kmerge.metric("merge_ratio_max")),
                sync.metric("density_max"), perf.metric("speedup"));
    return ok ? 0 : 1;
}
