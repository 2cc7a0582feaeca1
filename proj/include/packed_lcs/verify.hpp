#pragma once
// Oracle-equivalence and property suites, input generators, counterexample shrinking.
// Shared by the CLI `verify` / `bench` commands and the acceptance runner.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace plcs {

struct VerifyConfig {
    std::uint64_t seed = 1;
    std::size_t max_n = 0;  // 0 keeps each check's own size limit
    double scale = 1.0;     // multiplies case counts (at least one case runs)
    std::string inject;     // fault to inject; empty for none
};

struct Metric {
    std::string name;
    double value = 0;
};

struct CheckResult {
    std::string id;
    std::string title;
    bool pass = true;
    bool soft = false;  // a failure here is reported but does not fail the run
    std::size_t cases = 0;
    std::vector<Metric> metrics;
    std::string failure;  // first failing case after shrinking
    double seconds = 0;

    double metric(std::string_view name) const;
};

/// lcs, klcs, sync, families, wavelet, all.
const std::vector<std::string>& suite_names();
/// Fault names accepted by VerifyConfig::inject.
const std::vector<std::string>& fault_names();
/// Throws std::invalid_argument for unknown suite or fault names.
std::vector<CheckResult> run_suite(std::string_view suite, const VerifyConfig& cfg);

CheckResult check_lcs_equivalence(const VerifyConfig& cfg);
/// Three results: k-LCS equivalence, family growth, merge work on the k-LCS instances.
std::vector<CheckResult> check_klcs(const VerifyConfig& cfg);
CheckResult check_paper_value(const VerifyConfig& cfg);
CheckResult check_sync_validity(const VerifyConfig& cfg);
CheckResult check_alpha_beta_agreement(const VerifyConfig& cfg);
CheckResult check_prefix_agreement(const VerifyConfig& cfg);
CheckResult check_max_pair_k(const VerifyConfig& cfg);
CheckResult check_merge_work(const VerifyConfig& cfg);
/// Dispatcher and medium path against the suffix automaton on random strings; the
/// 2x throughput target is soft.
CheckResult check_perf_smoke(std::size_t n, std::size_t sigma, std::uint64_t seed);

enum class Generator { Random, Periodic, PlantedLcs, PlantedKlcs };
std::optional<Generator> parse_generator(std::string_view name);
const char* generator_name(Generator g);

struct GeneratedPair {
    std::string s, t;
    std::size_t planted = 0;  // length of the planted block (0 when none)
};

/// Letters are 'a'.. in increasing order; planted-klcs plants a block with `k` substitutions.
GeneratedPair generate(Generator g, std::size_t n, std::size_t sigma, std::mt19937_64& rng, std::size_t k = 1);

}  // namespace plcs
