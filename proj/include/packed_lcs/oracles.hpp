#pragma once
// Brute-force references. Independent of the index structures in the other modules.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "packed_lcs/text.hpp"

namespace plcs {

struct OracleConfig {
    std::size_t max_n = 4096;       // quadratic string oracles
    std::size_t max_family = 600;   // family brute force, per side
    std::uint64_t seed = 0;
};

struct OracleMatch {
    std::size_t length = 0;
    std::size_t pos_s = 0;
    std::size_t pos_t = 0;
};

OracleMatch lcs_dp(const std::string& s, const std::string& t, const OracleConfig& cfg = {});
/// Longest equal-length pair at Hamming distance <= k, by per-diagonal sliding window.
OracleMatch klcs_dp(const std::string& s, const std::string& t, std::size_t k, const OracleConfig& cfg = {});

std::size_t naive_lcp_k(const std::string& u, const std::string& v, std::size_t k);

/// Definition check: um/vm are u/v after substitution; true when they form a (u,v)_k-maxpair.
bool is_maxpair(const std::string& u, const std::string& um, const std::string& v, const std::string& vm, std::size_t k);

using StringPair = std::pair<std::string, std::string>;
std::size_t brute_max_pair_lcp(const std::vector<StringPair>& p, const std::vector<StringPair>& q, std::size_t k1,
                               std::size_t k2, const OracleConfig& cfg = {});

struct SyncReport {
    bool ok = true;
    std::string message;
    std::size_t violation_position = 0;
    double density = 0.0;  // |A| * tau / n
};
SyncReport check_sync_set(const std::vector<std::uint32_t>& a, const std::vector<Code>& text, std::size_t tau);

/// Smallest period of text[b, e) (e - b when aperiodic).
std::size_t naive_period(const std::vector<Code>& text, std::size_t b, std::size_t e);

struct NaiveRun {
    std::size_t start, end, period;
    bool operator==(const NaiveRun&) const = default;
};
std::vector<NaiveRun> naive_tau_runs(const std::vector<Code>& text, std::size_t tau);

std::vector<std::size_t> naive_right_misperiods(const std::vector<Code>& x, std::size_t i, std::size_t j, std::size_t k);
std::vector<std::size_t> naive_left_misperiods(const std::vector<Code>& x, std::size_t i, std::size_t j, std::size_t k);

}  // namespace plcs
