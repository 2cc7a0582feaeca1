#pragma once
// tau-synchronizing sets, tau-runs with Lyndon roots, misperiods.

#include <cstdint>
#include <map>
#include <vector>

#include "packed_lcs/suffix_index.hpp"
#include "packed_lcs/text.hpp"

namespace plcs {

struct SyncSet {
    std::size_t tau = 0;
    std::size_t n = 0;
    std::vector<u32> positions;  // sorted, each in [0, n - 2tau]
};

/// windows[j] = true iff per(T[j..j+tau)) <= tau/3, for j in [0, n - tau].
std::vector<bool> periodic_windows(const std::vector<Code>& text, std::size_t tau);

/// Lexicographic class ids of length-tau windows (equal ids iff equal windows), indexed by start.
/// Entries for starts past n - tau are unspecified.
std::vector<u32> window_ids(const SuffixIndex& idx, std::size_t tau);

/// Minimizer construction: i in A iff the smallest id over the non-periodic windows
/// starting in [i, i+tau] sits at i or i+tau.
SyncSet build_sync_set(const std::vector<Code>& text, std::size_t tau);
SyncSet build_sync_set(const std::vector<Code>& text, std::size_t tau, const std::vector<u32>& ids);
SyncSet build_sync_set(const PackedText& text, std::size_t tau);

/// min{ j in A, j >= i } or n - 2tau + 1 when none.
std::size_t succ_sync(const SyncSet& a, std::size_t i);

struct TauRun {
    std::size_t start = 0;
    std::size_t end = 0;          // exclusive
    std::size_t period = 0;
    std::size_t lyndon_start = 0;  // first occurrence of the Lyndon root inside the run
    std::size_t second_lyndon_start() const { return lyndon_start + period; }
    std::size_t tail() const { return (end - lyndon_start) % period; }
    std::size_t length() const { return end - start; }
};

/// Index of the least rotation of s (Booth).
std::size_t least_rotation(const std::vector<Code>& s);

struct TauRunGroups {
    std::vector<TauRun> runs;                                   // sorted by start
    std::map<std::vector<Code>, std::vector<u32>> by_root;      // root -> run indices
    std::map<std::pair<std::vector<Code>, std::size_t>, std::vector<u32>> by_root_tail;
};

/// All maximal runs of length >= 3tau-1 with smallest period <= tau/3.
TauRunGroups find_tau_runs(const std::vector<Code>& text, std::size_t tau);

struct MisperiodSets {
    std::vector<std::size_t> left;   // descending: the k largest misperiods < i
    std::vector<std::size_t> right;  // ascending: the k smallest misperiods >= j
};

/// Misperiods of text w.r.t. the window [i, j).
MisperiodSets misperiods(const BidirectionalLce& lce, std::size_t i, std::size_t j, std::size_t k);
std::vector<std::size_t> right_misperiods(const BidirectionalLce& lce, std::size_t i, std::size_t j, std::size_t k);
std::vector<std::size_t> left_misperiods(const BidirectionalLce& lce, std::size_t i, std::size_t j, std::size_t k);

/// The two smallest positions in [from, n) congruent to q modulo p.
std::vector<std::size_t> two_smallest_congruent(std::size_t from, std::size_t q, std::size_t p, std::size_t n);

}  // namespace plcs
