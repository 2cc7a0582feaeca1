#pragma once
// Longest common substring with k mismatches: anchors, modified strings,
// complete / bicomplete families and the length-doubling driver.

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "packed_lcs/family_lcp.hpp"
#include "packed_lcs/fragment_trie.hpp"
#include "packed_lcs/suffix_index.hpp"

namespace plcs {

inline constexpr std::size_t kMaxMismatches = 4;

/// Source span on the combined payload plus up to kMaxMismatches substitutions.
/// Positions are 0-based offsets into the source, strictly increasing; each letter
/// differs from the source letter it replaces.
struct ModifiedString {
    Span src;
    std::uint8_t count = 0;
    std::array<std::pair<u32, Code>, kMaxMismatches> mods{};

    std::size_t size() const noexcept { return src.len; }
    /// Largest modified position + 1 (0 when unmodified).
    std::size_t reach() const noexcept { return count ? mods[count - 1].first + 1 : 0; }
};

Code mod_char(const FragmentIndex& idx, const ModifiedString& m, std::size_t i);
ModifiedString with_substitution(const FragmentIndex& idx, ModifiedString m, std::size_t pos, Code letter);
/// LCP of two modified strings, with at most 2k+1 LCE queries.
std::size_t lcp_modified(const FragmentIndex& idx, const ModifiedString& a, const ModifiedString& b);
int compare_modified(const FragmentIndex& idx, const ModifiedString& a, const ModifiedString& b);
std::vector<Code> materialize(const FragmentIndex& idx, const ModifiedString& m);

/// Longest prefix pair at Hamming distance <= k (kangaroo jumps).
std::size_t lcp_k(const FragmentIndex& idx, Span u, Span v, std::size_t k);

/// Member of a complete-family set: a modified string and the id of its source element.
struct ModElem {
    ModifiedString str;
    u32 src = 0;
};

struct FamilyCounters {
    std::size_t sets = 0;             // emitted sets
    std::size_t total = 0;            // emitted modified strings
    std::size_t max_per_source = 0;   // largest count of one source inside one set
    std::size_t light_depth_max = 0;  // most light ancestors seen for one trie leaf
    bool light_bound_ok = true;       // light ancestors <= min(height, ceil lg leaves) + 1
};

/// Streams a k-complete family for F; every emitted set is sorted lexicographically.
/// With `origin` given (0/1 per element), sets lacking one of the two origins are dropped
/// together with everything derived from them.
void build_complete_family(const FragmentIndex& idx, const std::vector<Span>& F, std::size_t k,
                           const std::function<void(const std::vector<ModElem>&)>& sink,
                           FamilyCounters* counters = nullptr, const std::vector<std::uint8_t>* origin = nullptr);

struct BiElem {
    ModifiedString first, second;
    u32 src = 0;  // index into the pair family
};

struct BiSet {
    std::vector<BiElem> elems;
    std::vector<u32> order1, order2;  // lexicographic orders by first / second component
};

struct FamilyBatch {
    std::vector<BiSet> sets;
    std::size_t size() const;
};

struct BicompleteStats {
    FamilyCounters first, second;
    std::size_t batches = 0;
    std::size_t max_batch = 0;     // tuples held by the largest batch
    std::size_t budget = 0;
    bool budget_ok = true;         // a batch exceeded the budget only by its last set
    std::size_t max_pair_multiplicity = 0;  // copies of one pair inside one set
};

using PairFamily = std::vector<std::pair<Span, Span>>;

/// Streams a (k1,k2)-bicomplete family for G in batches of about n+|G| tuples.
/// With `origin` and `hopeless` given, product sets whose cross-origin LCP bound satisfies
/// `hopeless` are skipped.
void build_bicomplete_family(const FragmentIndex& idx, const PairFamily& G, std::size_t k1, std::size_t k2,
                             const std::function<void(const FamilyBatch&)>& sink, BicompleteStats* stats = nullptr,
                             const std::vector<std::uint8_t>* origin = nullptr,
                             const std::function<bool(std::size_t)>& hopeless = {});

struct KStats {
    BicompleteStats bicomplete;
    std::size_t p_family_total = 0;  // sum of |U'|+|V'| over the P family
    std::size_t subproblems = 0;
    std::size_t instances = 0;       // Two-Families instances solved
    std::size_t n_elements = 0;      // N = |U|+|V|
    std::size_t ell = 0;
    std::size_t k1 = 0, k2 = 0;
    std::size_t merged_elements = 0; // general-solver merge counter
    double merge_ratio_max = 0;      // max over instances of merged / (Ni * ceil(lg Ni)^2)
    std::size_t pruned = 0;          // subproblems skipped by the adjacent-LCP bound
    std::size_t pairwise = 0;        // subproblems small enough to check pair by pair
};

/// max over (u,v) of LCP_k1(u1,v1) + LCP_k2(u2,v2). Components must be at most ell long.
/// With a floor, values at or below it may be missed; anything above it is still exact.
PairLcpResult max_pair_lcp_k(const FragmentIndex& idx, const PairFamily& U, const PairFamily& V, std::size_t k1,
                             std::size_t k2, std::size_t ell, KStats* stats = nullptr,
                             std::optional<std::size_t> floor = std::nullopt);

/// Quadratic reference on the same spans.
PairLcpResult max_pair_lcp_k_brute(const FragmentIndex& idx, const PairFamily& U, const PairFamily& V, std::size_t k1,
                                   std::size_t k2);

struct KlcsAnchors {
    std::size_t tau = 0;
    bool all_positions = false;
    std::vector<u32> s, t;  // sorted, distinct
    std::size_t from_sync = 0, from_runs = 0, from_misperiods = 0;
};

/// Anchors for candidate lengths in (ell/2, ell]; positions are 0-based in S and T.
KlcsAnchors klcs_anchors(const FragmentIndex& idx, std::size_t ell, std::size_t k);

struct KlcsResult {
    std::size_t length = 0;
    std::size_t pos_s = 0, pos_t = 0;
    std::vector<std::size_t> mismatches;  // offsets inside the witness
};

struct KlcsReport {
    KlcsResult result;
    std::size_t lcs = 0;
    std::vector<std::size_t> ells;  // tested lengths
    std::vector<KStats> runs;       // one per (ell, k') evaluated by the family machinery
    std::size_t brute_evaluations = 0;
    std::size_t anchors_max = 0;
    double anchor_ratio_max = 0;    // (|A_S|+|A_T|) * ell / n
};

KlcsReport klcs_report(std::string_view s, std::string_view t, std::size_t k);
KlcsResult klcs(std::string_view s, std::string_view t, std::size_t k);

}  // namespace plcs
