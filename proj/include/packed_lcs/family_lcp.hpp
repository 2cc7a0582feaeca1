#pragma once
// Two String Families LCP: max over (p,q) in P x Q of LCP(p1,q1) + LCP(p2,q2).

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "packed_lcs/suffix_index.hpp"

namespace plcs {

/// Pairs are (node in trie1, node in trie2); a node's string is its root path.
struct TwoFamiliesInstance {
    std::shared_ptr<const CompactedTrie> trie1, trie2;  // LCA must be prepared
    std::vector<std::pair<u32, u32>> P, Q;
    std::size_t size() const { return P.size() + Q.size(); }
};

struct PairLcpResult {
    std::size_t value = 0;
    bool has_witness = false;
    std::size_t p_index = 0, q_index = 0;
};

struct SolverStats {
    std::size_t merged_elements = 0;  // elements moved from smaller into larger sets
};

/// Bottom-up over trie1 with small-to-large merging of trie2-ordered sets.
PairLcpResult max_pair_lcp_general(const TwoFamiliesInstance& inst, SolverStats* stats = nullptr);

/// All first components must be prefixes of one string (checked).
PairLcpResult max_pair_lcp_prefix(const TwoFamiliesInstance& inst);

/// Builds both tries from explicit strings. Intended for tests and verification suites.
TwoFamiliesInstance instance_from_strings(const std::vector<std::pair<std::string, std::string>>& p,
                                          const std::vector<std::pair<std::string, std::string>>& q);

/// Sorted-strings trie helper: returns the trie and for every input its locus.
std::shared_ptr<CompactedTrie> trie_from_strings(const std::vector<std::string>& strings, std::vector<u32>& locus_of);

/// Value of one concrete pair (LCA depths in both tries).
std::size_t pair_value(const TwoFamiliesInstance& inst, std::size_t p_index, std::size_t q_index);

}  // namespace plcs
