#pragma once
// Exact longest common substring: short / medium / long regimes and the dispatcher.

#include <string>
#include <string_view>
#include <vector>

#include "packed_lcs/fragment_trie.hpp"
#include "packed_lcs/family_lcp.hpp"
#include "packed_lcs/sync_runs.hpp"

namespace plcs {

struct LcsResult {
    std::size_t length = 0;
    std::size_t pos_s = 0;
    std::size_t pos_t = 0;
};

/// Difference cover modulo d with h stored per difference class: h(i,j) = (base[(j-i) mod d] - i) mod d.
class DCover {
public:
    DCover() = default;
    std::size_t d() const noexcept { return d_; }
    const std::vector<u32>& residues() const noexcept { return residues_; }
    bool contains(std::size_t r) const { return member_[r % d_]; }
    std::size_t h(std::size_t i, std::size_t j) const {
        std::size_t delta = (j % d_ + d_ - i % d_) % d_;
        return (base_[delta] + d_ - i % d_) % d_;
    }
    static DCover build(std::size_t d);
    /// Throws if the residues do not cover every difference.
    static DCover from_residues(std::size_t d, std::vector<u32> residues);

private:
    std::size_t d_ = 1;
    std::vector<u32> residues_;
    std::vector<bool> member_;
    std::vector<u32> base_;
};

inline DCover build_d_cover(std::size_t d) { return DCover::build(d); }

/// Suffix-automaton LCS over plain codes; also the byte-wise baseline.
LcsResult lcs_suffix_automaton(const std::vector<Code>& s, const std::vector<Code>& t, std::size_t sigma);
LcsResult lcs_suffix_automaton(std::string_view s, std::string_view t);

/// Exact when the true LCS is at most m; always a valid common substring.
LcsResult lcs_short(const PackedText& s, const PackedText& t, std::size_t m);

/// Exact when the true LCS is at least d.
LcsResult lcs_long(const FragmentIndex& idx, std::size_t d);

struct MediumAnchor {
    u32 pos = 0;                 // position inside S or T
    u32 run = UINT32_MAX;        // run index into the S$T run list (cases II/III)
};

struct MediumAnchors {
    std::size_t tau = 0;
    std::vector<MediumAnchor> s1, t1, s2, t2, s3, t3;  // A_I, A_II, A_III per string
    TauRunGroups runs;                                // runs of S$T
};

MediumAnchors build_anchors_medium(const FragmentIndex& idx, std::size_t tau);

struct MediumStats {
    std::size_t anchors_i = 0, anchors_ii = 0, anchors_iii = 0;
    std::size_t family_i = 0, family_ii = 0, family_iii = 0;
};

/// Exact when the true LCS lies in [3 tau, delta_cap].
LcsResult lcs_medium(const FragmentIndex& idx, std::size_t tau, std::size_t delta_cap, MediumStats* stats = nullptr);

enum class Regime { Auto, Short, Medium, Long };
const char* regime_name(Regime r);

struct LcsParams {
    std::size_t tau = 3, m = 1, delta_cap = 1;
};
LcsParams lcs_params(std::size_t n, std::size_t sigma);

struct LcsReport {
    LcsResult result;
    Regime regime = Regime::Short;  // the routine that produced the final answer
    LcsParams params;
    MediumStats medium;
    std::size_t long_anchors = 0;
};

LcsReport lcs_report(std::string_view s, std::string_view t, Regime force = Regime::Auto);
LcsResult lcs(std::string_view s, std::string_view t);

}  // namespace plcs
