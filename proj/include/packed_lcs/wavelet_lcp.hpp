#pragma once
// Skeleton binarization, wavelet tree over first-component leaves, packed LCP lists,
// and the (alpha, beta)-family solver.

#include <cstdint>
#include <vector>

#include "packed_lcs/family_lcp.hpp"

namespace plcs {

/// Plain bit vector with rank: one absolute count per 512-bit superblock, popcount inside.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
    void push_back(bool b);
    void set(std::size_t i, bool b);
    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    std::size_t size() const noexcept { return n_; }
    /// Bits [pos, pos+len) with bit pos in the least significant position. len <= 64.
    std::uint64_t get_bits(std::size_t pos, std::size_t len) const;
    void build_rank();
    /// Ones in [0, i).
    std::size_t rank1(std::size_t i) const;
    std::size_t rank0(std::size_t i) const { return i - rank1(i); }
    std::size_t ones() const { return rank1(n_); }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> super_;
};

/// Fixed-width integers, `per_word` entries per 64-bit word (entries never straddle words).
class PackedIntVector {
public:
    PackedIntVector() = default;
    PackedIntVector(unsigned width, unsigned per_word);
    void push_back(std::uint64_t v);
    std::uint64_t get(std::size_t i) const;
    std::size_t size() const noexcept { return n_; }
    unsigned width() const noexcept { return width_; }
    unsigned per_word() const noexcept { return per_word_; }
    std::uint64_t word(std::size_t w) const { return words_[w]; }
    std::size_t word_count() const noexcept { return words_.size(); }
    void push_word(std::uint64_t w, std::size_t count);

private:
    unsigned width_ = 1, per_word_ = 64;
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct SkeletonNode {
    static constexpr u32 none = UINT32_MAX;
    u32 left = none, right = none;
    u32 trie_node = 0;  // gives val() and its string depth
    u32 depth = 0;
    u32 leaf_lo = 0, leaf_hi = 0;  // leaf ids under this node: [lo, hi)
    bool is_leaf() const { return left == none; }
};

struct SkeletonTree {
    std::vector<SkeletonNode> nodes;
    u32 root = SkeletonNode::none;
    std::vector<u32> leaf_of_trie_node;  // terminal trie node -> leaf id (none otherwise)
    std::vector<u32> leaf_node;          // leaf id -> skeleton node
    std::size_t leaf_count() const { return leaf_node.size(); }
    std::size_t height() const;
};

/// Full binary tree over the distinct strings of the trie. A terminal node with children gets an
/// extra leaf (the string itself, ordered last); nodes with many children are split by weight.
SkeletonTree binarize_skeleton(const CompactedTrie& trie);
/// Same, with leaves for exactly the marked trie nodes instead of the terminal ones.
SkeletonTree binarize_skeleton(const CompactedTrie& trie, const std::vector<bool>& marked);

struct WaveletTree {
    std::vector<BitVector> bits;       // per skeleton node (empty for leaves)
    std::vector<std::size_t> length;   // |T_v|
};

WaveletTree build_wavelet(const std::vector<u32>& leaf_seq, const SkeletonTree& skel);
std::vector<u32> reconstruct_sequence(const WaveletTree& wt, const SkeletonTree& skel);

/// Adjacent LCPs of a second-component list plus the parallel origin bits.
struct LcpsList {
    PackedIntVector values;
    BitVector origin;
    std::size_t size() const { return values.size(); }
};

/// Block length used for tables with entries of the given width (0 = tables disabled).
std::size_t lcps_block_length(unsigned width);
unsigned lcps_width(std::size_t beta);

LcpsList make_lcps_list(const std::vector<u32>& values, const std::vector<bool>& origin, unsigned width);
/// LCP list of the sublist picked by b (bits equal to `right`), without touching the strings.
LcpsList propagate_lcps(const LcpsList& parent, const BitVector& b, bool right);
/// max values[i] over i >= 1 with origin[i-1] != origin[i]; -1 when none.
long cross_origin_max(const LcpsList& list);

PairLcpResult solve_alpha_beta(const TwoFamiliesInstance& inst, std::size_t alpha, std::size_t beta);

}  // namespace plcs
