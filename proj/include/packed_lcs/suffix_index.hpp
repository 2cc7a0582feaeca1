#pragma once
// Suffix array / LCP / RMQ, LCE over fragments, compacted tries with LCA.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "packed_lcs/text.hpp"

namespace plcs {

using u32 = std::uint32_t;

/// SA-IS over codes in [0, upper). No sentinel required.
std::vector<u32> build_suffix_array(const std::vector<u32>& s, u32 upper);
/// Kasai: lcp[r] = LCP(sa[r-1], sa[r]), lcp[0] = 0.
std::vector<u32> build_lcp(const std::vector<u32>& s, const std::vector<u32>& sa, const std::vector<u32>& isa);

/// Range-argmin. Sparse table by default; block mode uses 64-wide bitmask blocks (O(n) words).
class Rmq {
public:
    enum class Mode { Sparse, Block };
    Rmq() = default;
    Rmq(std::vector<u32> values, Mode mode);
    /// Leftmost argmin over the closed range [l, r].
    std::size_t argmin(std::size_t l, std::size_t r) const;
    u32 min(std::size_t l, std::size_t r) const { return vals_[argmin(l, r)]; }
    const std::vector<u32>& values() const noexcept { return vals_; }
    Mode mode() const noexcept { return mode_; }

private:
    std::size_t better(std::size_t a, std::size_t b) const { return vals_[b] < vals_[a] ? b : a; }
    std::size_t sparse_query(const std::vector<std::vector<u32>>& tab, std::size_t l, std::size_t r) const;
    static std::vector<std::vector<u32>> build_sparse(const std::vector<u32>& idx, const std::vector<u32>& v);

    std::vector<u32> vals_;
    Mode mode_ = Mode::Sparse;
    std::vector<std::vector<u32>> sparse_;       // over positions (Sparse) or block argmins (Block)
    std::vector<std::uint64_t> masks_;           // Block mode
    std::vector<u32> block_arg_;
};

/// Mode picked by size unless forced: sparse tables get too large above ~2^20 entries.
Rmq::Mode default_rmq_mode(std::size_t n);

class SuffixIndex {
public:
    SuffixIndex() = default;
    SuffixIndex(const std::vector<u32>& codes, u32 upper, Rmq::Mode mode);
    explicit SuffixIndex(const std::vector<u32>& codes, u32 upper)
        : SuffixIndex(codes, upper, default_rmq_mode(codes.size())) {}

    std::size_t size() const noexcept { return sa_.size(); }
    const std::vector<u32>& sa() const noexcept { return sa_; }
    const std::vector<u32>& isa() const noexcept { return isa_; }
    const std::vector<u32>& lcp() const noexcept { return rmq_.values(); }
    /// Longest common extension of suffixes i and j.
    std::size_t lce(std::size_t i, std::size_t j) const;

private:
    std::vector<u32> sa_, isa_;
    Rmq rmq_;
};

enum class Order { Less = -1, Equal = 0, Greater = 1 };

/// Combined text of (S, T) with its suffix index; answers fragment LCE and comparisons.
class FragmentIndex {
public:
    FragmentIndex(const PackedText& s, const PackedText& t);
    FragmentIndex(const PackedText& s, const PackedText& t, Rmq::Mode mode);

    const CombinedText& text() const noexcept { return text_; }
    const SuffixIndex& index() const noexcept { return idx_; }
    const PackedText& s() const noexcept { return s_; }
    const PackedText& t() const noexcept { return t_; }

    std::size_t lce_pos(std::size_t a, std::size_t b) const { return idx_.lce(a, b); }
    std::size_t lce_fragments(const Fragment& a, const Fragment& b) const;
    Order compare_fragments(const Fragment& a, const Fragment& b) const;
    /// LCE of payload ranges [a, a+la) and [b, b+lb).
    std::size_t lce_ranges(std::size_t a, std::size_t la, std::size_t b, std::size_t lb) const;

private:
    PackedText s_, t_;
    CombinedText text_;
    SuffixIndex idx_;
};

/// Forward and backward LCE over one plain code sequence.
class BidirectionalLce {
public:
    BidirectionalLce() = default;
    explicit BidirectionalLce(std::vector<Code> codes);
    std::size_t size() const noexcept { return codes_.size(); }
    const std::vector<Code>& codes() const noexcept { return codes_; }
    std::size_t forward(std::size_t a, std::size_t b) const { return fwd_.lce(a, b); }
    /// Longest common suffix of codes[0..a] and codes[0..b] (inclusive ends).
    std::size_t backward(std::size_t a, std::size_t b) const {
        std::size_t n = codes_.size();
        return rev_.lce(n - 1 - a, n - 1 - b);
    }
    const SuffixIndex& forward_index() const noexcept { return fwd_; }

private:
    std::vector<Code> codes_;
    SuffixIndex fwd_, rev_;
};

/// Compacted trie over a sorted list of strings given by lengths, adjacent LCPs and a symbol accessor.
class CompactedTrie {
public:
    struct Node {
        u32 parent = 0;
        u32 depth = 0;
        u32 rep = 0;          // some input string in the subtree; edge label = rep[parent.depth, depth)
        Code key = 0;         // first symbol of the incoming edge
        std::vector<u32> children;   // in lexicographic order
        std::vector<u32> terminals;  // inputs ending exactly here
    };
    using SymbolFn = std::function<Code(std::size_t idx, std::size_t pos)>;

    CompactedTrie() = default;
    CompactedTrie(const std::vector<u32>& lengths, const std::vector<u32>& adjacent_lcps, const SymbolFn& symbol);

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t input_count() const noexcept { return locus_.size(); }
    const Node& node(std::size_t v) const { return nodes_[v]; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    static constexpr u32 root() { return 0; }
    /// Node where input idx ends.
    u32 locus(std::size_t idx) const { return locus_[idx]; }
    std::size_t terminal_count() const;
    u32 depth(u32 v) const { return nodes_[v].depth; }

    /// Preorder rank and subtree end (exclusive), computed lazily by prepare_lca().
    u32 pre(u32 v) const { return pre_[v]; }
    u32 pre_end(u32 v) const { return pre_end_[v]; }
    const std::vector<u32>& preorder() const noexcept { return order_; }

    void prepare_lca();
    u32 lca(u32 u, u32 v) const;
    bool lca_ready() const noexcept { return !euler_.empty(); }

private:
    std::vector<Node> nodes_;
    std::vector<u32> locus_;
    std::vector<u32> pre_, pre_end_, order_;
    std::vector<u32> euler_, first_;
    Rmq euler_rmq_;
};

}  // namespace plcs
