#pragma once
// Compacted tries over spans of the combined text.

#include <memory>
#include <vector>

#include "packed_lcs/suffix_index.hpp"

namespace plcs {

/// A substring of the combined payload.
struct Span {
    u32 start = 0;
    u32 len = 0;
};

struct SpanTrie {
    std::shared_ptr<CompactedTrie> trie;  // LCA prepared
    std::vector<u32> locus;               // per input span
};

/// Lexicographic sort of spans: packed keys when every span fits in one word, LCE comparisons otherwise.
std::vector<u32> sort_spans(const FragmentIndex& idx, const std::vector<Span>& spans);
/// Suffix-rank order. Only valid when the spans are suffixes or truncated at a
/// common depth beyond which no pair is compared (every span ends at a sentinel,
/// or all are cut at the same bound).
std::vector<u32> sort_spans_by_rank(const FragmentIndex& idx, const std::vector<Span>& spans);
SpanTrie build_span_trie(const FragmentIndex& idx, const std::vector<Span>& spans);
/// Same, when `order` is already a lexicographic order of spans.
SpanTrie build_span_trie_sorted(const FragmentIndex& idx, const std::vector<Span>& spans, const std::vector<u32>& order);

}  // namespace plcs
