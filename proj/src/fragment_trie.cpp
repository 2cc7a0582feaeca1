#include "packed_lcs/fragment_trie.hpp"

#include <algorithm>
#include <numeric>

namespace plcs {

std::vector<u32> sort_spans(const FragmentIndex& idx, const std::vector<Span>& spans) {
    std::vector<u32> order(spans.size());
    std::iota(order.begin(), order.end(), 0u);
    const PackedText& pay = idx.text().payload();
    const unsigned bits = pay.bits_per_symbol();
    std::size_t max_len = 0;
    for (const Span& s : spans) max_len = std::max<std::size_t>(max_len, s.len);
    if (max_len * bits <= 64) {
        // left-aligned block keys; shorter prefix first on ties
        std::vector<std::pair<std::uint64_t, u32>> key(spans.size());
        for (std::size_t i = 0; i < spans.size(); ++i) {
            std::uint64_t k = pay.read_block(spans[i].start, spans[i].len);
            std::size_t pad = (max_len - spans[i].len) * bits;
            key[i] = {pad >= 64 ? 0 : k << pad, spans[i].len};
        }
        std::stable_sort(order.begin(), order.end(), [&](u32 a, u32 b) { return key[a] < key[b]; });
        return order;
    }
    std::stable_sort(order.begin(), order.end(), [&](u32 a, u32 b) {
        const Span& x = spans[a];
        const Span& y = spans[b];
        std::size_t l = idx.lce_ranges(x.start, x.len, y.start, y.len);
        if (l == x.len || l == y.len) return x.len < y.len;
        return pay[x.start + l] < pay[y.start + l];
    });
    return order;
}

std::vector<u32> sort_spans_by_rank(const FragmentIndex& idx, const std::vector<Span>& spans) {
    const auto& isa = idx.index().isa();
    std::vector<std::pair<u32, u32>> key(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) key[i] = {isa[spans[i].start], static_cast<u32>(i)};
    std::sort(key.begin(), key.end());
    std::vector<u32> order(spans.size());
    for (std::size_t i = 0; i < key.size(); ++i) order[i] = key[i].second;
    return order;
}

SpanTrie build_span_trie_sorted(const FragmentIndex& idx, const std::vector<Span>& spans, const std::vector<u32>& order) {
    const PackedText& pay = idx.text().payload();
    std::vector<u32> lens(order.size()), lcps(order.empty() ? 0 : order.size() - 1);
    for (std::size_t r = 0; r < order.size(); ++r) {
        const Span& s = spans[order[r]];
        lens[r] = s.len;
        if (r) {
            const Span& p = spans[order[r - 1]];
            lcps[r - 1] = static_cast<u32>(idx.lce_ranges(p.start, p.len, s.start, s.len));
        }
    }
    SpanTrie out;
    out.trie = std::make_shared<CompactedTrie>(lens, lcps, [&](std::size_t i, std::size_t pos) {
        return pay[spans[order[i]].start + pos];
    });
    out.trie->prepare_lca();
    out.locus.assign(spans.size(), 0);
    for (std::size_t r = 0; r < order.size(); ++r) out.locus[order[r]] = out.trie->locus(r);
    return out;
}

SpanTrie build_span_trie(const FragmentIndex& idx, const std::vector<Span>& spans) {
    return build_span_trie_sorted(idx, spans, sort_spans(idx, spans));
}

}  // namespace plcs
