#include "packed_lcs/suffix_index.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace plcs {

namespace {

// Induced sorting (Nong, Zhang, Chan), recursive on LMS substrings.
void sa_is(const std::vector<int>& s, int upper, std::vector<int>& sa) {
    const int n = static_cast<int>(s.size());
    sa.assign(n, -1);
    if (n == 0) return;
    if (n == 1) { sa[0] = 0; return; }
    if (n == 2) {
        if (s[0] < s[1]) { sa[0] = 0; sa[1] = 1; } else { sa[0] = 1; sa[1] = 0; }
        return;
    }
    std::vector<bool> ls(n, false);
    for (int i = n - 2; i >= 0; --i) ls[i] = s[i] == s[i + 1] ? ls[i + 1] : s[i] < s[i + 1];
    std::vector<int> sum_l(upper + 1, 0), sum_s(upper + 1, 0);
    for (int i = 0; i < n; ++i) {
        if (!ls[i]) sum_s[s[i]]++; else sum_l[s[i] + 1]++;
    }
    for (int i = 0; i <= upper; ++i) {
        sum_s[i] += sum_l[i];
        if (i < upper) sum_l[i + 1] += sum_s[i];
    }
    auto induce = [&](const std::vector<int>& lms) {
        std::fill(sa.begin(), sa.end(), -1);
        std::vector<int> buf(upper + 1);
        std::copy(sum_s.begin(), sum_s.end(), buf.begin());
        for (int d : lms) {
            if (d == n) continue;
            sa[buf[s[d]]++] = d;
        }
        std::copy(sum_l.begin(), sum_l.end(), buf.begin());
        sa[buf[s[n - 1]]++] = n - 1;
        for (int i = 0; i < n; ++i) {
            int v = sa[i];
            if (v >= 1 && !ls[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
        }
        std::copy(sum_l.begin(), sum_l.end(), buf.begin());
        for (int i = n - 1; i >= 0; --i) {
            int v = sa[i];
            if (v >= 1 && ls[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
        }
    };
    std::vector<int> lms_map(n + 1, -1);
    int m = 0;
    for (int i = 1; i < n; ++i)
        if (!ls[i - 1] && ls[i]) lms_map[i] = m++;
    std::vector<int> lms;
    lms.reserve(m);
    for (int i = 1; i < n; ++i)
        if (!ls[i - 1] && ls[i]) lms.push_back(i);
    induce(lms);
    if (m) {
        std::vector<int> sorted_lms;
        sorted_lms.reserve(m);
        for (int v : sa)
            if (lms_map[v] != -1) sorted_lms.push_back(v);
        std::vector<int> rec_s(m);
        int rec_upper = 0;
        rec_s[lms_map[sorted_lms[0]]] = 0;
        for (int i = 1; i < m; ++i) {
            int l = sorted_lms[i - 1], r = sorted_lms[i];
            int end_l = lms_map[l] + 1 < m ? lms[lms_map[l] + 1] : n;
            int end_r = lms_map[r] + 1 < m ? lms[lms_map[r] + 1] : n;
            bool same = true;
            if (end_l - l != end_r - r) {
                same = false;
            } else {
                while (l < end_l) {
                    if (s[l] != s[r]) break;
                    ++l; ++r;
                }
                if (l == n || s[l] != s[r]) same = false;
            }
            if (!same) ++rec_upper;
            rec_s[lms_map[sorted_lms[i]]] = rec_upper;
        }
        std::vector<int> rec_sa;
        sa_is(rec_s, rec_upper, rec_sa);
        for (int i = 0; i < m; ++i) sorted_lms[i] = lms[rec_sa[i]];
        induce(sorted_lms);
    }
}

}  // namespace

std::vector<u32> build_suffix_array(const std::vector<u32>& s, u32 upper) {
    if (s.size() >= (std::size_t{1} << 31)) throw std::length_error("text too long for suffix array");
    std::vector<int> si(s.begin(), s.end());
    for (int c : si)
        if (c < 0 || static_cast<u32>(c) >= upper) throw std::invalid_argument("code outside [0, upper)");
    std::vector<int> sa;
    sa_is(si, static_cast<int>(upper ? upper - 1 : 0), sa);
    return {sa.begin(), sa.end()};
}

std::vector<u32> build_lcp(const std::vector<u32>& s, const std::vector<u32>& sa, const std::vector<u32>& isa) {
    const std::size_t n = s.size();
    std::vector<u32> lcp(n, 0);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (h) --h;
        if (isa[i] == 0) { h = 0; continue; }
        std::size_t j = sa[isa[i] - 1];
        while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
        lcp[isa[i]] = static_cast<u32>(h);
    }
    return lcp;
}

Rmq::Mode default_rmq_mode(std::size_t n) { return n > (std::size_t{1} << 20) ? Rmq::Mode::Block : Rmq::Mode::Sparse; }

std::vector<std::vector<u32>> Rmq::build_sparse(const std::vector<u32>& idx, const std::vector<u32>& v) {
    std::vector<std::vector<u32>> tab;
    tab.push_back(idx);
    for (std::size_t k = 1; (std::size_t{1} << k) <= idx.size(); ++k) {
        const auto& prev = tab.back();
        std::size_t len = idx.size() - (std::size_t{1} << k) + 1, half = std::size_t{1} << (k - 1);
        std::vector<u32> cur(len);
        for (std::size_t i = 0; i < len; ++i) {
            u32 a = prev[i], b = prev[i + half];
            cur[i] = v[b] < v[a] ? b : a;
        }
        tab.push_back(std::move(cur));
    }
    return tab;
}

Rmq::Rmq(std::vector<u32> values, Mode mode) : vals_(std::move(values)), mode_(mode) {
    const std::size_t n = vals_.size();
    if (mode_ == Mode::Sparse) {
        std::vector<u32> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<u32>(i);
        sparse_ = build_sparse(idx, vals_);
        return;
    }
    masks_.assign(n, 0);
    std::size_t nb = (n + 63) / 64;
    block_arg_.assign(nb, 0);
    std::vector<u32> stack;
    for (std::size_t b = 0; b < nb; ++b) {
        std::size_t lo = b * 64, hi = std::min(n, lo + 64);
        stack.clear();
        std::uint64_t m = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            while (!stack.empty() && vals_[stack.back()] > vals_[i]) {
                m &= ~(std::uint64_t{1} << (stack.back() - lo));
                stack.pop_back();
            }
            stack.push_back(static_cast<u32>(i));
            m |= std::uint64_t{1} << (i - lo);
            masks_[i] = m;
        }
        block_arg_[b] = static_cast<u32>(lo + std::countr_zero(masks_[hi - 1]));
    }
    sparse_ = build_sparse(block_arg_, vals_);
}

std::size_t Rmq::sparse_query(const std::vector<std::vector<u32>>& tab, std::size_t l, std::size_t r) const {
    std::size_t k = std::bit_width(r - l + 1) - 1;
    return better(tab[k][l], tab[k][r - (std::size_t{1} << k) + 1]);
}

std::size_t Rmq::argmin(std::size_t l, std::size_t r) const {
    if (l > r || r >= vals_.size()) throw std::out_of_range("Rmq range");
    if (mode_ == Mode::Sparse) return sparse_query(sparse_, l, r);
    std::size_t bl = l / 64, br = r / 64;
    auto in_block = [&](std::size_t a, std::size_t b) {
        std::uint64_t m = masks_[b] & (~std::uint64_t{0} << (a % 64));
        return (b / 64) * 64 + std::countr_zero(m);
    };
    if (bl == br) return in_block(l, r);
    std::size_t best = in_block(l, bl * 64 + 63);
    if (bl + 1 < br) best = better(best, sparse_query(sparse_, bl + 1, br - 1));
    return better(best, in_block(br * 64, r));
}

SuffixIndex::SuffixIndex(const std::vector<u32>& codes, u32 upper, Rmq::Mode mode) {
    sa_ = build_suffix_array(codes, upper);
    isa_.assign(sa_.size(), 0);
    for (std::size_t r = 0; r < sa_.size(); ++r) isa_[sa_[r]] = static_cast<u32>(r);
    rmq_ = Rmq(build_lcp(codes, sa_, isa_), mode);
}

std::size_t SuffixIndex::lce(std::size_t i, std::size_t j) const {
    const std::size_t n = sa_.size();
    if (i >= n || j >= n) return 0;
    if (i == j) return n - i;
    std::size_t a = isa_[i], b = isa_[j];
    if (a > b) std::swap(a, b);
    return rmq_.min(a + 1, b);
}

namespace {
std::vector<u32> to_u32(const std::vector<Code>& c) { return {c.begin(), c.end()}; }
}

FragmentIndex::FragmentIndex(const PackedText& s, const PackedText& t)
    : FragmentIndex(s, t, default_rmq_mode(2 * (s.size() + t.size()) + 4)) {}

FragmentIndex::FragmentIndex(const PackedText& s, const PackedText& t, Rmq::Mode mode)
    : s_(s), t_(t), text_(s, t),
      idx_(to_u32(text_.rank_codes()), static_cast<u32>(text_.sigma() + 4), mode) {}

std::size_t FragmentIndex::lce_ranges(std::size_t a, std::size_t la, std::size_t b, std::size_t lb) const {
    std::size_t cap = std::min(la, lb);
    if (cap == 0) return 0;
    return std::min(cap, idx_.lce(a, b));
}

std::size_t FragmentIndex::lce_fragments(const Fragment& a, const Fragment& b) const {
    return lce_ranges(text_.resolve(a), a.size(), text_.resolve(b), b.size());
}

Order FragmentIndex::compare_fragments(const Fragment& a, const Fragment& b) const {
    std::size_t pa = text_.resolve(a), pb = text_.resolve(b);
    std::size_t l = lce_ranges(pa, a.size(), pb, b.size());
    if (l == a.size() && l == b.size()) return Order::Equal;
    if (l == a.size()) return Order::Less;
    if (l == b.size()) return Order::Greater;
    return text_.payload()[pa + l] < text_.payload()[pb + l] ? Order::Less : Order::Greater;
}

namespace {
u32 upper_of(const std::vector<Code>& c) {
    Code m = 0;
    for (Code x : c) m = std::max(m, x);
    return m + 1;
}
}  // namespace

BidirectionalLce::BidirectionalLce(std::vector<Code> codes) : codes_(std::move(codes)) {
    std::vector<u32> f(codes_.begin(), codes_.end());
    u32 up = upper_of(codes_);
    fwd_ = SuffixIndex(f, up);
    std::reverse(f.begin(), f.end());
    rev_ = SuffixIndex(f, up);
}

CompactedTrie::CompactedTrie(const std::vector<u32>& lengths, const std::vector<u32>& lcps, const SymbolFn& symbol) {
    const std::size_t n = lengths.size();
    if (n > 0 && lcps.size() + 1 != n) throw std::invalid_argument("adjacent_lcps must have N-1 entries");
    nodes_.emplace_back();
    locus_.assign(n, 0);
    std::vector<u32> stack{0};
    for (std::size_t r = 0; r < n; ++r) {
        u32 len = lengths[r];
        u32 l = r ? lcps[r - 1] : 0;
        if (r) {
            u32 plen = lengths[r - 1];
            if (l > std::min(len, plen)) throw std::invalid_argument("lcp exceeds string length");
            if (plen > l && len == l) throw std::invalid_argument("unsorted input: proper prefix after its extension");
            if (plen > l && len > l && !(symbol(r - 1, l) < symbol(r, l)))
                throw std::invalid_argument("unsorted input or inconsistent lcp");
        }
        u32 last = UINT32_MAX;
        while (nodes_[stack.back()].depth > l) {
            last = stack.back();
            stack.pop_back();
        }
        u32 top = stack.back();
        if (nodes_[top].depth < l) {
            // split the edge top -> last at depth l
            u32 x = static_cast<u32>(nodes_.size());
            Node nx;
            nx.parent = top;
            nx.depth = l;
            nx.rep = nodes_[last].rep;
            nx.key = nodes_[last].key;
            nx.children.push_back(last);
            nodes_.push_back(std::move(nx));
            nodes_[top].children.back() = x;
            nodes_[last].parent = x;
            nodes_[last].key = symbol(nodes_[last].rep, l);
            stack.push_back(x);
            top = x;
        }
        if (len == l) {
            nodes_[top].terminals.push_back(static_cast<u32>(r));
            locus_[r] = top;
            if (nodes_[top].children.empty() && nodes_[top].terminals.size() == 1) nodes_[top].rep = static_cast<u32>(r);
        } else {
            u32 y = static_cast<u32>(nodes_.size());
            Node ny;
            ny.parent = top;
            ny.depth = len;
            ny.rep = static_cast<u32>(r);
            ny.key = symbol(r, l);
            ny.terminals.push_back(static_cast<u32>(r));
            nodes_.push_back(std::move(ny));
            nodes_[top].children.push_back(y);
            locus_[r] = y;
            stack.push_back(y);
        }
    }
}

std::size_t CompactedTrie::terminal_count() const {
    std::size_t c = 0;
    for (const auto& v : nodes_) c += !v.terminals.empty();
    return c;
}

void CompactedTrie::prepare_lca() {
    if (lca_ready()) return;
    const std::size_t m = nodes_.size();
    pre_.assign(m, 0);
    pre_end_.assign(m, 0);
    first_.assign(m, 0);
    order_.clear();
    euler_.clear();
    std::vector<u32> euler_depth;
    // iterative DFS: (node, next child index)
    std::vector<std::pair<u32, u32>> st{{0, 0}};
    pre_[0] = 0;
    order_.push_back(0);
    first_[0] = 0;
    euler_.push_back(0);
    euler_depth.push_back(0);
    while (!st.empty()) {
        auto& [v, ci] = st.back();
        if (ci < nodes_[v].children.size()) {
            u32 c = nodes_[v].children[ci++];
            pre_[c] = static_cast<u32>(order_.size());
            order_.push_back(c);
            first_[c] = static_cast<u32>(euler_.size());
            euler_.push_back(c);
            euler_depth.push_back(nodes_[c].depth);
            st.emplace_back(c, 0);
        } else {
            u32 done = v;
            pre_end_[done] = static_cast<u32>(order_.size());
            st.pop_back();
            if (!st.empty()) {
                euler_.push_back(st.back().first);
                euler_depth.push_back(nodes_[st.back().first].depth);
            }
        }
    }
    euler_rmq_ = Rmq(std::move(euler_depth), default_rmq_mode(euler_.size()));
}

u32 CompactedTrie::lca(u32 u, u32 v) const {
    std::size_t a = first_[u], b = first_[v];
    if (a > b) std::swap(a, b);
    return euler_[euler_rmq_.argmin(a, b)];
}

}  // namespace plcs
