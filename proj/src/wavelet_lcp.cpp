#include "packed_lcs/wavelet_lcp.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "packed_lcs/config.hpp"

namespace plcs {

// ---- BitVector ----

void BitVector::push_back(bool b) {
    if (n_ % 64 == 0) words_.push_back(0);
    if (b) words_[n_ / 64] |= std::uint64_t{1} << (n_ % 64);
    ++n_;
}

void BitVector::set(std::size_t i, bool b) {
    if (b) words_[i / 64] |= std::uint64_t{1} << (i % 64);
    else words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::uint64_t BitVector::get_bits(std::size_t pos, std::size_t len) const {
    if (len == 0) return 0;
    std::size_t w = pos / 64, o = pos % 64;
    std::uint64_t v = words_[w] >> o;
    if (o + len > 64 && w + 1 < words_.size()) v |= words_[w + 1] << (64 - o);
    return len == 64 ? v : v & ((std::uint64_t{1} << len) - 1);
}

void BitVector::build_rank() {
    super_.assign(words_.size() / 8 + 2, 0);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (w % 8 == 0) super_[w / 8] = acc;
        acc += std::popcount(words_[w]);
    }
    super_[words_.size() / 8 + (words_.size() % 8 ? 1 : 0)] = acc;
}

std::size_t BitVector::rank1(std::size_t i) const {
    if (super_.empty()) throw std::logic_error("rank support not built");
    std::size_t w = i / 64;
    std::size_t r = super_[w / 8];
    for (std::size_t x = (w / 8) * 8; x < w; ++x) r += std::popcount(words_[x]);
    if (i % 64) r += std::popcount(words_[w] & ((std::uint64_t{1} << (i % 64)) - 1));
    return r;
}

// ---- PackedIntVector ----

PackedIntVector::PackedIntVector(unsigned width, unsigned per_word) : width_(width), per_word_(per_word) {
    if (width == 0 || per_word == 0 || width * per_word > 64) throw std::invalid_argument("bad packed layout");
}

void PackedIntVector::push_back(std::uint64_t v) {
    std::size_t s = n_ % per_word_;
    if (s == 0) words_.push_back(0);
    words_.back() |= v << (s * width_);
    ++n_;
}

std::uint64_t PackedIntVector::get(std::size_t i) const {
    std::uint64_t m = width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
    return (words_[i / per_word_] >> ((i % per_word_) * width_)) & m;
}

// Append `count` packed entries (entry j at bits j*width).
void PackedIntVector::push_word(std::uint64_t bits, std::size_t count) {
    if (count == 0) return;
    std::size_t s = n_ % per_word_;
    std::size_t room = s == 0 ? 0 : per_word_ - s;
    if (room) {
        std::size_t take = std::min(room, count);
        std::uint64_t part = take * width_ >= 64 ? bits : bits & ((std::uint64_t{1} << (take * width_)) - 1);
        words_.back() |= part << (s * width_);
        n_ += take;
        count -= take;
        bits = take * width_ >= 64 ? 0 : bits >> (take * width_);
    }
    if (count) {
        words_.push_back(bits);
        n_ += count;
    }
}

// ---- Skeleton ----

std::size_t SkeletonTree::height() const {
    if (root == SkeletonNode::none) return 0;
    std::size_t h = 0;
    std::vector<std::pair<u32, std::size_t>> st{{root, 0}};
    while (!st.empty()) {
        auto [v, d] = st.back();
        st.pop_back();
        h = std::max(h, d);
        if (!nodes[v].is_leaf()) {
            st.emplace_back(nodes[v].left, d + 1);
            st.emplace_back(nodes[v].right, d + 1);
        }
    }
    return h;
}

SkeletonTree binarize_skeleton(const CompactedTrie& trie) {
    std::vector<bool> marked(trie.node_count(), false);
    for (std::size_t v = 0; v < trie.node_count(); ++v) marked[v] = !trie.node(v).terminals.empty();
    return binarize_skeleton(trie, marked);
}

SkeletonTree binarize_skeleton(const CompactedTrie& trie, const std::vector<bool>& marked) {
    SkeletonTree sk;
    const std::size_t m = trie.node_count();
    sk.leaf_of_trie_node.assign(m, SkeletonNode::none);
    // leaves below each trie node (marked nodes count once)
    std::vector<std::size_t> weight(m, 0);
    std::vector<u32> order;  // preorder
    {
        std::vector<u32> st{CompactedTrie::root()};
        while (!st.empty()) {
            u32 v = st.back();
            st.pop_back();
            order.push_back(v);
            const auto& ch = trie.node(v).children;
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) st.push_back(*it);
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            u32 v = *it;
            weight[v] = marked[v] ? 1 : 0;
            for (u32 c : trie.node(v).children) weight[v] += weight[c];
        }
    }
    if (weight[CompactedTrie::root()] == 0) return sk;

    auto new_node = [&](u32 trie_node) {
        SkeletonNode s;
        s.trie_node = trie_node;
        s.depth = trie.depth(trie_node);
        sk.nodes.push_back(s);
        return static_cast<u32>(sk.nodes.size() - 1);
    };
    // A child item is either a trie node or the "own string" leaf of a marked inner node.
    struct Item {
        u32 trie_node;
        bool own_leaf;
        std::size_t w;
    };
    // Recursive build; depth bounded by trie depth plus log of the fan-out.
    std::function<u32(u32)> build_trie_node;
    std::function<u32(const std::vector<Item>&, std::size_t, std::size_t, u32)> build_range =
        [&](const std::vector<Item>& items, std::size_t a, std::size_t b, u32 owner) -> u32 {
        if (b - a == 1) {
            const Item& it = items[a];
            if (it.own_leaf) {
                u32 leaf = new_node(it.trie_node);
                sk.nodes[leaf].leaf_lo = static_cast<u32>(sk.leaf_node.size());
                sk.leaf_of_trie_node[it.trie_node] = static_cast<u32>(sk.leaf_node.size());
                sk.leaf_node.push_back(leaf);
                sk.nodes[leaf].leaf_hi = sk.nodes[leaf].leaf_lo + 1;
                return leaf;
            }
            return build_trie_node(it.trie_node);
        }
        // weighted split: first k with prefix weight >= half, kept inside (a, b)
        std::size_t total = 0;
        for (std::size_t i = a; i < b; ++i) total += items[i].w;
        std::size_t acc = 0, k = a + 1, best_k = a + 1;
        std::size_t best_diff = std::numeric_limits<std::size_t>::max();
        for (k = a + 1; k < b; ++k) {
            acc += items[k - 1].w;
            std::size_t other = total - acc;
            std::size_t diff = acc > other ? acc - other : other - acc;
            if (diff < best_diff) {
                best_diff = diff;
                best_k = k;
            }
        }
        u32 v = new_node(owner);
        u32 l = build_range(items, a, best_k, owner);
        u32 r = build_range(items, best_k, b, owner);
        sk.nodes[v].left = l;
        sk.nodes[v].right = r;
        sk.nodes[v].leaf_lo = sk.nodes[l].leaf_lo;
        sk.nodes[v].leaf_hi = sk.nodes[r].leaf_hi;
        return v;
    };
    build_trie_node = [&](u32 v) -> u32 {
        // contract down to the first node that is marked or branches among weighted children
        for (;;) {
            std::size_t live = 0;
            u32 only = 0;
            for (u32 c : trie.node(v).children)
                if (weight[c]) {
                    ++live;
                    only = c;
                }
            if (!marked[v] && live == 1) {
                v = only;
                continue;
            }
            break;
        }
        std::vector<Item> items;
        for (u32 c : trie.node(v).children)
            if (weight[c]) items.push_back({c, false, weight[c]});
        if (marked[v]) {
            if (items.empty()) {
                u32 leaf = new_node(v);
                sk.nodes[leaf].leaf_lo = static_cast<u32>(sk.leaf_node.size());
                sk.nodes[leaf].leaf_hi = sk.nodes[leaf].leaf_lo + 1;
                sk.leaf_of_trie_node[v] = static_cast<u32>(sk.leaf_node.size());
                sk.leaf_node.push_back(leaf);
                return leaf;
            }
            items.push_back({v, true, 1});
        }
        return build_range(items, 0, items.size(), v);
    };
    sk.root = build_trie_node(CompactedTrie::root());
    return sk;
}

// ---- Wavelet tree ----

WaveletTree build_wavelet(const std::vector<u32>& leaf_seq, const SkeletonTree& skel) {
    WaveletTree wt;
    wt.bits.resize(skel.nodes.size());
    wt.length.assign(skel.nodes.size(), 0);
    for (u32 x : leaf_seq)
        if (x >= skel.leaf_count()) throw std::invalid_argument("sequence element is not a skeleton leaf");
    if (skel.root == SkeletonNode::none) {
        if (!leaf_seq.empty()) throw std::invalid_argument("empty skeleton");
        return wt;
    }
    std::vector<std::pair<u32, std::vector<u32>>> st;
    st.emplace_back(skel.root, leaf_seq);
    while (!st.empty()) {
        auto [v, seq] = std::move(st.back());
        st.pop_back();
        const auto& nd = skel.nodes[v];
        wt.length[v] = seq.size();
        if (nd.is_leaf() || seq.empty()) continue;
        u32 mid = skel.nodes[nd.left].leaf_hi;
        BitVector b;
        std::vector<u32> l, r;
        for (u32 x : seq) {
            bool right = x >= mid;
            b.push_back(right);
            (right ? r : l).push_back(x);
        }
        b.build_rank();
        wt.bits[v] = std::move(b);
        st.emplace_back(nd.left, std::move(l));
        st.emplace_back(nd.right, std::move(r));
    }
    return wt;
}

std::vector<u32> reconstruct_sequence(const WaveletTree& wt, const SkeletonTree& skel) {
    if (skel.root == SkeletonNode::none) return {};
    std::size_t n = wt.length[skel.root];
    std::vector<u32> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        u32 v = skel.root;
        std::size_t pos = i;
        while (!skel.nodes[v].is_leaf()) {
            const BitVector& b = wt.bits[v];
            if (b.get(pos)) {
                pos = b.rank1(pos);
                v = skel.nodes[v].right;
            } else {
                pos = b.rank0(pos);
                v = skel.nodes[v].left;
            }
        }
        out[i] = skel.nodes[v].leaf_lo;
    }
    return out;
}

// ---- LCP lists ----

unsigned lcps_width(std::size_t beta) { return static_cast<unsigned>(std::bit_width(beta + 1)); }

std::size_t lcps_block_length(unsigned width) {
    std::size_t cap = table_bits_cap();
    if (cap < 1) return 0;
    std::size_t lam = (cap - 1) / (width + 1);
    if (lam == 0 || lam * width > 64) return 0;
    return lam;
}

namespace {

// Tables for one (width, lambda): propagation and cross-origin maxima over one block.
struct BlockTables {
    unsigned width;
    std::size_t lambda;
    std::vector<std::uint64_t> prop_out;  // outputs, entry j at bits j*width
    std::vector<std::uint32_t> prop_meta; // count | trailing_min << 8
    std::vector<std::uint32_t> cross;     // 0 = none, else max+1
};

std::shared_ptr<const BlockTables> get_tables(unsigned width, std::size_t lambda) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, std::size_t>, std::pair<std::shared_ptr<const BlockTables>, std::uint64_t>> cache;
    static std::uint64_t clock = 0;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(width, lambda);
    if (auto it = cache.find(key); it != cache.end()) {
        it->second.second = ++clock;
        return it->second.first;
    }
    if (cache.size() >= 6) {  // least recently used goes
        auto victim = cache.begin();
        for (auto it = cache.begin(); it != cache.end(); ++it)
            if (it->second.second < victim->second.second) victim = it;
        cache.erase(victim);
    }
    auto t = std::make_shared<BlockTables>();
    t->width = width;
    t->lambda = lambda;
    const std::uint64_t inf = (std::uint64_t{1} << width) - 1;
    const std::uint64_t vmask = inf;
    const std::size_t lw = lambda * width;
    const std::size_t pkeys = std::size_t{1} << (lw + lambda);
    t->prop_out.assign(pkeys, 0);
    t->prop_meta.assign(pkeys, 0);
    for (std::size_t key = 0; key < pkeys; ++key) {
        std::uint64_t lword = key & ((std::uint64_t{1} << lw) - 1);
        std::uint64_t sel = key >> lw;
        std::uint64_t mu_ = inf, out = 0;
        std::uint32_t cnt = 0;
        for (std::size_t j = 0; j < lambda; ++j) {
            std::uint64_t v = (lword >> (j * width)) & vmask;
            mu_ = std::min(mu_, v);
            if ((sel >> j) & 1u) {
                out |= mu_ << (cnt * width);
                ++cnt;
                mu_ = inf;
            }
        }
        t->prop_out[key] = out;
        t->prop_meta[key] = cnt | static_cast<std::uint32_t>(mu_ << 8);
    }
    const std::size_t ckeys = std::size_t{1} << (lw + lambda + 1);
    t->cross.assign(ckeys, 0);
    for (std::size_t key = 0; key < ckeys; ++key) {
        std::uint64_t lword = key & ((std::uint64_t{1} << lw) - 1);
        std::uint64_t g = (key >> lw) & ((std::uint64_t{1} << lambda) - 1);
        std::uint64_t prev = key >> (lw + lambda);
        std::uint32_t best = 0;
        for (std::size_t j = 0; j < lambda; ++j) {
            std::uint64_t gj = (g >> j) & 1u;
            if (gj != prev) best = std::max<std::uint32_t>(best, static_cast<std::uint32_t>(((lword >> (j * width)) & vmask) + 1));
            prev = gj;
        }
        t->cross[key] = best;
    }
    cache.emplace(key, std::make_pair(t, ++clock));
    return t;
}

}  // namespace

LcpsList make_lcps_list(const std::vector<u32>& values, const std::vector<bool>& origin, unsigned width) {
    if (values.size() != origin.size()) throw std::invalid_argument("values/origin length mismatch");
    std::size_t lam = lcps_block_length(width);
    LcpsList l;
    l.values = PackedIntVector(width, static_cast<unsigned>(lam ? lam : 64 / width));
    const std::uint64_t inf = (std::uint64_t{1} << width) - 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= inf) throw std::invalid_argument("LCP value exceeds beta");
        l.values.push_back(i == 0 ? 0 : values[i]);
        l.origin.push_back(origin[i]);
    }
    return l;
}

LcpsList propagate_lcps(const LcpsList& parent, const BitVector& b, bool right) {
    if (b.size() != parent.size()) throw std::invalid_argument("bit vector and list lengths differ");
    const unsigned width = parent.values.width();
    const std::size_t lam = parent.values.per_word();
    const std::uint64_t inf = (std::uint64_t{1} << width) - 1;
    LcpsList out;
    out.values = PackedIntVector(width, static_cast<unsigned>(lam));
    const std::size_t n = parent.size();
    std::shared_ptr<const BlockTables> tab;
    if (lcps_block_length(width) == lam) tab = get_tables(width, lam);
    std::uint64_t mu = inf;
    std::size_t i = 0;
    if (tab) {
        const std::size_t lw = lam * width;
        const std::uint64_t lmask = (std::uint64_t{1} << lam) - 1;
        for (std::size_t w = 0; i + lam <= n; ++w, i += lam) {
            std::uint64_t sel = b.get_bits(i, lam);
            if (!right) sel = ~sel & lmask;
            std::uint64_t key = parent.values.word(w) | (sel << lw);
            std::uint64_t outs = tab->prop_out[key];
            std::uint32_t meta = tab->prop_meta[key];
            std::size_t cnt = meta & 0xffu;
            std::uint64_t trail = meta >> 8;
            if (cnt) {
                std::uint64_t first = std::min<std::uint64_t>(mu, outs & inf);
                outs = (outs & ~inf) | first;
                out.values.push_word(outs, cnt);
                for (std::uint64_t s = sel; s; s &= s - 1) out.origin.push_back(parent.origin.get(i + std::countr_zero(s)));
                mu = trail;
            } else {
                mu = std::min(mu, trail);
            }
        }
    }
    for (; i < n; ++i) {
        mu = std::min<std::uint64_t>(mu, parent.values.get(i));
        if (b.get(i) == right) {
            out.values.push_back(mu);
            out.origin.push_back(parent.origin.get(i));
            mu = inf;
        }
    }
    return out;
}

long cross_origin_max(const LcpsList& list) {
    const std::size_t n = list.size();
    if (n < 2) return -1;
    const unsigned width = list.values.width();
    const std::size_t lam = list.values.per_word();
    long best = -1;
    std::size_t i = 0;
    std::uint64_t prev = list.origin.get(0);
    if (lcps_block_length(width) == lam) {
        auto tab = get_tables(width, lam);
        const std::size_t lw = lam * width;
        for (std::size_t w = 0; i + lam <= n; ++w, i += lam) {
            std::uint64_t g = list.origin.get_bits(i, lam);
            std::uint64_t key = list.values.word(w) | (g << lw) | (prev << (lw + lam));
            std::uint32_t c = tab->cross[key];
            if (c) best = std::max(best, static_cast<long>(c) - 1);
            prev = (g >> (lam - 1)) & 1u;
        }
    }
    for (; i < n; ++i) {
        std::uint64_t gi = list.origin.get(i);
        if (gi != prev) best = std::max(best, static_cast<long>(list.values.get(i)));
        prev = gi;
    }
    return best;
}

// ---- Solver ----

PairLcpResult solve_alpha_beta(const TwoFamiliesInstance& inst, std::size_t alpha, std::size_t beta) {
    if (!inst.trie1 || !inst.trie2 || !inst.trie1->lca_ready() || !inst.trie2->lca_ready())
        throw std::invalid_argument("instance needs tries with prepared LCA");
    const CompactedTrie& t1 = *inst.trie1;
    const CompactedTrie& t2 = *inst.trie2;
    for (const auto* fam : {&inst.P, &inst.Q})
        for (auto [a, b] : *fam) {
            if (a >= t1.node_count() || b >= t2.node_count()) throw std::invalid_argument("pair outside trie");
            if (t1.depth(a) > alpha || t2.depth(b) > beta) throw std::invalid_argument("family violates (alpha, beta) bounds");
        }
    if (inst.P.empty() || inst.Q.empty()) return {};

    std::vector<bool> marked(t1.node_count(), false);
    for (const auto* fam : {&inst.P, &inst.Q})
        for (auto [a, b] : *fam) marked[a] = true;
    SkeletonTree skel = binarize_skeleton(t1, marked);

    // R: all elements ordered by second component; element id < |P| is from P
    const std::size_t np = inst.P.size(), n = inst.size();
    auto node2 = [&](u32 e) { return e < np ? inst.P[e].second : inst.Q[e - np].second; };
    auto node1 = [&](u32 e) { return e < np ? inst.P[e].first : inst.Q[e - np].first; };
    std::vector<u32> elems(n);
    std::iota(elems.begin(), elems.end(), 0u);
    std::stable_sort(elems.begin(), elems.end(), [&](u32 a, u32 b) { return t2.pre(node2(a)) < t2.pre(node2(b)); });
    std::vector<u32> values(n, 0), leaves(n);
    std::vector<bool> origin(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (r) values[r] = t2.depth(t2.lca(node2(elems[r - 1]), node2(elems[r])));
        origin[r] = elems[r] >= np;
        leaves[r] = skel.leaf_of_trie_node[node1(elems[r])];
    }
    const unsigned width = lcps_width(beta);
    WaveletTree wt = build_wavelet(leaves, skel);

    PairLcpResult best;
    auto offer = [&](std::size_t v, u32 a, u32 b) {
        if (a >= np) std::swap(a, b);
        std::size_t p = a, q = b - np;
        if (!best.has_witness || v > best.value || (v == best.value && std::make_pair(p, q) < std::make_pair(best.p_index, best.q_index))) {
            best.value = v;
            best.p_index = p;
            best.q_index = q;
            best.has_witness = true;
        }
    };
    struct Frame {
        u32 v;
        LcpsList list;
        std::vector<u32> elems;
    };
    std::vector<Frame> st;
    st.push_back({skel.root, make_lcps_list(values, origin, width), std::move(elems)});
    while (!st.empty()) {
        Frame f = std::move(st.back());
        st.pop_back();
        if (f.elems.empty()) continue;
        const auto& nd = skel.nodes[f.v];
        long cm = cross_origin_max(f.list);
        if (cm >= 0) {
            std::size_t cand = nd.depth + static_cast<std::size_t>(cm);
            if (!best.has_witness || cand >= best.value) {
                for (std::size_t i = 1; i < f.elems.size(); ++i)
                    if (f.list.origin.get(i) != f.list.origin.get(i - 1) && static_cast<long>(f.list.values.get(i)) == cm)
                        offer(cand, f.elems[i - 1], f.elems[i]);
            }
        }
        if (nd.is_leaf()) continue;
        const BitVector& b = wt.bits[f.v];
        std::vector<u32> le, re;
        for (std::size_t i = 0; i < f.elems.size(); ++i) (b.get(i) ? re : le).push_back(f.elems[i]);
        LcpsList ll = propagate_lcps(f.list, b, false);
        LcpsList rl = propagate_lcps(f.list, b, true);
        st.push_back({nd.right, std::move(rl), std::move(re)});
        st.push_back({nd.left, std::move(ll), std::move(le)});
    }
    return best;
}

}  // namespace plcs
