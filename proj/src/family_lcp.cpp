#include "packed_lcs/family_lcp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace plcs {

namespace {

void require_ready(const TwoFamiliesInstance& inst) {
    if (!inst.trie1 || !inst.trie2) throw std::invalid_argument("instance without tries");
    if (!inst.trie1->lca_ready() || !inst.trie2->lca_ready()) throw std::invalid_argument("tries need prepared LCA");
    for (const auto* fam : {&inst.P, &inst.Q})
        for (auto [a, b] : *fam)
            if (a >= inst.trie1->node_count() || b >= inst.trie2->node_count())
                throw std::invalid_argument("pair refers to a node outside its trie");
}

struct Best {
    PairLcpResult r;
    void offer(std::size_t value, std::size_t p, std::size_t q) {
        if (!r.has_witness || value > r.value || (value == r.value && std::make_pair(p, q) < std::make_pair(r.p_index, r.q_index))) {
            r.value = value;
            r.p_index = p;
            r.q_index = q;
            r.has_witness = true;
        }
    }
};

}  // namespace

std::size_t pair_value(const TwoFamiliesInstance& inst, std::size_t pi, std::size_t qi) {
    auto [p1, p2] = inst.P[pi];
    auto [q1, q2] = inst.Q[qi];
    return inst.trie1->depth(inst.trie1->lca(p1, q1)) + inst.trie2->depth(inst.trie2->lca(p2, q2));
}

PairLcpResult max_pair_lcp_general(const TwoFamiliesInstance& inst, SolverStats* stats) {
    require_ready(inst);
    if (inst.P.empty() || inst.Q.empty()) return {};
    const CompactedTrie& t1 = *inst.trie1;
    const CompactedTrie& t2 = *inst.trie2;
    // key: (preorder rank in trie2, element index)
    using Key = std::pair<u32, u32>;
    struct Bag {
        std::set<Key> side[2];  // 0 = P, 1 = Q
        std::size_t size() const { return side[0].size() + side[1].size(); }
    };
    std::vector<std::unique_ptr<Bag>> bag(t1.node_count());
    std::vector<std::vector<u32>> at_node[2];
    at_node[0].resize(t1.node_count());
    at_node[1].resize(t1.node_count());
    for (u32 i = 0; i < inst.P.size(); ++i) at_node[0][inst.P[i].first].push_back(i);
    for (u32 i = 0; i < inst.Q.size(); ++i) at_node[1][inst.Q[i].first].push_back(i);

    Best best;
    std::size_t merged = 0;
    auto second_node = [&](int side, u32 idx) { return side == 0 ? inst.P[idx].second : inst.Q[idx].second; };
    auto insert = [&](Bag& into, int side, Key k, std::size_t depth1) {
        const auto& other = into.side[1 - side];
        auto it = other.lower_bound(k);
        u32 a = second_node(side, k.second);
        // cannot reach the current best (ties still matter for the witness)
        const bool hopeless = best.r.has_witness && depth1 + t2.depth(a) < best.r.value;
        auto consider = [&](const Key& o) {
            if (hopeless) return;
            u32 b = second_node(1 - side, o.second);
            std::size_t v = depth1 + t2.depth(t2.lca(a, b));
            if (side == 0) best.offer(v, k.second, o.second);
            else best.offer(v, o.second, k.second);
        };
        if (it != other.end()) consider(*it);
        if (it != other.begin()) consider(*std::prev(it));
        into.side[side].insert(k);
    };

    const auto& order = t1.preorder();
    for (auto rit = order.rbegin(); rit != order.rend(); ++rit) {
        u32 u = *rit;
        std::size_t d = t1.depth(u);
        // pick the largest child bag as the accumulator
        std::unique_ptr<Bag> acc;
        for (u32 c : t1.node(u).children) {
            if (!bag[c]) continue;
            if (!acc || bag[c]->size() > acc->size()) std::swap(acc, bag[c]);
        }
        if (!acc) acc = std::make_unique<Bag>();
        auto merge_in = [&](Bag& small) {
            for (int s = 0; s < 2; ++s)
                for (const Key& k : small.side[s]) {
                    insert(*acc, s, k, d);
                    ++merged;
                }
        };
        for (u32 c : t1.node(u).children)
            if (bag[c]) {
                merge_in(*bag[c]);
                bag[c].reset();
            }
        // elements located at u itself
        for (int s = 0; s < 2; ++s)
            for (u32 idx : at_node[s][u]) {
                insert(*acc, s, Key{t2.pre(second_node(s, idx)), idx}, d);
            }
        bag[u] = std::move(acc);
    }
    if (stats) stats->merged_elements += merged;
    return best.r;
}

PairLcpResult max_pair_lcp_prefix(const TwoFamiliesInstance& inst) {
    require_ready(inst);
    if (inst.P.empty() || inst.Q.empty()) return {};
    const CompactedTrie& t1 = *inst.trie1;
    const CompactedTrie& t2 = *inst.trie2;
    struct Elem {
        u32 n1, n2;
        u32 idx;
        int side;
    };
    std::vector<Elem> r;
    r.reserve(inst.size());
    for (u32 i = 0; i < inst.P.size(); ++i) r.push_back({inst.P[i].first, inst.P[i].second, i, 0});
    for (u32 i = 0; i < inst.Q.size(); ++i) r.push_back({inst.Q[i].first, inst.Q[i].second, i, 1});
    // all first components on one root path
    u32 deepest = r[0].n1;
    for (const auto& e : r)
        if (t1.depth(e.n1) > t1.depth(deepest)) deepest = e.n1;
    for (const auto& e : r)
        if (t1.lca(e.n1, deepest) != e.n1) throw std::invalid_argument("first components do not form a prefix family");

    std::stable_sort(r.begin(), r.end(), [&](const Elem& a, const Elem& b) { return t2.pre(a.n2) < t2.pre(b.n2); });
    const std::size_t m = r.size();
    // skip structures over positions 1..m, with 0 and m+1 as boundaries
    struct Skip {
        std::vector<u32> parent;
        explicit Skip(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
        u32 find(u32 x) {
            u32 root = x;
            while (parent[root] != root) root = parent[root];
            while (parent[x] != root) {
                u32 nx = parent[x];
                parent[x] = root;
                x = nx;
            }
            return root;
        }
    };
    // left[c].find(x): nearest live position <= x of origin c; right[c] likewise >= x
    std::vector<Skip> left, right;
    for (int c = 0; c < 2; ++c) {
        left.emplace_back(m + 2);
        right.emplace_back(m + 2);
    }
    auto kill = [&](int c, u32 pos) {
        left[c].parent[pos] = pos - 1;
        right[c].parent[pos] = pos + 1;
    };
    for (u32 pos = 1; pos <= m; ++pos) kill(1 - r[pos - 1].side, pos);

    std::vector<u32> by_len(m);
    std::iota(by_len.begin(), by_len.end(), 1u);
    std::stable_sort(by_len.begin(), by_len.end(), [&](u32 a, u32 b) { return t1.depth(r[a - 1].n1) < t1.depth(r[b - 1].n1); });

    Best best;
    std::size_t g = 0;
    while (g < m) {
        std::size_t h = g;
        u32 len = t1.depth(r[by_len[g] - 1].n1);
        while (h < m && t1.depth(r[by_len[h] - 1].n1) == len) ++h;
        for (std::size_t x = g; x < h; ++x) {
            u32 pos = by_len[x];
            const Elem& e = r[pos - 1];
            int other = 1 - e.side;
            for (u32 nb : {left[other].find(pos - 1), right[other].find(pos + 1)}) {
                if (nb == 0 || nb == m + 1) continue;
                const Elem& f = r[nb - 1];
                // LCP of first components is |first(e)| because f's first component is at least as long
                std::size_t v = len + t2.depth(t2.lca(e.n2, f.n2));
                if (e.side == 0) best.offer(v, e.idx, f.idx);
                else best.offer(v, f.idx, e.idx);
            }
        }
        for (std::size_t x = g; x < h; ++x) kill(r[by_len[x] - 1].side, by_len[x]);
        g = h;
    }
    return best.r;
}

std::shared_ptr<CompactedTrie> trie_from_strings(const std::vector<std::string>& strings, std::vector<u32>& locus_of) {
    std::vector<u32> order(strings.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](u32 a, u32 b) { return strings[a] < strings[b]; });
    std::vector<u32> lens, lcps;
    for (std::size_t r = 0; r < order.size(); ++r) {
        const auto& s = strings[order[r]];
        lens.push_back(static_cast<u32>(s.size()));
        if (r) {
            const auto& p = strings[order[r - 1]];
            u32 l = 0;
            while (l < s.size() && l < p.size() && s[l] == p[l]) ++l;
            lcps.push_back(l);
        }
    }
    auto t = std::make_shared<CompactedTrie>(lens, lcps, [&](std::size_t i, std::size_t pos) {
        return static_cast<Code>(static_cast<unsigned char>(strings[order[i]][pos]));
    });
    t->prepare_lca();
    locus_of.assign(strings.size(), 0);
    for (std::size_t r = 0; r < order.size(); ++r) locus_of[order[r]] = t->locus(r);
    return t;
}

TwoFamiliesInstance instance_from_strings(const std::vector<std::pair<std::string, std::string>>& p,
                                          const std::vector<std::pair<std::string, std::string>>& q) {
    std::vector<std::string> f1, f2;
    for (const auto* fam : {&p, &q})
        for (const auto& [a, b] : *fam) {
            f1.push_back(a);
            f2.push_back(b);
        }
    std::vector<u32> l1, l2;
    TwoFamiliesInstance inst;
    inst.trie1 = trie_from_strings(f1, l1);
    inst.trie2 = trie_from_strings(f2, l2);
    for (std::size_t i = 0; i < p.size(); ++i) inst.P.emplace_back(l1[i], l2[i]);
    for (std::size_t i = 0; i < q.size(); ++i) inst.Q.emplace_back(l1[p.size() + i], l2[p.size() + i]);
    return inst;
}

}  // namespace plcs
