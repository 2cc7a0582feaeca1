#include "packed_lcs/klcs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <unordered_map>
#include <stdexcept>

#include "packed_lcs/lcs.hpp"
#include "packed_lcs/sync_runs.hpp"
#include "packed_lcs/wavelet_lcp.hpp"

namespace plcs {

// ---- modified strings ----

Code mod_char(const FragmentIndex& idx, const ModifiedString& m, std::size_t i) {
    for (std::size_t j = 0; j < m.count; ++j)
        if (m.mods[j].first == i) return m.mods[j].second;
    return idx.text().payload()[m.src.start + i];
}

ModifiedString with_substitution(const FragmentIndex& idx, ModifiedString m, std::size_t pos, Code letter) {
    if (pos >= m.src.len) throw std::logic_error("substitution outside the source");
    if (m.count == kMaxMismatches) throw std::logic_error("too many substitutions");
    if (idx.text().payload()[m.src.start + pos] == letter) throw std::logic_error("substitution keeps the source letter");
    std::size_t at = m.count;
    while (at > 0 && m.mods[at - 1].first > pos) {
        m.mods[at] = m.mods[at - 1];
        --at;
    }
    if (at > 0 && m.mods[at - 1].first == pos) throw std::logic_error("position already substituted");
    m.mods[at] = {static_cast<u32>(pos), letter};
    ++m.count;
    return m;
}

std::size_t lcp_modified(const FragmentIndex& idx, const ModifiedString& a, const ModifiedString& b) {
    const PackedText& pay = idx.text().payload();
    const SuffixIndex& si = idx.index();
    const std::size_t lim = std::min(a.src.len, b.src.len);
    std::size_t pos = 0, ia = 0, ib = 0;
    while (true) {
        std::size_t na = ia < a.count ? a.mods[ia].first : SIZE_MAX;
        std::size_t nb = ib < b.count ? b.mods[ib].first : SIZE_MAX;
        std::size_t e = std::min({na, nb, lim});
        if (pos < e) {
            std::size_t l = si.lce(a.src.start + pos, b.src.start + pos);
            if (pos + l < e) return pos + l;
            pos = e;
        }
        if (pos == lim) return lim;
        Code ca = na == pos ? a.mods[ia++].second : pay[a.src.start + pos];
        Code cb = nb == pos ? b.mods[ib++].second : pay[b.src.start + pos];
        if (ca != cb) return pos;
        ++pos;
    }
}

int compare_modified(const FragmentIndex& idx, const ModifiedString& a, const ModifiedString& b) {
    std::size_t l = lcp_modified(idx, a, b);
    if (l == a.size() || l == b.size()) return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
    return mod_char(idx, a, l) < mod_char(idx, b, l) ? -1 : 1;
}

std::vector<Code> materialize(const FragmentIndex& idx, const ModifiedString& m) {
    std::vector<Code> out(m.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = idx.text().payload()[m.src.start + i];
    for (std::size_t j = 0; j < m.count; ++j) out[m.mods[j].first] = m.mods[j].second;
    return out;
}

std::size_t lcp_k(const FragmentIndex& idx, Span u, Span v, std::size_t k) {
    const std::size_t lim = std::min(u.len, v.len);
    std::size_t pos = 0, used = 0;
    while (true) {
        if (pos >= lim) return lim;
        pos += idx.index().lce(u.start + pos, v.start + pos);
        if (pos >= lim) return lim;
        if (used == k) return pos;
        ++used;
        ++pos;
    }
}

// ---- complete families ----

namespace {

std::size_t ceil_log2(std::size_t x) {
    std::size_t r = 0;
    while ((std::size_t{1} << r) < x) ++r;
    return r;
}

class CompleteBuilder {
public:
    CompleteBuilder(const FragmentIndex& idx, std::size_t k, const std::function<void(const std::vector<ModElem>&)>& sink,
                    FamilyCounters* counters, const std::vector<std::uint8_t>* origin)
        : idx_(idx), k_(k), sink_(sink), counters_(counters), origin_(origin) {}

    void run(std::vector<ModElem> set, std::size_t d) {
        if (set.empty()) return;
        sort_set(set);
        if (d == k_) {
            emit(set);
            return;
        }
        expand(set, d);
    }

private:
    bool useful(const std::vector<ModElem>& set) const {
        if (!origin_) return !set.empty();
        bool seen[2] = {false, false};
        for (const auto& e : set) seen[(*origin_)[e.src] & 1] = true;
        return seen[0] && seen[1];
    }

    void emit(const std::vector<ModElem>& set) {
        if (counters_) {
            ++counters_->sets;
            counters_->total += set.size();
            std::map<u32, std::size_t> per;
            for (const auto& e : set) counters_->max_per_source = std::max(counters_->max_per_source, ++per[e.src]);
        }
        sink_(set);
    }

    // Pivot split: bucket by LCP with the pivot, then order tails as plain substrings.
    void sort_set(std::vector<ModElem>& set) {
        const std::size_t m = set.size();
        std::size_t pv = 0;
        for (std::size_t x = 1; x < m; ++x)
            if (set[x].str.reach() > set[pv].str.reach()) pv = x;
        const ModifiedString pivot = set[pv].str;
        struct Key {
            int side;
            long long lcp;
            u32 x;
        };
        std::vector<Key> key(m);
        for (std::size_t x = 0; x < m; ++x) {
            const ModifiedString& e = set[x].str;
            std::size_t L = lcp_modified(idx_, e, pivot);
            if (e.reach() > L) throw std::logic_error("pivot invariant violated");
            bool below = L == e.size() || (L < pivot.size() && mod_char(idx_, e, L) < mod_char(idx_, pivot, L));
            key[x] = {below ? 0 : 1, below ? static_cast<long long>(L) : -static_cast<long long>(L), static_cast<u32>(x)};
        }
        const PackedText& pay = idx_.text().payload();
        std::sort(key.begin(), key.end(), [&](const Key& a, const Key& b) {
            if (a.side != b.side) return a.side < b.side;
            if (a.lcp != b.lcp) return a.lcp < b.lcp;
            std::size_t L = static_cast<std::size_t>(a.lcp < 0 ? -a.lcp : a.lcp);
            const Span& x = set[a.x].str.src;
            const Span& y = set[b.x].str.src;
            std::size_t lx = x.len - L, ly = y.len - L;
            std::size_t l = idx_.lce_ranges(x.start + L, lx, y.start + L, ly);
            if (l == lx || l == ly) return lx < ly || (lx == ly && a.x < b.x);
            return pay[x.start + L + l] < pay[y.start + L + l];
        });
        std::vector<ModElem> out(m);
        for (std::size_t r = 0; r < m; ++r) out[r] = set[key[r].x];
        set.swap(out);
    }

    void expand(const std::vector<ModElem>& set, std::size_t d) {
        const std::size_t m = set.size();
        std::vector<u32> lens(m), lcps(m ? m - 1 : 0);
        for (std::size_t x = 0; x < m; ++x) {
            lens[x] = static_cast<u32>(set[x].str.size());
            if (x) lcps[x - 1] = static_cast<u32>(lcp_modified(idx_, set[x - 1].str, set[x].str));
        }
        CompactedTrie trie(lens, lcps, [&](std::size_t i, std::size_t pos) { return mod_char(idx_, set[i].str, pos); });
        const std::size_t nn = trie.node_count();
        // preorder, subtree rank ranges and leaf counts
        std::vector<u32> order;
        order.reserve(nn);
        std::vector<u32> stack{CompactedTrie::root()};
        while (!stack.empty()) {
            u32 v = stack.back();
            stack.pop_back();
            order.push_back(v);
            const auto& ch = trie.node(v).children;
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
        }
        std::vector<u32> lo(nn, UINT32_MAX), hi(nn, 0), leaves(nn, 0), height(nn, 0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            u32 v = *it;
            const auto& nd = trie.node(v);
            for (u32 t : nd.terminals) {
                lo[v] = std::min(lo[v], t);
                hi[v] = std::max(hi[v], t + 1);
            }
            if (nd.children.empty()) leaves[v] = 1;
            for (u32 c : nd.children) {
                lo[v] = std::min(lo[v], lo[c]);
                hi[v] = std::max(hi[v], hi[c]);
                leaves[v] += leaves[c];
                height[v] = std::max(height[v], height[c] + 1);
            }
        }
        auto heavy = [&](u32 v) {
            const auto& ch = trie.node(v).children;
            u32 best = ch[0];
            for (u32 c : ch)
                if (leaves[c] > leaves[best]) best = c;
            return best;
        };
        std::vector<u32> light_count(m, 0);
        for (u32 w : order) {
            bool light = w == CompactedTrie::root() || heavy(trie.node(w).parent) != w;
            if (!light || lo[w] == UINT32_MAX) continue;
            u32 h = w;
            while (!trie.node(h).children.empty()) h = heavy(h);
            const u32 rh = trie.node(h).terminals.front();
            const ModifiedString& hs = set[rh].str;
            std::vector<std::size_t> L(hi[w] - lo[w]);
            std::size_t cur = hs.size();
            for (std::size_t x = rh + 1; x-- > lo[w];) {
                if (x < rh) cur = std::min<std::size_t>(cur, lcps[x]);
                L[x - lo[w]] = cur;
            }
            cur = hs.size();
            for (std::size_t x = rh + 1; x < hi[w]; ++x) {
                cur = std::min<std::size_t>(cur, lcps[x - 1]);
                L[x - lo[w]] = cur;
            }
            std::vector<ModElem> next;
            for (std::size_t x = lo[w]; x < hi[w]; ++x) {
                ++light_count[x];
                const ModElem& e = set[x];
                std::size_t l = L[x - lo[w]];
                if (e.str.reach() > l) continue;
                next.push_back(e);
                if (e.str.size() > l) next.push_back({with_substitution(idx_, e.str, l, mod_char(idx_, hs, l)), e.src});
            }
            if (useful(next)) run(std::move(next), d + 1);
        }
        if (counters_) {
            std::size_t bound = std::min<std::size_t>(height[CompactedTrie::root()], ceil_log2(leaves[CompactedTrie::root()])) + 1;
            for (u32 c : light_count) {
                counters_->light_depth_max = std::max<std::size_t>(counters_->light_depth_max, c);
                if (c > bound) counters_->light_bound_ok = false;
            }
        }
    }

    const FragmentIndex& idx_;
    std::size_t k_;
    const std::function<void(const std::vector<ModElem>&)>& sink_;
    FamilyCounters* counters_;
    const std::vector<std::uint8_t>* origin_;
};

}  // namespace

void build_complete_family(const FragmentIndex& idx, const std::vector<Span>& F, std::size_t k,
                           const std::function<void(const std::vector<ModElem>&)>& sink, FamilyCounters* counters,
                           const std::vector<std::uint8_t>* origin) {
    if (k > kMaxMismatches) throw std::invalid_argument("k exceeds the supported maximum");
    std::vector<ModElem> base(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) base[i] = {ModifiedString{F[i], 0, {}}, static_cast<u32>(i)};
    CompleteBuilder b(idx, k, sink, counters, origin);
    b.run(std::move(base), 0);
}

// ---- bicomplete families ----

std::size_t FamilyBatch::size() const {
    std::size_t s = 0;
    for (const auto& b : sets) s += b.elems.size();
    return s;
}

void build_bicomplete_family(const FragmentIndex& idx, const PairFamily& G, std::size_t k1, std::size_t k2,
                             const std::function<void(const FamilyBatch&)>& sink, BicompleteStats* stats,
                             const std::vector<std::uint8_t>* origin, const std::function<bool(std::size_t)>& hopeless) {
    const std::size_t budget = idx.text().size() + G.size();
    BicompleteStats local;
    BicompleteStats& st = stats ? *stats : local;
    st.budget = budget;
    std::vector<Span> F1(G.size()), F2(G.size());
    for (std::size_t i = 0; i < G.size(); ++i) {
        F1[i] = G[i].first;
        F2[i] = G[i].second;
    }
    auto note_batch = [&](std::size_t size, std::size_t sets_in_batch) {
        st.max_batch = std::max(st.max_batch, size);
        if (size > budget && sets_in_batch > 1) st.budget_ok = false;
    };

    struct Triple {
        u32 set, rank;
        ModifiedString str;
    };
    struct Six {
        u32 set1, rank1, set2, rank2, src;
        const ModifiedString* a;
        ModifiedString b;
    };

    std::vector<std::vector<ModElem>> batch1;
    std::vector<std::size_t> reach1;  // cross-origin LCP bound per first-family set
    std::size_t triples = 0;
    const bool pruning = origin && hopeless;
    auto cross_bound = [&](const std::vector<ModElem>& set) {
        std::size_t m = 0;
        for (std::size_t i = 1; i < set.size(); ++i)
            if ((*origin)[set[i - 1].src] != (*origin)[set[i].src])
                m = std::max(m, lcp_modified(idx, set[i - 1].str, set[i].str));
        return m;
    };

    auto flush_pairs = [&](std::vector<Six>& six, std::size_t sets_in_six) {
        if (six.empty()) return;
        std::sort(six.begin(), six.end(), [](const Six& x, const Six& y) {
            return std::tie(x.set1, x.set2, x.rank1, x.rank2) < std::tie(y.set1, y.set2, y.rank1, y.rank2);
        });
        FamilyBatch out;
        for (std::size_t i = 0; i < six.size();) {
            std::size_t j = i;
            while (j < six.size() && six[j].set1 == six[i].set1 && six[j].set2 == six[i].set2) ++j;
            BiSet bs;
            bool seen[2] = {false, false};
            std::map<u32, std::size_t> mult;
            for (std::size_t x = i; x < j; ++x) {
                bs.elems.push_back({*six[x].a, six[x].b, six[x].src});
                if (origin) seen[(*origin)[six[x].src] & 1] = true;
                st.max_pair_multiplicity = std::max(st.max_pair_multiplicity, ++mult[six[x].src]);
            }
            if (!origin || (seen[0] && seen[1])) {
                std::vector<u32> o(j - i);
                std::iota(o.begin(), o.end(), 0u);
                bs.order1 = o;  // already by rank1
                std::stable_sort(o.begin(), o.end(), [&](u32 a, u32 b) { return six[i + a].rank2 < six[i + b].rank2; });
                bs.order2 = std::move(o);
                out.sets.push_back(std::move(bs));
            }
            i = j;
        }
        note_batch(six.size(), sets_in_six);
        ++st.batches;
        if (!out.sets.empty()) sink(out);
        six.clear();
    };

    auto process_batch1 = [&]() {
        if (batch1.empty()) return;
        std::vector<std::vector<Triple>> at(G.size());
        for (u32 b = 0; b < batch1.size(); ++b)
            for (u32 r = 0; r < batch1[b].size(); ++r) at[batch1[b][r].src].push_back({b, r, batch1[b][r].str});
        std::vector<Six> six;
        u32 set2 = 0;
        std::size_t sets_in_six = 0;
        build_complete_family(
            idx, F2, k2,
            [&](const std::vector<ModElem>& s2) {
                std::size_t add = 0;
                std::vector<std::uint8_t> live;
                if (pruning) {
                    // a product set cannot beat the sum of both sides' bounds
                    const std::size_t b2 = cross_bound(s2);
                    live.resize(batch1.size());
                    bool any = false;
                    for (std::size_t b = 0; b < batch1.size(); ++b) any |= live[b] = !hopeless(reach1[b] + b2);
                    if (!any) return;
                }
                for (const auto& e : s2)
                    for (const Triple& t : at[e.src]) add += !pruning || live[t.set];
                if (!six.empty() && six.size() + add > budget) {
                    flush_pairs(six, sets_in_six);
                    sets_in_six = 0;
                }
                for (u32 r = 0; r < s2.size(); ++r)
                    for (const Triple& t : at[s2[r].src])
                        if (!pruning || live[t.set]) six.push_back({t.set, t.rank, set2, r, s2[r].src, &t.str, s2[r].str});
                ++set2;
                ++sets_in_six;
            },
            &st.second, origin);
        flush_pairs(six, sets_in_six);
        note_batch(triples, batch1.size());
        batch1.clear();
        reach1.clear();
        triples = 0;
    };

    build_complete_family(
        idx, F1, k1,
        [&](const std::vector<ModElem>& s1) {
            if (!batch1.empty() && triples + s1.size() > budget) process_batch1();
            batch1.push_back(s1);
            if (pruning) reach1.push_back(cross_bound(s1));
            triples += s1.size();
        },
        &st.first, origin);
    process_batch1();
}

// ---- maxPairLCP with mismatches ----

namespace {

struct SubProblem {
    const BiSet* set;
    std::vector<std::pair<u32, bool>> by1, by2;  // (element, is U) in the two orders
};

struct DeltaKey {
    std::uint8_t n1 = 0, n2 = 0;
    std::array<std::uint64_t, 2 * kMaxMismatches> v{};
    auto operator<=>(const DeltaKey&) const = default;
};

struct DeltaKeyHash {
    std::size_t operator()(const DeltaKey& k) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL * (k.n1 * 16 + k.n2 + 1);
        for (std::size_t i = 0; i < std::size_t{k.n1} + k.n2; ++i) h = (h ^ k.v[i]) * 0xff51afd7ed558ccdULL, h ^= h >> 29;
        return h;
    }
};

std::uint64_t pack_mod(const std::pair<u32, Code>& m) { return (std::uint64_t{m.first} << 32) | m.second; }

struct KSolver {
    const FragmentIndex& idx;
    std::size_t nu;  // |U|; sources below nu are U pairs
    std::size_t k1, k2, ell, N;
    bool general;
    KStats& st;
    bool has_floor = false;
    std::size_t floor = 0;  // only values above this matter
    PairLcpResult best{};
    std::vector<SubProblem> pending{};
    std::size_t pending_size = 0;

    std::unordered_map<DeltaKey, u32, DeltaKeyHash> group_of{};
    std::vector<DeltaKey> keys{};
    std::vector<u32> ids{}, first_id{}, start1{}, start2{}, flat1{}, flat2{};
    std::vector<std::uint8_t> mixed{};  // bit 0: some U element, bit 1: some V element

    static constexpr std::size_t kPairwiseLimit = 16;

    void offer(std::size_t value, std::size_t p, std::size_t q) {
        if (!best.has_witness || value > best.value ||
            (value == best.value && std::make_pair(p, q) < std::make_pair(best.p_index, best.q_index)))
            best = {value, true, p, q};
    }

    std::shared_ptr<CompactedTrie> merged_trie(bool first, std::vector<u32>& locus_out,
                                               std::vector<std::pair<u32, u32>>& where) {
        // strings j.F over all pending subproblems, in (j, rank) order
        where.clear();
        for (u32 j = 0; j < pending.size(); ++j) {
            const auto& list = first ? pending[j].by1 : pending[j].by2;
            for (const auto& [e, isu] : list) where.push_back({j, e});
        }
        auto str = [&](std::size_t i) -> const ModifiedString& {
            const BiElem& b = pending[where[i].first].set->elems[where[i].second];
            return first ? b.first : b.second;
        };
        std::vector<u32> lens(where.size()), lcps(where.empty() ? 0 : where.size() - 1);
        for (std::size_t i = 0; i < where.size(); ++i) {
            lens[i] = static_cast<u32>(str(i).size() + 1);
            if (i) lcps[i - 1] = where[i - 1].first == where[i].first ? static_cast<u32>(1 + lcp_modified(idx, str(i - 1), str(i))) : 0;
        }
        auto trie = std::make_shared<CompactedTrie>(lens, lcps, [&](std::size_t i, std::size_t pos) -> Code {
            return pos == 0 ? static_cast<Code>(where[i].first) : mod_char(idx, str(i), pos - 1);
        });
        trie->prepare_lca();
        locus_out.resize(where.size());
        for (std::size_t i = 0; i < where.size(); ++i) locus_out[i] = trie->locus(i);
        return trie;
    }

    void flush() {
        if (pending.empty()) return;
        std::vector<u32> loc1, loc2;
        std::vector<std::pair<u32, u32>> w1, w2;
        auto t1 = merged_trie(true, loc1, w1);
        auto t2 = merged_trie(false, loc2, w2);
        // element (j, e) -> locus in each trie
        std::map<std::pair<u32, u32>, u32> in2;
        for (std::size_t i = 0; i < w2.size(); ++i) in2[w2[i]] = loc2[i];
        TwoFamiliesInstance inst;
        inst.trie1 = t1;
        inst.trie2 = t2;
        std::vector<u32> psrc, qsrc;
        for (std::size_t i = 0; i < w1.size(); ++i) {
            const BiElem& b = pending[w1[i].first].set->elems[w1[i].second];
            auto pr = std::make_pair(loc1[i], in2.at(w1[i]));
            if (b.src < nu) {
                inst.P.push_back(pr);
                psrc.push_back(b.src);
            } else {
                inst.Q.push_back(pr);
                qsrc.push_back(static_cast<u32>(b.src - nu));
            }
        }
        ++st.instances;
        PairLcpResult r;
        if (general) {
            SolverStats ss;
            r = max_pair_lcp_general(inst, &ss);
            st.merged_elements += ss.merged_elements;
            const double ni = static_cast<double>(inst.P.size() + inst.Q.size());
            const double lg = std::max(1.0, std::ceil(std::log2(std::max(ni, 2.0))));
            st.merge_ratio_max = std::max(st.merge_ratio_max, static_cast<double>(ss.merged_elements) / (ni * lg * lg));
        } else {
            r = solve_alpha_beta(inst, ell + 1, ell + 1);
        }
        if (r.has_witness && r.value >= 2) offer(r.value - 2, psrc[r.p_index], qsrc[r.q_index]);
        pending.clear();
        pending_size = 0;
    }

    bool beaten(std::size_t bound) const {
        return (best.has_witness && bound <= best.value) || (has_floor && bound <= floor);
    }

    // Best cross pair of a sorted list sits next to each other, so the sum of the two
    // adjacent maxima bounds the subproblem. Returns true when nothing is left to solve.
    bool settle(const BiSet& bs, const SubProblem& sp) {
        auto adjacent_max = [&](const std::vector<std::pair<u32, bool>>& list, bool first) {
            std::size_t m = 0;
            for (std::size_t i = 1; i < list.size(); ++i)
                if (list[i - 1].second != list[i].second) {
                    const BiElem& a = bs.elems[list[i - 1].first];
                    const BiElem& b = bs.elems[list[i].first];
                    m = std::max(m, first ? lcp_modified(idx, a.first, b.first) : lcp_modified(idx, a.second, b.second));
                }
            return m;
        };
        const std::size_t bound = adjacent_max(sp.by1, true) + adjacent_max(sp.by2, false);
        if (beaten(bound)) {
            ++st.pruned;
            return true;
        }
        std::size_t nu_ = 0;
        for (const auto& pr : sp.by1) nu_ += pr.second;
        const std::size_t nv_ = sp.by1.size() - nu_;
        if (nu_ * nv_ > kPairwiseLimit) return false;
        ++st.pairwise;
        for (const auto& [x, xu] : sp.by1) {
            if (!xu) continue;
            const BiElem& a = bs.elems[x];
            for (const auto& [y, yu] : sp.by1) {
                if (yu) continue;
                const BiElem& b = bs.elems[y];
                offer(lcp_modified(idx, a.first, b.first) + lcp_modified(idx, a.second, b.second), a.src, b.src - nu);
            }
        }
        return true;
    }

    // Pending subproblems point into `batch`; callers flush before it goes away.
    void consume(const FamilyBatch& batch) {
        for (const BiSet& bs : batch.sets) {
            // group by (delta1, delta2) subsets, keeping both orders
            group_of.clear();
            keys.clear();
            ids.clear();
            first_id.assign(bs.elems.size() + 1, 0);
            mixed.clear();
            for (u32 x = 0; x < bs.elems.size(); ++x) {
                const BiElem& e = bs.elems[x];
                const std::size_t c1 = e.first.count, c2 = e.second.count;
                first_id[x] = static_cast<u32>(ids.size());
                for (std::size_t m1 = 0; m1 < (std::size_t{1} << c1); ++m1)
                    for (std::size_t m2 = 0; m2 < (std::size_t{1} << c2); ++m2) {
                        DeltaKey key;
                        for (std::size_t b = 0; b < c1; ++b)
                            if (m1 >> b & 1) key.v[key.n1++] = pack_mod(e.first.mods[b]);
                        for (std::size_t b = 0; b < c2; ++b)
                            if (m2 >> b & 1) key.v[key.n1 + key.n2++] = pack_mod(e.second.mods[b]);
                        auto [it, fresh] = group_of.try_emplace(key, static_cast<u32>(keys.size()));
                        if (fresh) {
                            keys.push_back(key);
                            mixed.push_back(0);
                        }
                        mixed[it->second] |= e.src < nu ? 1 : 2;
                        ids.push_back(it->second);
                    }
            }
            first_id[bs.elems.size()] = static_cast<u32>(ids.size());
            // stable bucketing of each order by group id, dropping one-sided groups
            auto bucket = [&](const std::vector<u32>& order, std::vector<u32>& start, std::vector<u32>& out) {
                start.assign(keys.size() + 1, 0);
                for (u32 x : order)
                    for (u32 i = first_id[x]; i < first_id[x + 1]; ++i)
                        if (mixed[ids[i]] == 3) ++start[ids[i] + 1];
                for (std::size_t g = 0; g < keys.size(); ++g) start[g + 1] += start[g];
                out.resize(start[keys.size()]);
                std::vector<u32> at(start.begin(), start.end() - 1);
                for (u32 x : order)
                    for (u32 i = first_id[x]; i < first_id[x + 1]; ++i)
                        if (mixed[ids[i]] == 3) out[at[ids[i]]++] = x;
            };
            bucket(bs.order1, start1, flat1);
            bucket(bs.order2, start2, flat2);
            for (std::size_t g = 0; g < keys.size(); ++g) {
                if (mixed[g] != 3) continue;
                const DeltaKey& key = keys[g];
                const std::span<const u32> g1(flat1.data() + start1[g], start1[g + 1] - start1[g]);
                const std::span<const u32> g2(flat2.data() + start2[g], start2[g + 1] - start2[g]);
                const std::size_t s1 = key.n1, s2 = key.n2;
                // which (count1, count2) shapes occur on each side
                std::uint32_t ushape = 0, vshape = 0;
                for (u32 x : g1) {
                    const BiElem& e = bs.elems[x];
                    (e.src < nu ? ushape : vshape) |= 1u << (e.first.count * 5 + e.second.count);
                }
                auto v_fits = [&](std::size_t a, std::size_t b) {
                    for (std::size_t i = 0; i <= a; ++i)
                        for (std::size_t j = 0; j <= b; ++j)
                            if (vshape >> (i * 5 + j) & 1) return true;
                    return false;
                };
                for (std::size_t d1 = s1; d1 <= k1; ++d1)
                    for (std::size_t d2 = s2; d2 <= k2; ++d2) {
                        if (!(ushape >> (d1 * 5 + d2) & 1) || !v_fits(k1 + s1 - d1, k2 + s2 - d2)) continue;
                        auto in_u = [&](const BiElem& e) { return e.src < nu && e.first.count == d1 && e.second.count == d2; };
                        auto in_v = [&](const BiElem& e) {
                            return e.src >= nu && e.first.count <= k1 + s1 - d1 && e.second.count <= k2 + s2 - d2;
                        };
                        SubProblem sp{&bs, {}, {}};
                        bool has_u = false, has_v = false;
                        for (u32 x : g1) {
                            const BiElem& e = bs.elems[x];
                            if (in_u(e)) {
                                sp.by1.push_back({x, true});
                                has_u = true;
                            } else if (in_v(e)) {
                                sp.by1.push_back({x, false});
                                has_v = true;
                            }
                        }
                        if (!has_u || !has_v) continue;
                        for (u32 x : g2) {
                            const BiElem& e = bs.elems[x];
                            if (in_u(e)) sp.by2.push_back({x, true});
                            else if (in_v(e)) sp.by2.push_back({x, false});
                        }
                        st.p_family_total += sp.by1.size();
                        ++st.subproblems;
                        if (settle(bs, sp)) continue;
                        pending_size += sp.by1.size();
                        pending.push_back(std::move(sp));
                        if (pending_size >= N) flush();
                    }
            }
        }
    }
};

}  // namespace

PairLcpResult max_pair_lcp_k(const FragmentIndex& idx, const PairFamily& U, const PairFamily& V, std::size_t k1,
                             std::size_t k2, std::size_t ell, KStats* stats, std::optional<std::size_t> floor) {
    if (k1 > kMaxMismatches || k2 > kMaxMismatches) throw std::invalid_argument("k exceeds the supported maximum");
    KStats local;
    KStats& st = stats ? *stats : local;
    st.k1 = k1;
    st.k2 = k2;
    st.ell = ell;
    if (U.empty() || V.empty()) return {};
    for (const auto* fam : {&U, &V})
        for (const auto& [a, b] : *fam)
            if (a.len > ell || b.len > ell) throw std::invalid_argument("component longer than ell");
    PairFamily G = U;
    G.insert(G.end(), V.begin(), V.end());
    std::vector<std::uint8_t> origin(G.size(), 0);
    std::fill(origin.begin() + U.size(), origin.end(), 1);
    const std::size_t N = G.size();
    st.n_elements = N;
    double lg = std::log2(static_cast<double>(std::max<std::size_t>(N, 2)));
    KSolver solver{idx, U.size(), k1, k2, ell, N, static_cast<double>(ell) > std::pow(lg, 1.5), st,
                   floor.has_value(), floor.value_or(0)};
    build_bicomplete_family(
        idx, G, k1, k2,
        [&](const FamilyBatch& b) {
            solver.consume(b);
            solver.flush();
        },
        &st.bicomplete, &origin, [&](std::size_t bound) { return solver.beaten(bound); });
    solver.flush();
    return solver.best;
}

PairLcpResult max_pair_lcp_k_brute(const FragmentIndex& idx, const PairFamily& U, const PairFamily& V, std::size_t k1,
                                   std::size_t k2) {
    PairLcpResult best;
    for (std::size_t p = 0; p < U.size(); ++p)
        for (std::size_t q = 0; q < V.size(); ++q) {
            std::size_t v = lcp_k(idx, U[p].first, V[q].first, k1) + lcp_k(idx, U[p].second, V[q].second, k2);
            if (!best.has_witness || v > best.value) best = {v, true, p, q};
        }
    return best;
}

// ---- anchors ----

KlcsAnchors klcs_anchors(const FragmentIndex& idx, std::size_t ell, std::size_t k) {
    if (ell == 0) throw std::invalid_argument("ell must be positive");
    const CombinedText& ct = idx.text();
    const std::size_t ns = ct.len_s(), nt = ct.len_t();
    KlcsAnchors out;
    out.tau = ell / (6 * (k + 1));
    if (out.tau < 1) {
        out.all_positions = true;
        out.s.resize(ns);
        out.t.resize(nt);
        std::iota(out.s.begin(), out.s.end(), 0u);
        std::iota(out.t.begin(), out.t.end(), 0u);
        return out;
    }
    const std::size_t tau = out.tau;
    // Y = # S $ T
    const Code sigma = static_cast<Code>(ct.sigma());
    std::vector<Code> y;
    y.reserve(ns + nt + 2);
    y.push_back(sigma);
    auto sc = idx.s().unpack();
    y.insert(y.end(), sc.begin(), sc.end());
    y.push_back(sigma + 1);
    auto tc = idx.t().unpack();
    y.insert(y.end(), tc.begin(), tc.end());
    const std::size_t ny = y.size();
    BidirectionalLce bl(y);
    std::set<std::size_t> sync, runs, mis;
    if (2 * tau <= ny) {
        SyncSet a = build_sync_set(y, tau, window_ids(bl.forward_index(), tau));
        sync.insert(a.positions.begin(), a.positions.end());
    }
    TauRunGroups groups = find_tau_runs(y, tau);
    for (const TauRun& r : groups.runs) {
        const std::size_t i = r.start, p = r.period;
        MisperiodSets ms = misperiods(bl, i, i + p, k + 1);
        for (std::size_t x : ms.left)
            for (std::size_t z : two_smallest_congruent(x + 1, r.lyndon_start, p, ny)) runs.insert(z);
        mis.insert(ms.left.begin(), ms.left.end());
        mis.insert(ms.right.begin(), ms.right.end());
    }
    out.from_sync = sync.size();
    out.from_runs = runs.size();
    out.from_misperiods = mis.size();
    std::set<std::size_t> all = sync;
    all.insert(runs.begin(), runs.end());
    all.insert(mis.begin(), mis.end());
    for (std::size_t a : all) {
        if (a >= 1 && a <= ns) out.s.push_back(static_cast<u32>(a - 1));
        else if (a >= ns + 2 && a < ny) out.t.push_back(static_cast<u32>(a - ns - 2));
    }
    return out;
}

// ---- driver ----

namespace {

PairFamily anchor_pairs(const CombinedText& ct, Side side, std::size_t n, const std::vector<u32>& anchors, std::size_t ell) {
    PairFamily out;
    out.reserve(anchors.size());
    for (u32 a : anchors) {
        std::size_t b = a >= ell ? a - ell : 0;
        std::size_t e = std::min(n, a + ell);
        out.push_back({Span{static_cast<u32>(ct.resolve({side, b, a, true})), static_cast<u32>(a - b)},
                       Span{static_cast<u32>(ct.resolve({side, a, e, false})), static_cast<u32>(e - a)}});
    }
    return out;
}

}  // namespace

KlcsReport klcs_report(std::string_view s, std::string_view t, std::size_t k) {
    if (k > kMaxMismatches)
        throw std::invalid_argument("k above " + std::to_string(kMaxMismatches) + " is not supported; use the DP oracle");
    KlcsReport rep;
    if (s.empty() || t.empty()) return rep;
    LcsResult base = lcs(s, t);
    rep.lcs = base.length;
    rep.result = {base.length, base.pos_s, base.pos_t, {}};
    if (k > 0) {
        auto [ps, pt] = remap_and_pack_pair(s, t);
        FragmentIndex idx(ps, pt);
        const CombinedText& ct = idx.text();
        const std::size_t ns = s.size(), nt = t.size(), d = base.length;
        const std::size_t top = std::min((k + 1) * d + k, std::min(ns, nt));
        for (std::size_t ell = std::max<std::size_t>(1, d);; ell *= 2) {
            rep.ells.push_back(ell);
            if (ell >= top) break;
        }
        const std::size_t n = ns + nt;
        {
            // seed: the plain LCS witness stretched both ways under the budget
            const std::size_t a = base.pos_s, b = base.pos_t;
            auto left_of = [&](Side side, std::size_t x) { return Span{static_cast<u32>(ct.resolve({side, 0, x, true})), static_cast<u32>(x)}; };
            auto right_of = [&](Side side, std::size_t x, std::size_t len) {
                return Span{static_cast<u32>(ct.resolve({side, x, len, false})), static_cast<u32>(len - x)};
            };
            for (std::size_t k1 = 0; k1 <= k; ++k1) {
                std::size_t left = lcp_k(idx, left_of(Side::S, a), left_of(Side::T, b), k1);
                std::size_t right = lcp_k(idx, right_of(Side::S, a, ns), right_of(Side::T, b, nt), k - k1);
                if (left + right > rep.result.length) rep.result = {left + right, a - left, b - left, {}};
            }
        }
        for (auto it = rep.ells.rbegin(); it != rep.ells.rend(); ++it) {
            const std::size_t ell = *it;
            if (ell <= rep.result.length) continue;  // nothing in (ell/2, ell] can win
            KlcsAnchors an = klcs_anchors(idx, ell, k);
            rep.anchors_max = std::max(rep.anchors_max, an.s.size() + an.t.size());
            rep.anchor_ratio_max =
                std::max(rep.anchor_ratio_max, static_cast<double>(an.s.size() + an.t.size()) * ell / static_cast<double>(n));
            PairFamily U = anchor_pairs(ct, Side::S, ns, an.s, ell);
            PairFamily V = anchor_pairs(ct, Side::T, nt, an.t, ell);
            auto take = [&](std::size_t value, std::size_t p, std::size_t q, std::size_t k_left) {
                if (value <= rep.result.length) return;
                std::size_t left = lcp_k(idx, U[p].first, V[q].first, k_left);
                rep.result = {value, an.s[p] - left, an.t[q] - left, {}};
            };
            const bool tiny = ell <= 2 * (k + 1) && U.size() * V.size() <= (std::size_t{1} << 22);
            for (std::size_t k1 = 0; k1 <= k; ++k1) {
                PairLcpResult r;
                if (tiny) {
                    r = max_pair_lcp_k_brute(idx, U, V, k1, k - k1);
                    ++rep.brute_evaluations;
                } else {
                    KStats st;
                    r = max_pair_lcp_k(idx, U, V, k1, k - k1, ell, &st, rep.result.length);
                    rep.runs.push_back(st);
                }
                if (r.has_witness) take(r.value, r.p_index, r.q_index, k1);
            }
        }
    }
    KlcsResult& res = rep.result;
    for (std::size_t i = 0; i < res.length; ++i)
        if (s[res.pos_s + i] != t[res.pos_t + i]) res.mismatches.push_back(i);
    if (res.mismatches.size() > k) throw std::logic_error("k-LCS witness exceeds the mismatch budget");
    return rep;
}

KlcsResult klcs(std::string_view s, std::string_view t, std::size_t k) { return klcs_report(s, t, k).result; }

}  // namespace plcs
