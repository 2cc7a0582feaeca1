#include "packed_lcs/lcs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "packed_lcs/wavelet_lcp.hpp"

namespace plcs {

// ---- d-cover ----

DCover DCover::from_residues(std::size_t d, std::vector<u32> residues) {
    if (d == 0) throw std::invalid_argument("d-cover modulus must be positive");
    DCover c;
    c.d_ = d;
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    c.member_.assign(d, false);
    for (u32 r : residues) {
        if (r >= d) throw std::invalid_argument("residue outside [0, d)");
        c.member_[r] = true;
    }
    c.residues_ = std::move(residues);
    c.base_.assign(d, UINT32_MAX);
    for (u32 a : c.residues_)
        for (u32 b : c.residues_) {
            std::size_t delta = (b + d - a) % d;
            if (c.base_[delta] == UINT32_MAX || a < c.base_[delta]) c.base_[delta] = a;
        }
    for (std::size_t delta = 0; delta < d; ++delta)
        if (c.base_[delta] == UINT32_MAX) throw std::invalid_argument("residues do not form a difference cover");
    return c;
}

DCover DCover::build(std::size_t d) {
    if (d == 0) throw std::invalid_argument("d-cover modulus must be positive");
    std::size_t r = 1;
    while (r * r < d) ++r;
    std::vector<u32> res;
    for (std::size_t x = 0; x < r && x < d; ++x) res.push_back(static_cast<u32>(x));
    for (std::size_t k = 1; k <= r; ++k) res.push_back(static_cast<u32>((k * r) % d));
    return from_residues(d, std::move(res));
}

// ---- suffix automaton ----

namespace {

class SuffixAutomaton {
public:
    SuffixAutomaton(std::size_t sigma, std::size_t n_hint) : sigma_(sigma) {
        std::size_t states = 2 * n_hint + 2;
        flat_ = states * sigma <= (std::size_t{1} << 27);
        if (flat_) next_.reserve(states * sigma);
        len_.reserve(states);
        link_.reserve(states);
        first_.reserve(states);
        add_state(0, -1, -1);
    }
    void extend(Code c, int pos) {
        int cur = add_state(len_[last_] + 1, -1, pos);
        int p = last_;
        while (p != -1 && go(p, c) == -1) {
            set(p, c, cur);
            p = link_[p];
        }
        if (p == -1) {
            link_[cur] = 0;
        } else {
            int q = go(p, c);
            if (len_[p] + 1 == len_[q]) {
                link_[cur] = q;
            } else {
                int cl = add_state(len_[p] + 1, link_[q], first_[q]);
                for (std::size_t a = 0; a < sigma_; ++a) {
                    int t = go(q, static_cast<Code>(a));
                    if (t != -1) set(cl, static_cast<Code>(a), t);
                }
                while (p != -1 && go(p, c) == q) {
                    set(p, c, cl);
                    p = link_[p];
                }
                link_[q] = link_[cur] = cl;
            }
        }
        last_ = cur;
    }
    int go(int v, Code c) const {
        if (c >= sigma_) return -1;
        if (flat_) return next_[static_cast<std::size_t>(v) * sigma_ + c];
        auto it = map_.find(key(v, c));
        return it == map_.end() ? -1 : it->second;
    }
    int len(int v) const { return len_[v]; }
    int link(int v) const { return link_[v]; }
    int first(int v) const { return first_[v]; }

private:
    static std::uint64_t key(int v, Code c) { return (static_cast<std::uint64_t>(v) << 32) | c; }
    int add_state(int len, int link, int first) {
        len_.push_back(len);
        link_.push_back(link);
        first_.push_back(first);
        if (flat_) next_.resize(next_.size() + sigma_, -1);
        return static_cast<int>(len_.size() - 1);
    }
    void set(int v, Code c, int to) {
        if (flat_) next_[static_cast<std::size_t>(v) * sigma_ + c] = to;
        else map_[key(v, c)] = to;
    }
    std::size_t sigma_;
    bool flat_;
    std::vector<int> next_;
    std::unordered_map<std::uint64_t, int> map_;
    std::vector<int> len_, link_, first_;
    int last_ = 0;
};

// LCS of x and y; positions are in x/y coordinates.
LcsResult sam_lcs(const std::vector<Code>& x, const std::vector<Code>& y, std::size_t sigma) {
    LcsResult best;
    if (x.empty() || y.empty()) return best;
    SuffixAutomaton sam(sigma, x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sam.extend(x[i], static_cast<int>(i));
    int v = 0, l = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        Code c = y[j];
        while (v != 0 && sam.go(v, c) == -1) {
            v = sam.link(v);
            l = sam.len(v);
        }
        int nx = sam.go(v, c);
        if (nx != -1) {
            v = nx;
            ++l;
        } else {
            v = 0;
            l = 0;
        }
        if (static_cast<std::size_t>(l) > best.length) {
            best.length = l;
            best.pos_t = j + 1 - l;
            best.pos_s = static_cast<std::size_t>(sam.first(v)) + 1 - l;
        }
    }
    return best;
}

}  // namespace

LcsResult lcs_suffix_automaton(const std::vector<Code>& s, const std::vector<Code>& t, std::size_t sigma) {
    return sam_lcs(s, t, sigma);
}

LcsResult lcs_suffix_automaton(std::string_view s, std::string_view t) {
    std::vector<Code> a(s.begin(), s.end()), b(t.begin(), t.end());
    for (auto& c : a) c = static_cast<unsigned char>(c);
    for (auto& c : b) c = static_cast<unsigned char>(c);
    // dense remap keeps the flat transition table small
    std::vector<int> map(256, -1);
    Code next = 0;
    for (auto* v : {&a, &b})
        for (auto& c : *v) {
            if (map[c] < 0) map[c] = static_cast<int>(next++);
            c = static_cast<Code>(map[c]);
        }
    return sam_lcs(a, b, std::max<Code>(next, 1));
}

// ---- short regime ----

namespace {

struct WindowSet {
    std::vector<Code> joined;
    std::vector<u32> origin;  // original position of every joined symbol (separators: UINT32_MAX)
};

WindowSet dedup_windows(const PackedText& x, std::size_t m, Code sep) {
    WindowSet w;
    const std::size_t n = x.size();
    // packed key with the length in the top bits when it fits, raw codes otherwise
    const bool packed = 2 * m * x.bits_per_symbol() <= 57;
    std::unordered_set<std::uint64_t> seen_packed;
    std::unordered_set<std::string> seen_str;
    for (std::size_t st = 0; st < n; st += m) {
        std::size_t len = std::min(2 * m, n - st);
        bool fresh;
        if (packed) {
            fresh = seen_packed.insert(x.read_block(st, len) | (static_cast<std::uint64_t>(len) << 57)).second;
        } else {
            std::string k(len * sizeof(Code), '\0');
            for (std::size_t i = 0; i < len; ++i) {
                Code c = x[st + i];
                std::copy_n(reinterpret_cast<const char*>(&c), sizeof(Code), k.data() + i * sizeof(Code));
            }
            fresh = seen_str.insert(std::move(k)).second;
        }
        if (!fresh) continue;
        if (!w.joined.empty()) {
            w.joined.push_back(sep);
            w.origin.push_back(UINT32_MAX);
        }
        for (std::size_t i = 0; i < len; ++i) {
            w.joined.push_back(x[st + i]);
            w.origin.push_back(static_cast<u32>(st + i));
        }
        if (st + 2 * m >= n) break;  // later windows are suffixes of this one
    }
    return w;
}

}  // namespace

LcsResult lcs_short(const PackedText& s, const PackedText& t, std::size_t m) {
    if (m == 0) throw std::invalid_argument("lcs_short needs m >= 1");
    std::size_t sigma = std::max(s.alphabet().size(), t.alphabet().size());
    for (Code c : s.unpack()) sigma = std::max<std::size_t>(sigma, c + 1);
    for (Code c : t.unpack()) sigma = std::max<std::size_t>(sigma, c + 1);
    WindowSet x = dedup_windows(s, m, static_cast<Code>(sigma));
    WindowSet y = dedup_windows(t, m, static_cast<Code>(sigma + 1));
    LcsResult r = sam_lcs(x.joined, y.joined, sigma + 2);
    if (r.length == 0) return {};
    return {r.length, x.origin[r.pos_s], y.origin[r.pos_t]};
}

// ---- long regime ----

LcsResult lcs_long(const FragmentIndex& idx, std::size_t d) {
    const CombinedText& ct = idx.text();
    const std::size_t ns = ct.len_s(), nt = ct.len_t();
    if (ns == 0 || nt == 0) return {};
    DCover dc = DCover::build(std::max<std::size_t>(d, 1));
    std::vector<Span> spans;
    std::vector<u32> anchor_s, anchor_t;
    auto add = [&](Side side, std::size_t n, std::vector<u32>& anchors) {
        for (std::size_t i = 0; i <= n; ++i) {
            if (!dc.contains(i)) continue;
            anchors.push_back(static_cast<u32>(i));
            spans.push_back({static_cast<u32>(ct.resolve({side, 0, i, true})), static_cast<u32>(i)});
            spans.push_back({static_cast<u32>(ct.resolve({side, i, n, false})), static_cast<u32>(n - i)});
        }
    };
    add(Side::S, ns, anchor_s);
    add(Side::T, nt, anchor_t);
    // every span runs up to a sentinel, so suffix rank is the fragment order
    SpanTrie st = build_span_trie_sorted(idx, spans, sort_spans_by_rank(idx, spans));
    TwoFamiliesInstance inst;
    inst.trie1 = st.trie;
    inst.trie2 = st.trie;
    std::size_t k = 0;
    for (std::size_t i = 0; i < anchor_s.size(); ++i, k += 2) inst.P.emplace_back(st.locus[k], st.locus[k + 1]);
    for (std::size_t i = 0; i < anchor_t.size(); ++i, k += 2) inst.Q.emplace_back(st.locus[k], st.locus[k + 1]);
    PairLcpResult r = max_pair_lcp_general(inst);
    if (!r.has_witness || r.value == 0) return {};
    std::size_t left = st.trie->depth(st.trie->lca(inst.P[r.p_index].first, inst.Q[r.q_index].first));
    return {r.value, anchor_s[r.p_index] - left, anchor_t[r.q_index] - left};
}

// ---- medium regime ----

MediumAnchors build_anchors_medium(const FragmentIndex& idx, std::size_t tau) {
    if (tau < 3) throw std::invalid_argument("medium anchors need tau >= 3");
    const CombinedText& ct = idx.text();
    const std::size_t ns = ct.len_s(), nt = ct.len_t();
    MediumAnchors out;
    out.tau = tau;
    // Y = S $ T, $ unique
    std::vector<Code> y = idx.s().unpack();
    y.push_back(static_cast<Code>(ct.sigma()));
    auto tc = idx.t().unpack();
    y.insert(y.end(), tc.begin(), tc.end());
    const std::size_t ny = y.size();
    if (2 * tau <= ny) {
        // window classes borrowed from the combined index (the $ windows map to #1 windows)
        auto comb = window_ids(idx.index(), tau);
        const std::size_t off_t = ct.offsets()[2];
        std::vector<u32> ids(ny);
        for (std::size_t j = 0; j < ny; ++j) ids[j] = comb[j <= ns ? j : off_t + (j - ns - 1)];
        SyncSet a = build_sync_set(y, tau, ids);
        for (u32 p : a.positions) {
            if (p < ns) out.s1.push_back({p});
            else if (p > ns) out.t1.push_back({static_cast<u32>(p - ns - 1)});
        }
    }
    out.runs = find_tau_runs(y, tau);
    for (u32 r = 0; r < out.runs.runs.size(); ++r) {
        const TauRun& run = out.runs.runs[r];
        bool in_s = run.end <= ns;
        u32 shift = in_s ? 0 : static_cast<u32>(ns + 1);
        auto& two = in_s ? out.s2 : out.t2;
        auto& three = in_s ? out.s3 : out.t3;
        two.push_back({static_cast<u32>(run.lyndon_start) - shift, r});
        two.push_back({static_cast<u32>(run.second_lyndon_start()) - shift, r});
        three.push_back({static_cast<u32>(run.end - 1) - shift, r});
    }
    (void)nt;
    return out;
}

namespace {

struct Witness {
    LcsResult best;
    void offer(std::size_t len, std::size_t ps, std::size_t pt) {
        if (len > best.length) best = {len, ps, pt};
    }
};

}  // namespace

LcsResult lcs_medium(const FragmentIndex& idx, std::size_t tau, std::size_t delta_cap, MediumStats* stats) {
    const CombinedText& ct = idx.text();
    const std::size_t ns = ct.len_s(), nt = ct.len_t();
    if (ns == 0 || nt == 0) return {};
    MediumAnchors an = build_anchors_medium(idx, tau);
    Witness w;
    auto rev = [&](Side side, std::size_t b, std::size_t e) {
        return Span{static_cast<u32>(ct.resolve({side, b, e, true})), static_cast<u32>(e - b)};
    };
    auto fwd = [&](Side side, std::size_t b, std::size_t e) {
        return Span{static_cast<u32>(ct.resolve({side, b, e, false})), static_cast<u32>(e - b)};
    };
    auto by_rank = [&](const std::vector<Span>& spans) { return sort_spans_by_rank(idx, spans); };
    auto by_length = [&](const std::vector<Span>& spans) {
        std::vector<u32> order(spans.size());
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(), [&](u32 a, u32 b) { return spans[a].len < spans[b].len; });
        return order;
    };
    // Generic evaluation of one family pair; anchors give witness positions.
    enum class Solver { AlphaBeta, Prefix };
    auto solve = [&](const std::vector<u32>& as, const std::vector<u32>& at, std::vector<Span> first, std::vector<Span> second,
                     Solver how, bool second_full_suffix) {
        if (as.empty() || at.empty()) return std::size_t{0};
        SpanTrie t1 = how == Solver::Prefix ? build_span_trie_sorted(idx, first, by_length(first)) : build_span_trie(idx, first);
        SpanTrie t2 = second_full_suffix || how == Solver::AlphaBeta ? build_span_trie_sorted(idx, second, by_rank(second))
                                                                     : build_span_trie(idx, second);
        TwoFamiliesInstance inst;
        inst.trie1 = t1.trie;
        inst.trie2 = t2.trie;
        for (std::size_t i = 0; i < as.size(); ++i) inst.P.emplace_back(t1.locus[i], t2.locus[i]);
        for (std::size_t i = 0; i < at.size(); ++i) inst.Q.emplace_back(t1.locus[as.size() + i], t2.locus[as.size() + i]);
        PairLcpResult r = how == Solver::AlphaBeta ? solve_alpha_beta(inst, tau, delta_cap) : max_pair_lcp_prefix(inst);
        if (r.has_witness && r.value) {
            std::size_t left = t1.trie->depth(t1.trie->lca(inst.P[r.p_index].first, inst.Q[r.q_index].first));
            w.offer(r.value, as[r.p_index] - left, at[r.q_index] - left);
        }
        return inst.size();
    };

    // case I: sync anchors, alpha = tau, beta = delta_cap
    {
        std::vector<u32> as, at;
        std::vector<Span> f1, f2;
        for (const auto& a : an.s1) as.push_back(a.pos);
        for (const auto& a : an.t1) at.push_back(a.pos);
        for (u32 a : as) {
            f1.push_back(rev(Side::S, a >= tau ? a - tau : 0, a));
            f2.push_back(fwd(Side::S, a, std::min(ns, a + delta_cap)));
        }
        for (u32 a : at) {
            f1.push_back(rev(Side::T, a >= tau ? a - tau : 0, a));
            f2.push_back(fwd(Side::T, a, std::min(nt, a + delta_cap)));
        }
        std::size_t fam = solve(as, at, std::move(f1), std::move(f2), Solver::AlphaBeta, false);
        if (stats) {
            stats->anchors_i = as.size() + at.size();
            stats->family_i = fam;
        }
    }
    const auto& runs = an.runs.runs;
    auto run_start = [&](const MediumAnchor& a, bool in_s) { return runs[a.run].start - (in_s ? 0 : ns + 1); };
    auto run_end = [&](const MediumAnchor& a, bool in_s) { return runs[a.run].end - (in_s ? 0 : ns + 1); };
    // case II: per Lyndon root, anchors at the first two root occurrences
    std::size_t fam2 = 0, fam3 = 0;
    {
        std::map<std::vector<Code>, std::pair<std::vector<const MediumAnchor*>, std::vector<const MediumAnchor*>>> groups;
        std::vector<std::vector<Code>> root_of(runs.size());
        for (const auto& [root, ids] : an.runs.by_root)
            for (u32 r : ids) root_of[r] = root;
        for (const auto& a : an.s2) groups[root_of[a.run]].first.push_back(&a);
        for (const auto& a : an.t2) groups[root_of[a.run]].second.push_back(&a);
        for (auto& [root, g] : groups) {
            std::vector<u32> as, at;
            std::vector<Span> f1, f2;
            for (const auto* a : g.first) {
                as.push_back(a->pos);
                f1.push_back(rev(Side::S, run_start(*a, true), a->pos));
                f2.push_back(fwd(Side::S, a->pos, run_end(*a, true)));
            }
            for (const auto* a : g.second) {
                at.push_back(a->pos);
                f1.push_back(rev(Side::T, run_start(*a, false), a->pos));
                f2.push_back(fwd(Side::T, a->pos, run_end(*a, false)));
            }
            fam2 += solve(as, at, std::move(f1), std::move(f2), Solver::Prefix, false);
        }
    }
    // case III: per (root, tail), anchors at the last run position, second component the whole suffix
    {
        std::map<std::pair<std::vector<Code>, std::size_t>, std::pair<std::vector<const MediumAnchor*>, std::vector<const MediumAnchor*>>> groups;
        std::vector<const std::pair<const std::pair<std::vector<Code>, std::size_t>, std::vector<u32>>*> key_of(runs.size());
        for (const auto& kv : an.runs.by_root_tail)
            for (u32 r : kv.second) key_of[r] = &kv;
        for (const auto& a : an.s3) groups[key_of[a.run]->first].first.push_back(&a);
        for (const auto& a : an.t3) groups[key_of[a.run]->first].second.push_back(&a);
        for (auto& [key, g] : groups) {
            std::vector<u32> as, at;
            std::vector<Span> f1, f2;
            for (const auto* a : g.first) {
                as.push_back(a->pos);
                f1.push_back(rev(Side::S, run_start(*a, true), a->pos));
                f2.push_back(fwd(Side::S, a->pos, ns));
            }
            for (const auto* a : g.second) {
                at.push_back(a->pos);
                f1.push_back(rev(Side::T, run_start(*a, false), a->pos));
                f2.push_back(fwd(Side::T, a->pos, nt));
            }
            fam3 += solve(as, at, std::move(f1), std::move(f2), Solver::Prefix, true);
        }
    }
    if (stats) {
        stats->anchors_ii = an.s2.size() + an.t2.size();
        stats->anchors_iii = an.s3.size() + an.t3.size();
        stats->family_ii = fam2;
        stats->family_iii = fam3;
    }
    return w.best;
}

// ---- dispatcher ----

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Auto: return "auto";
        case Regime::Short: return "short";
        case Regime::Medium: return "medium";
        case Regime::Long: return "long";
    }
    return "?";
}

LcsParams lcs_params(std::size_t n, std::size_t sigma) {
    LcsParams p;
    double lg = n > 1 ? std::log2(static_cast<double>(n)) : 0.0;
    double log_sigma_n = lg / std::log2(static_cast<double>(std::max<std::size_t>(sigma, 2)));
    p.tau = std::max<std::size_t>(3, static_cast<std::size_t>(std::floor(log_sigma_n / 9.0)));
    std::size_t m = static_cast<std::size_t>(std::ceil(log_sigma_n / 3.0));
    p.m = std::max<std::size_t>({m, 3 * p.tau, 1});
    p.delta_cap = std::min<std::size_t>(std::max<std::size_t>(n, 1), static_cast<std::size_t>(std::floor(std::pow(2.0, std::sqrt(lg)))));
    p.delta_cap = std::max<std::size_t>(p.delta_cap, 1);
    return p;
}

LcsReport lcs_report(std::string_view s, std::string_view t, Regime force) {
    LcsReport rep;
    auto [ps, pt] = remap_and_pack_pair(s, t);
    std::size_t n = std::max(s.size(), t.size());
    rep.params = lcs_params(n, ps.alphabet().size());
    if (s.empty() || t.empty()) return rep;
    const LcsParams& P = rep.params;
    if (force == Regime::Short) {
        rep.result = lcs_short(ps, pt, P.m);
        rep.regime = Regime::Short;
        return rep;
    }
    if (force == Regime::Medium || force == Regime::Long) {
        FragmentIndex idx(ps, pt);
        rep.regime = force;
        if (force == Regime::Medium) rep.result = lcs_medium(idx, P.tau, P.delta_cap, &rep.medium);
        else rep.result = lcs_long(idx, P.delta_cap);
        return rep;
    }
    rep.result = lcs_short(ps, pt, P.m);
    rep.regime = Regime::Short;
    if (rep.result.length < P.m) return rep;
    FragmentIndex idx(ps, pt);
    LcsResult med = lcs_medium(idx, P.tau, P.delta_cap, &rep.medium);
    if (med.length > rep.result.length) {
        rep.result = med;
        rep.regime = Regime::Medium;
    }
    if (rep.result.length >= P.delta_cap) {
        LcsResult lg = lcs_long(idx, P.delta_cap);
        if (lg.length > rep.result.length) {
            rep.result = lg;
            rep.regime = Regime::Long;
        }
    }
    return rep;
}

LcsResult lcs(std::string_view s, std::string_view t) { return lcs_report(s, t).result; }

}  // namespace plcs
