#include <doctest.h>

#include <cmath>

#include "packed_lcs/config.hpp"
#include "packed_lcs/oracles.hpp"
#include "packed_lcs/wavelet_lcp.hpp"
#include "test_util.hpp"

using namespace plcs;
using SP = std::vector<std::pair<std::string, std::string>>;

namespace {
std::size_t lcp(const std::string& a, const std::string& b) {
    std::size_t l = 0;
    while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
    return l;
}

SP random_family(std::mt19937_64& rng, std::size_t n, std::size_t alpha, std::size_t beta, int sigma) {
    SP f(n);
    for (auto& e : f) {
        e.first = testutil::random_string(rng, testutil::uniform(rng, 0, alpha), sigma);
        e.second = testutil::random_string(rng, testutil::uniform(rng, 0, beta), sigma);
    }
    return f;
}

struct CapGuard {
    std::size_t old = table_bits_cap();
    ~CapGuard() { set_table_bits_cap(old); }
};
}  // namespace

TEST_CASE("bit vector rank and packed ints") {
    std::mt19937_64 rng(41);
    BitVector b;
    std::vector<bool> ref;
    for (int i = 0; i < 3000; ++i) {
        bool x = testutil::uniform(rng, 0, 2) == 0;
        b.push_back(x);
        ref.push_back(x);
    }
    b.build_rank();
    std::size_t ones = 0;
    for (std::size_t i = 0; i <= ref.size(); ++i) {
        REQUIRE(b.rank1(i) == ones);
        if (i < ref.size()) ones += ref[i];
    }
    for (int q = 0; q < 500; ++q) {
        std::size_t pos = testutil::uniform(rng, 0, 2900), len = testutil::uniform(rng, 1, 64);
        std::uint64_t want = 0;
        for (std::size_t j = 0; j < len && pos + j < ref.size(); ++j) want |= std::uint64_t(ref[pos + j]) << j;
        REQUIRE(b.get_bits(pos, len) == want);
    }
    PackedIntVector p(5, 4);
    for (int i = 0; i < 30; ++i) p.push_back(i);
    for (int i = 0; i < 30; ++i) CHECK(p.get(i) == static_cast<std::uint64_t>(i));
    PackedIntVector q(3, 5);
    q.push_back(1);
    q.push_word(0b010'011'100, 3);
    q.push_word(0b111'110'101, 3);
    std::vector<std::uint64_t> want{1, 4, 3, 2, 5, 6, 7};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(q.get(i) == want[i]);
}

TEST_CASE("skeleton shape") {
    std::vector<u32> loci;
    auto bin = trie_from_strings({"aa", "ab", "ba", "bb"}, loci);
    auto sk = binarize_skeleton(*bin);
    CHECK(sk.leaf_count() == 4);
    CHECK(sk.nodes.size() == 7);  // binary trie already: same shape
    auto one = trie_from_strings({"abc"}, loci);
    auto s1 = binarize_skeleton(*one);
    CHECK(s1.nodes.size() == 1);
    CHECK(s1.height() == 0);

    std::mt19937_64 rng(42);
    for (int it = 0; it < 200; ++it) {
        std::size_t alpha = testutil::uniform(rng, 1, 16);
        std::vector<std::string> m(testutil::uniform(rng, 1, 200));
        for (auto& s : m) s = testutil::random_string(rng, testutil::uniform(rng, 0, alpha), static_cast<int>(testutil::uniform(rng, 2, 26)));
        std::sort(m.begin(), m.end());  // trie reps index the sorted order
        auto t = trie_from_strings(m, loci);
        auto sk2 = binarize_skeleton(*t);
        std::size_t distinct = t->terminal_count();
        REQUIRE(sk2.leaf_count() == distinct);
        std::size_t lg = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(distinct))));
        REQUIRE(sk2.height() <= 2 * (alpha + lg) + 2);
        // prefix consistency: val(v) = LCP of any two leaves split at v
        for (const auto& nd : sk2.nodes) {
            if (nd.is_leaf()) continue;
            auto leaf_str = [&](u32 leaf_id) {
                u32 tn = sk2.nodes[sk2.leaf_node[leaf_id]].trie_node;
                return m[t->node(tn).rep] .substr(0, t->depth(tn));
            };
            for (int s = 0; s < 3; ++s) {
                u32 a = static_cast<u32>(testutil::uniform(rng, nd.leaf_lo, sk2.nodes[nd.left].leaf_hi - 1));
                u32 b = static_cast<u32>(testutil::uniform(rng, sk2.nodes[nd.right].leaf_lo, nd.leaf_hi - 1));
                REQUIRE(lcp(leaf_str(a), leaf_str(b)) == nd.depth);
            }
        }
    }
}

TEST_CASE("wavelet reconstruction") {
    std::vector<u32> loci;
    std::vector<std::string> m;
    for (int c = 0; c < 16; ++c) m.push_back(std::string(1, static_cast<char>('a' + c)));
    auto t = trie_from_strings(m, loci);
    auto sk = binarize_skeleton(*t);
    std::vector<u32> seq;
    for (u32 i = 0; i < 16; ++i) seq.push_back((i * 7) % 16);
    auto wt = build_wavelet(seq, sk);
    CHECK(reconstruct_sequence(wt, sk) == seq);
    CHECK(wt.length[sk.root] == 16);
    // zeros/ones bookkeeping
    for (std::size_t v = 0; v < sk.nodes.size(); ++v) {
        if (sk.nodes[v].is_leaf() || wt.length[v] == 0) continue;
        CHECK(wt.length[sk.nodes[v].left] == wt.bits[v].rank0(wt.bits[v].size()));
        CHECK(wt.length[sk.nodes[v].right] == wt.bits[v].ones());
    }
    std::vector<u32> constant(10, 3);
    auto wc = build_wavelet(constant, sk);
    for (std::size_t v = 0; v < sk.nodes.size(); ++v)
        if (!sk.nodes[v].is_leaf() && wc.length[v]) {
            auto ones = wc.bits[v].ones();
            CHECK((ones == 0 || ones == wc.length[v]));
        }
    CHECK_THROWS_AS(build_wavelet({99}, sk), std::invalid_argument);

    std::mt19937_64 rng(43);
    for (int it = 0; it < 300; ++it) {
        std::vector<std::string> mm(testutil::uniform(rng, 1, 40));
        for (auto& s : mm) s = testutil::random_string(rng, testutil::uniform(rng, 0, 6), 3);
        auto tt = trie_from_strings(mm, loci);
        auto s2 = binarize_skeleton(*tt);
        std::vector<u32> sq(testutil::uniform(rng, 0, 300));
        for (auto& x : sq) x = static_cast<u32>(testutil::uniform(rng, 0, s2.leaf_count() - 1));
        REQUIRE(reconstruct_sequence(build_wavelet(sq, s2), s2) == sq);
    }
}

TEST_CASE("lcps propagation") {
    CapGuard g;
    for (std::size_t cap : {0, 12, 22}) {
        set_table_bits_cap(cap);
        auto l = make_lcps_list({0, 3, 1, 2}, {false, true, false, true}, lcps_width(3));
        BitVector zeros(4);
        zeros.build_rank();
        auto same = propagate_lcps(l, zeros, false);
        for (std::size_t i = 0; i < 4; ++i) CHECK(same.values.get(i) == l.values.get(i));
        BitVector alt(4);
        alt.set(1, true);
        alt.set(3, true);
        auto left = propagate_lcps(l, alt, false);
        REQUIRE(left.size() == 2);
        CHECK(left.values.get(0) == 0);
        CHECK(left.values.get(1) == 1);

        std::mt19937_64 rng(44 + cap);
        for (int it = 0; it < 1000; ++it) {
            std::size_t beta = testutil::uniform(rng, 0, 40);
            std::vector<std::string> v(testutil::uniform(rng, 1, 120));
            for (auto& s : v) s = testutil::random_string(rng, testutil::uniform(rng, 0, beta), 2);
            std::sort(v.begin(), v.end());
            std::vector<u32> vals(v.size(), 0);
            std::vector<bool> org(v.size());
            for (std::size_t i = 1; i < v.size(); ++i) vals[i] = static_cast<u32>(lcp(v[i - 1], v[i]));
            for (std::size_t i = 0; i < v.size(); ++i) org[i] = testutil::uniform(rng, 0, 1);
            auto list = make_lcps_list(vals, org, lcps_width(beta));
            BitVector b(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) b.set(i, testutil::uniform(rng, 0, 1));
            b.build_rank();
            for (bool side : {false, true}) {
                auto child = propagate_lcps(list, b, side);
                std::vector<std::string> sub;
                std::vector<bool> so;
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (b.get(i) == side) {
                        sub.push_back(v[i]);
                        so.push_back(org[i]);
                    }
                REQUIRE(child.size() == sub.size());
                long cross = -1;
                for (std::size_t i = 0; i < sub.size(); ++i) {
                    REQUIRE(child.values.get(i) == (i ? lcp(sub[i - 1], sub[i]) : 0));
                    REQUIRE(child.origin.get(i) == so[i]);
                    if (i && so[i] != so[i - 1]) cross = std::max(cross, static_cast<long>(lcp(sub[i - 1], sub[i])));
                }
                REQUIRE(cross_origin_max(child) == cross);
            }
        }
    }
}

TEST_CASE("solve_alpha_beta examples and oracle") {
    CapGuard g;
    auto a = instance_from_strings({{"a", "bb"}}, {{"a", "bc"}});
    CHECK(solve_alpha_beta(a, 1, 2).value == 2);
    auto b = instance_from_strings({{"ab", "xy"}, {"ac", "xz"}}, {{"ad", "xy"}});
    CHECK(solve_alpha_beta(b, 2, 2).value == 3);
    auto s = instance_from_strings({{"ab", "cd"}}, {{"ab", "cd"}});
    CHECK(solve_alpha_beta(s, 2, 2).value == 4);
    CHECK_THROWS_AS(solve_alpha_beta(b, 1, 2), std::invalid_argument);

    std::mt19937_64 rng(45);
    for (std::size_t cap : {0, 14, 22}) {
        set_table_bits_cap(cap);
        for (int it = 0; it < 150; ++it) {
            std::size_t alpha = testutil::uniform(rng, 0, 64), beta = testutil::uniform(rng, 0, 64);
            int sigma = static_cast<int>(testutil::uniform(rng, 1, 4));
            auto p = random_family(rng, testutil::uniform(rng, 1, 100), alpha, beta, sigma);
            auto q = random_family(rng, testutil::uniform(rng, 1, 100), alpha, beta, sigma);
            auto inst = instance_from_strings(p, q);
            auto r = solve_alpha_beta(inst, alpha, beta);
            REQUIRE(r.value == brute_max_pair_lcp(p, q, 0, 0));
            REQUIRE(r.value == max_pair_lcp_general(inst).value);
            REQUIRE(pair_value(inst, r.p_index, r.q_index) == r.value);
        }
    }
}
