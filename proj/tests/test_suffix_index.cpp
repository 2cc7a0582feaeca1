#include <doctest.h>

#include <algorithm>

#include "packed_lcs/suffix_index.hpp"
#include "test_util.hpp"

using namespace plcs;

namespace {
std::vector<u32> codes_of(const std::string& s) { return {s.begin(), s.end()}; }

std::size_t naive_lce(const std::string& s, std::size_t i, std::size_t j) {
    std::size_t l = 0;
    while (i + l < s.size() && j + l < s.size() && s[i + l] == s[j + l]) ++l;
    return l;
}
}  // namespace

TEST_CASE("suffix array against sorting") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        auto s = testutil::random_string(rng, testutil::uniform(rng, 1, 300), static_cast<int>(testutil::uniform(rng, 1, 5)));
        auto sa = build_suffix_array(codes_of(s), 256);
        std::vector<u32> ref(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) ref[i] = static_cast<u32>(i);
        std::sort(ref.begin(), ref.end(), [&](u32 a, u32 b) { return s.compare(a, std::string::npos, s, b, std::string::npos) < 0; });
        REQUIRE(sa == ref);
    }
}

TEST_CASE("lce and lcp arrays") {
    std::string s = "abaab";
    SuffixIndex idx(codes_of(s), 256);
    CHECK(idx.lce(0, 3) == 2);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(idx.lce(i, i) == s.size() - i);

    std::string b = "banana";
    SuffixIndex bi(codes_of(b), 256);
    for (std::size_t r = 1; r < b.size(); ++r) CHECK(bi.lcp()[r] == naive_lce(b, bi.sa()[r - 1], bi.sa()[r]));

    std::mt19937_64 rng(12);
    for (auto mode : {Rmq::Mode::Sparse, Rmq::Mode::Block}) {
        for (int it = 0; it < 50; ++it) {
            auto x = testutil::random_string(rng, testutil::uniform(rng, 1, 700), 2);
            SuffixIndex xi(codes_of(x), 256, mode);
            for (int q = 0; q < 200; ++q) {
                std::size_t i = testutil::uniform(rng, 0, x.size() - 1), j = testutil::uniform(rng, 0, x.size() - 1);
                REQUIRE(xi.lce(i, j) == naive_lce(x, i, j));
            }
        }
    }
}

TEST_CASE("rmq modes agree") {
    std::mt19937_64 rng(13);
    std::vector<u32> v(5000);
    for (auto& x : v) x = static_cast<u32>(testutil::uniform(rng, 0, 20));
    Rmq a(v, Rmq::Mode::Sparse), b(v, Rmq::Mode::Block);
    for (int q = 0; q < 5000; ++q) {
        std::size_t l = testutil::uniform(rng, 0, v.size() - 1), r = testutil::uniform(rng, l, v.size() - 1);
        std::size_t want = std::min_element(v.begin() + l, v.begin() + r + 1) - v.begin();
        REQUIRE(a.argmin(l, r) == want);
        REQUIRE(b.argmin(l, r) == want);
    }
}

TEST_CASE("fragment lce and comparison") {
    {
        auto [s, t] = remap_and_pack_pair("banana", "ananas");
        FragmentIndex fi(s, t);
        Fragment a{Side::S, 1, 6, false}, b{Side::T, 0, 4, false};
        CHECK(fi.lce_fragments(a, b) == 4);
        CHECK(fi.lce_fragments(a, a) == 5);
        CHECK(fi.lce_fragments(b, a) == 4);
    }
    {
        auto [s, t] = remap_and_pack_pair("abc", "ab");
        FragmentIndex fi(s, t);
        CHECK(fi.compare_fragments({Side::T, 0, 2, false}, {Side::S, 0, 3, false}) == Order::Less);
        CHECK(fi.compare_fragments({Side::T, 0, 2, false}, {Side::S, 0, 2, false}) == Order::Equal);
    }
    std::mt19937_64 rng(14);
    for (int it = 0; it < 50; ++it) {
        auto a = testutil::random_string(rng, testutil::uniform(rng, 1, 80), 2);
        auto b = testutil::random_string(rng, testutil::uniform(rng, 1, 80), 2);
        auto [s, t] = remap_and_pack_pair(a, b);
        FragmentIndex fi(s, t);
        auto pick = [&](Fragment& f, std::string& str) {
            f.side = testutil::uniform(rng, 0, 1) ? Side::T : Side::S;
            const std::string& x = f.side == Side::S ? a : b;
            f.begin = testutil::uniform(rng, 0, x.size());
            f.end = testutil::uniform(rng, f.begin, x.size());
            f.reversed = testutil::uniform(rng, 0, 1);
            str = x.substr(f.begin, f.end - f.begin);
            if (f.reversed) str = testutil::reversed(str);
        };
        for (int q = 0; q < 200; ++q) {
            Fragment f, g;
            std::string fs, gs;
            pick(f, fs);
            pick(g, gs);
            std::size_t l = 0;
            while (l < fs.size() && l < gs.size() && fs[l] == gs[l]) ++l;
            REQUIRE(fi.lce_fragments(f, g) == l);
            int c = fs.compare(gs);
            Order want = c < 0 ? Order::Less : (c == 0 ? Order::Equal : Order::Greater);
            REQUIRE(fi.compare_fragments(f, g) == want);
        }
    }
}

TEST_CASE("lcp min-composition over sorted triples") {
    std::mt19937_64 rng(15);
    for (int it = 0; it < 200; ++it) {
        std::vector<std::string> v(3);
        for (auto& x : v) x = testutil::random_string(rng, testutil::uniform(rng, 0, 8), 2);
        std::sort(v.begin(), v.end());
        auto lcp = [](const std::string& x, const std::string& y) {
            std::size_t l = 0;
            while (l < x.size() && l < y.size() && x[l] == y[l]) ++l;
            return l;
        };
        REQUIRE(lcp(v[0], v[2]) == std::min(lcp(v[0], v[1]), lcp(v[1], v[2])));
    }
}

namespace {
CompactedTrie trie_of(const std::vector<std::string>& sorted) {
    std::vector<u32> lens, lcps;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        lens.push_back(static_cast<u32>(sorted[i].size()));
        if (i) {
            u32 l = 0;
            while (l < sorted[i].size() && l < sorted[i - 1].size() && sorted[i][l] == sorted[i - 1][l]) ++l;
            lcps.push_back(l);
        }
    }
    return CompactedTrie(lens, lcps, [&](std::size_t i, std::size_t p) { return static_cast<Code>(sorted[i][p]); });
}
}  // namespace

TEST_CASE("compacted trie hand example") {
    auto t = trie_of({"ab", "abc", "b"});
    CHECK(t.node_count() == 4);
    CHECK(t.terminal_count() == 3);
    u32 ab = t.locus(0), abc = t.locus(1), b = t.locus(2);
    CHECK(t.depth(ab) == 2);
    CHECK(t.node(abc).parent == ab);
    CHECK(t.node(b).parent == CompactedTrie::root());
    t.prepare_lca();
    CHECK(t.lca(abc, b) == CompactedTrie::root());
    CHECK(t.lca(abc, abc) == abc);
    CHECK(t.lca(ab, abc) == ab);

    auto single = trie_of({"xyz"});
    CHECK(single.node_count() == 2);

    auto dup = trie_of({"ab", "ab", "b"});
    CHECK(dup.terminal_count() == 2);
    CHECK(dup.locus(0) == dup.locus(1));

    CHECK_THROWS_AS(trie_of({"b", "a"}), std::invalid_argument);
    CHECK_THROWS_AS(trie_of({"abc", "ab"}), std::invalid_argument);
}

TEST_CASE("suffix trie order and lca depths") {
    std::string m = "mississippi";
    SuffixIndex idx(codes_of(m), 256);
    std::vector<std::string> sorted;
    for (u32 p : idx.sa()) sorted.push_back(m.substr(p));
    auto t = trie_of(sorted);
    t.prepare_lca();
    // preorder of loci equals the suffix array order
    std::vector<u32> seen;
    for (u32 v : t.preorder())
        for (u32 term : t.node(v).terminals) seen.push_back(idx.sa()[term]);
    CHECK(seen == idx.sa());

    std::mt19937_64 rng(16);
    auto x = testutil::random_string(rng, 400, 3);
    SuffixIndex xi(codes_of(x), 256);
    std::vector<std::string> xs;
    for (u32 p : xi.sa()) xs.push_back(x.substr(p));
    auto xt = trie_of(xs);
    xt.prepare_lca();
    CHECK(xt.node_count() <= 2 * xt.terminal_count());
    for (int q = 0; q < 1000; ++q) {
        std::size_t i = testutil::uniform(rng, 0, xs.size() - 1), j = testutil::uniform(rng, 0, xs.size() - 1);
        REQUIRE(xt.depth(xt.lca(xt.locus(i), xt.locus(j))) == naive_lce(x, xi.sa()[i], xi.sa()[j]));
    }
}
