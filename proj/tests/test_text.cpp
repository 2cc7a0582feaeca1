#include <doctest.h>

#include "packed_lcs/text.hpp"
#include "test_util.hpp"

using namespace plcs;

TEST_CASE("remap and pack small alphabets") {
    auto p = remap_and_pack("ACGT");
    CHECK(p.alphabet().size() == 4);
    CHECK(p.bits_per_symbol() == 2);
    CHECK(p.unpack() == std::vector<Code>{0, 1, 2, 3});

    auto a = remap_and_pack("aaaa");
    CHECK(a.alphabet().size() == 1);
    CHECK(a.bits_per_symbol() == 1);
    CHECK(a.unpack() == std::vector<Code>{0, 0, 0, 0});

    auto b = remap_and_pack("banana");
    CHECK(b.alphabet().size() == 3);
    CHECK(b.to_bytes() == "banana");
}

TEST_CASE("empty input and bits override") {
    auto e = remap_and_pack("");
    CHECK(e.size() == 0);
    CHECK(e.bits_per_symbol() == 1);
    CHECK_THROWS_AS(remap_and_pack("abcde", 2u), std::invalid_argument);
    auto w = remap_and_pack("abcde", 7u);
    CHECK(w.bits_per_symbol() == 7);
    CHECK(w.to_bytes() == "abcde");
}

TEST_CASE("get") {
    auto p = remap_and_pack("abc");
    CHECK(p.get(1) == 1);
    CHECK(remap_and_pack("aaaa").get(3) == 0);
    CHECK_THROWS_AS(p.get(3), std::out_of_range);
    std::mt19937_64 rng(1);
    for (int it = 0; it < 100; ++it) {
        auto s = testutil::random_string(rng, testutil::uniform(rng, 1, 300), static_cast<int>(testutil::uniform(rng, 1, 26)));
        auto t = remap_and_pack(s);
        for (std::size_t i = 0; i < s.size(); ++i)
            REQUIRE(t.alphabet().decode(t.get(i)) == static_cast<unsigned char>(s[i]));
    }
}

TEST_CASE("read_block") {
    auto p = remap_and_pack("abab");
    CHECK(p.read_block(0, 2) == p.read_block(2, 2));
    auto q = remap_and_pack(std::string(100, 'x') + "yz");
    CHECK_THROWS_AS(q.read_block(0, 65), std::invalid_argument);
    CHECK_THROWS_AS(p.read_block(3, 2), std::out_of_range);

    std::mt19937_64 rng(2);
    for (int it = 0; it < 1000; ++it) {
        int sigma = static_cast<int>(testutil::uniform(rng, 1, 26));
        auto s = testutil::random_string(rng, testutil::uniform(rng, 1, 400), sigma);
        auto t = remap_and_pack(s, static_cast<unsigned>(testutil::uniform(rng, 5, 9)));
        std::size_t cap = 64 / t.bits_per_symbol();
        std::size_t i = testutil::uniform(rng, 0, s.size() - 1);
        std::size_t c = testutil::uniform(rng, 0, std::min(cap, s.size() - i));
        std::uint64_t expect = 0;
        for (std::size_t j = 0; j < c; ++j) expect = (expect << t.bits_per_symbol()) | t.get(i + j);
        REQUIRE(t.read_block(i, c) == expect);
    }
}

TEST_CASE("combined text layout") {
    auto [s, t] = remap_and_pack_pair("ab", "c");
    CombinedText ct(s, t);
    CHECK(ct.size() == 2 * 2 + 2 * 1 + 4);
    auto off = ct.offsets();
    CHECK(off[0] == 0);
    CHECK(off[1] == 3);
    CHECK(off[2] == 6);
    CHECK(off[3] == 8);
    auto rc = ct.rank_codes();
    // a b #1 b a #2 c #3 c #4 ; sentinels rank 0..3, letters shifted by 4
    CHECK(rc == std::vector<Code>{4, 5, 0, 5, 4, 1, 6, 2, 6, 3});

    auto [s2, t2] = remap_and_pack_pair("abc", "");
    CombinedText c2(s2, t2);
    auto r = c2.extract({Side::S, 0, 3, true});
    CHECK(r == std::vector<Code>{2, 1, 0});
}

TEST_CASE("fragment translation matches naive extraction") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        auto a = testutil::random_string(rng, testutil::uniform(rng, 0, 50), 4);
        auto b = testutil::random_string(rng, testutil::uniform(rng, 0, 50), 4);
        auto [s, t] = remap_and_pack_pair(a, b);
        CombinedText ct(s, t);
        for (int q = 0; q < 10; ++q) {
            Side side = q % 2 ? Side::T : Side::S;
            const std::string& x = side == Side::S ? a : b;
            std::size_t bg = testutil::uniform(rng, 0, x.size());
            std::size_t en = testutil::uniform(rng, bg, x.size());
            bool rev = testutil::uniform(rng, 0, 1);
            std::string want = x.substr(bg, en - bg);
            if (rev) want = testutil::reversed(want);
            auto got = ct.extract({side, bg, en, rev});
            std::string gs;
            for (Code c : got) gs.push_back(static_cast<char>(s.alphabet().decode(c)));
            REQUIRE(gs == want);
        }
    }
}

TEST_CASE("fasta parsing") {
    CHECK(parse_fasta(">seq1\nACGT\nAC\r\n>seq2\nGG\n") == "ACGTACGG");
}
