#include <doctest.h>

#include <random>

#include "packed_lcs/lcs.hpp"
#include "packed_lcs/oracles.hpp"
#include "test_util.hpp"

using namespace plcs;

namespace {

void check_witness(const std::string& s, const std::string& t, const LcsResult& r) {
    REQUIRE(r.pos_s + r.length <= s.size());
    REQUIRE(r.pos_t + r.length <= t.size());
    CHECK(s.compare(r.pos_s, r.length, t, r.pos_t, r.length) == 0);
}

// random pair with a planted common block
std::pair<std::string, std::string> planted(std::mt19937_64& rng, std::size_t n, int sigma, std::size_t len) {
    std::string s = testutil::random_string(rng, n, sigma);
    std::string t = testutil::random_string(rng, n, sigma);
    len = std::min(len, n);
    std::string block = testutil::random_string(rng, len, sigma);
    s.replace(testutil::uniform(rng, 0, n - len), len, block);
    t.replace(testutil::uniform(rng, 0, n - len), len, block);
    return {s, t};
}

FragmentIndex make_index(const std::string& s, const std::string& t) {
    auto [ps, pt] = remap_and_pack_pair(s, t);
    return FragmentIndex(ps, pt);
}

}  // namespace

TEST_CASE("difference covers") {
    DCover c = DCover::from_residues(7, {1, 2, 4});
    CHECK(c.h(3, 5) == 6);
    CHECK(c.contains(3 + 6));
    CHECK(c.contains(5 + 6));
    CHECK(DCover::build(1).residues() == std::vector<u32>{0});
    CHECK_THROWS_AS(DCover::from_residues(7, {0, 1}), std::invalid_argument);
    for (std::size_t d = 1; d <= 300; ++d) {
        DCover dc = DCover::build(d);
        CHECK(dc.residues().size() <= 2 * static_cast<std::size_t>(std::ceil(std::sqrt(double(d)))) + 1);
        for (std::size_t i = 0; i < 2 * d; i += 3)
            for (std::size_t j = 0; j < 2 * d; j += 5) {
                std::size_t h = dc.h(i, j);
                REQUIRE(h < d);
                REQUIRE(dc.contains(i + h));
                REQUIRE(dc.contains(j + h));
            }
    }
}

TEST_CASE("hand examples") {
    CHECK(lcs("banana", "ananas").length == 5);
    CHECK(lcs("abc", "xyz").length == 0);
    std::string ab;
    for (int i = 0; i < 64; ++i) ab += "ab";
    auto r = lcs(ab, ab);
    CHECK(r.length == 128);
    CHECK(lcs("", "abc").length == 0);
    auto idx = make_index("xxbananaxx", "qbananaq");
    auto lg = lcs_long(idx, 4);
    CHECK(lg.length == 6);
    CHECK(lg.pos_s == 2);
    CHECK(lg.pos_t == 1);
}

TEST_CASE("suffix automaton baseline") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 200; ++it) {
        auto s = testutil::random_string(rng, testutil::uniform(rng, 0, 80), 3);
        auto t = testutil::random_string(rng, testutil::uniform(rng, 0, 80), 3);
        auto r = lcs_suffix_automaton(s, t);
        CHECK(r.length == lcs_dp(s, t).length);
        check_witness(s, t, r);
    }
}

TEST_CASE("each regime is exact in its range") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        int sigma = static_cast<int>(testutil::uniform(rng, 1, 4));
        std::size_t n = testutil::uniform(rng, 1, 120);
        auto [s, t] = planted(rng, n, sigma, testutil::uniform(rng, 0, n));
        std::size_t truth = lcs_dp(s, t).length;
        auto [ps, pt] = remap_and_pack_pair(s, t);
        FragmentIndex idx(ps, pt);
        std::size_t m = testutil::uniform(rng, 1, 12);
        auto sh = lcs_short(ps, pt, m);
        check_witness(s, t, sh);
        CHECK(sh.length <= truth);
        if (truth <= m) CHECK(sh.length == truth);
        std::size_t d = testutil::uniform(rng, 1, 20);
        auto lg = lcs_long(idx, d);
        check_witness(s, t, lg);
        CHECK(lg.length <= truth);
        if (truth >= d) CHECK(lg.length == truth);
        std::size_t tau = testutil::uniform(rng, 3, 6);
        std::size_t cap = testutil::uniform(rng, 3 * tau, 3 * tau + 40);
        auto md = lcs_medium(idx, tau, cap);
        check_witness(s, t, md);
        CHECK(md.length <= truth);
        if (truth >= 3 * tau && truth <= cap) {
            INFO(s, " ", t, " tau=", tau, " cap=", cap);
            CHECK(md.length == truth);
        }
    }
}

TEST_CASE("dispatcher matches the DP oracle") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 300; ++it) {
        int sigma = static_cast<int>(testutil::uniform(rng, 1, 26));
        std::size_t n = testutil::uniform(rng, 0, 400);
        auto [s, t] = planted(rng, n, sigma, testutil::uniform(rng, 0, n));
        auto r = lcs(s, t);
        CHECK(r.length == lcs_dp(s, t).length);
        check_witness(s, t, r);
        for (Regime g : {Regime::Short, Regime::Medium, Regime::Long}) {
            auto f = lcs_report(s, t, g);
            CHECK(f.result.length <= r.length);
            check_witness(s, t, f.result);
        }
    }
}

TEST_CASE("parameters") {
    auto p = lcs_params(1u << 22, 2);
    CHECK(p.tau == 3);
    CHECK(p.m >= 9);
    CHECK(p.delta_cap == 25);
    CHECK(lcs_params(0, 0).delta_cap >= 1);
}
