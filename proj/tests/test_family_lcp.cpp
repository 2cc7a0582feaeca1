#include <doctest.h>

#include <cmath>

#include "packed_lcs/family_lcp.hpp"
#include "packed_lcs/oracles.hpp"
#include "test_util.hpp"

using namespace plcs;
using SP = std::vector<std::pair<std::string, std::string>>;

namespace {
void check_witness(const TwoFamiliesInstance& inst, const PairLcpResult& r) {
    REQUIRE(r.has_witness);
    REQUIRE(pair_value(inst, r.p_index, r.q_index) == r.value);
}
}  // namespace

TEST_CASE("general solver examples") {
    auto a = instance_from_strings({{"a", "bb"}}, {{"a", "bc"}});
    CHECK(max_pair_lcp_general(a).value == 2);

    auto b = instance_from_strings({{"ab", "xy"}, {"ac", "xz"}}, {{"ad", "xy"}});
    auto rb = max_pair_lcp_general(b);
    CHECK(rb.value == 3);
    CHECK(rb.p_index == 0);
    CHECK(rb.q_index == 0);

    auto e = instance_from_strings({}, {{"a", "b"}});
    auto re = max_pair_lcp_general(e);
    CHECK(re.value == 0);
    CHECK_FALSE(re.has_witness);
}

TEST_CASE("prefix solver examples") {
    auto a = instance_from_strings({{"aa", "bc"}}, {{"aaa", "bd"}});
    CHECK(max_pair_lcp_prefix(a).value == 3);
    auto s = instance_from_strings({{"ab", "cd"}}, {{"ab", "cd"}});
    CHECK(max_pair_lcp_prefix(s).value == 4);
    auto bad = instance_from_strings({{"ab", "c"}}, {{"b", "c"}});
    CHECK_THROWS_AS(max_pair_lcp_prefix(bad), std::invalid_argument);
}

TEST_CASE("general solver equals brute force") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 300; ++it) {
        int sigma = static_cast<int>(testutil::uniform(rng, 1, 3));
        SP p(testutil::uniform(rng, 1, 60)), q(testutil::uniform(rng, 1, 60));
        for (auto* f : {&p, &q})
            for (auto& e : *f) {
                e.first = testutil::random_string(rng, testutil::uniform(rng, 0, 12), sigma);
                e.second = testutil::random_string(rng, testutil::uniform(rng, 0, 12), sigma);
            }
        auto inst = instance_from_strings(p, q);
        SolverStats st;
        auto r = max_pair_lcp_general(inst, &st);
        REQUIRE(r.value == brute_max_pair_lcp(p, q, 0, 0));
        check_witness(inst, r);
        std::size_t n = p.size() + q.size();
        std::size_t lg = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
        REQUIRE(st.merged_elements <= n * std::max<std::size_t>(1, lg) * std::max<std::size_t>(1, lg));
    }
}

TEST_CASE("prefix solver equals brute force and general solver") {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 300; ++it) {
        int sigma = static_cast<int>(testutil::uniform(rng, 1, 3));
        std::string y = testutil::random_string(rng, testutil::uniform(rng, 0, 20), sigma);
        SP p(testutil::uniform(rng, 1, 50)), q(testutil::uniform(rng, 1, 50));
        for (auto* f : {&p, &q})
            for (auto& e : *f) {
                e.first = y.substr(0, testutil::uniform(rng, 0, y.size()));
                e.second = testutil::random_string(rng, testutil::uniform(rng, 0, 10), sigma);
            }
        auto inst = instance_from_strings(p, q);
        auto r = max_pair_lcp_prefix(inst);
        REQUIRE(r.value == brute_max_pair_lcp(p, q, 0, 0));
        REQUIRE(r.value == max_pair_lcp_general(inst).value);
        check_witness(inst, r);
    }
}
