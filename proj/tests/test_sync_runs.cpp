#include <doctest.h>

#include <algorithm>

#include "packed_lcs/oracles.hpp"
#include "packed_lcs/sync_runs.hpp"
#include "test_util.hpp"

using namespace plcs;

namespace {
std::vector<Code> codes(const std::string& s) {
    std::vector<Code> c;
    for (char ch : s) c.push_back(static_cast<Code>(ch - 'a'));
    return c;
}
std::string repeat(const std::string& s, std::size_t times) {
    std::string o;
    for (std::size_t i = 0; i < times; ++i) o += s;
    return o;
}
}  // namespace

TEST_CASE("sync set forced cases") {
    auto a = build_sync_set(codes(std::string(20, 'a')), 3);
    CHECK(a.positions.empty());
    CHECK(succ_sync(a, 5) == 20 - 6 + 1);

    auto t = codes(repeat("abc", 10));
    auto b = build_sync_set(t, 3);
    for (std::size_t i = 0; i + 3 * 3 - 1 <= t.size(); ++i)
        CHECK(std::any_of(b.positions.begin(), b.positions.end(), [&](u32 x) { return x >= i && x < i + 3; }));
    CHECK(check_sync_set(b.positions, t, 3).ok);
    CHECK_THROWS_AS(build_sync_set(t, 16), std::invalid_argument);
    CHECK_THROWS_AS(build_sync_set(t, 0), std::invalid_argument);
}

TEST_CASE("checker rejects a corrupted set") {
    auto t = codes(std::string(20, 'a'));
    CHECK(check_sync_set({}, t, 3).ok);
    auto r = check_sync_set({0}, t, 3);
    CHECK_FALSE(r.ok);
    CHECK(r.message.find("condition 2") != std::string::npos);
}

TEST_CASE("random sync sets satisfy both conditions") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 40; ++it) {
        std::size_t tau = testutil::uniform(rng, 3, 64);
        std::size_t n = testutil::uniform(rng, 2 * tau, 1500);
        auto s = testutil::random_string(rng, n, 2);
        if (it % 3 == 0) s.replace(n / 4, std::min<std::size_t>(n / 2, 300), repeat("ab", 150).substr(0, std::min<std::size_t>(n / 2, 300)));
        auto t = codes(s);
        auto a = build_sync_set(t, tau);
        auto rep = check_sync_set(a.positions, t, tau);
        INFO("tau=" << tau << " n=" << n << " " << rep.message);
        REQUIRE(rep.ok);
        REQUIRE(rep.density <= 8.0);
    }
}

TEST_CASE("succ_sync matches scan") {
    std::mt19937_64 rng(22);
    auto t = codes(testutil::random_string(rng, 500, 3));
    auto a = build_sync_set(t, 5);
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::size_t want = t.size() - 10 + 1;
        for (u32 x : a.positions)
            if (x >= i) { want = x; break; }
        REQUIRE(succ_sync(a, i) == want);
    }
}

TEST_CASE("periodic prefix extends to succ_sync + 2tau") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 60; ++it) {
        std::size_t tau = testutil::uniform(rng, 3, 12);
        std::string s = testutil::random_string(rng, 80, 2) + repeat(testutil::random_string(rng, testutil::uniform(rng, 1, tau / 3), 2), 40) +
                        testutil::random_string(rng, 80, 2);
        auto t = codes(s);
        auto a = build_sync_set(t, tau);
        for (std::size_t i = 0; i + 3 * tau - 1 <= t.size(); ++i) {
            std::size_t p = naive_period(t, i, i + 3 * tau - 1);
            if (p > tau / 3) continue;
            std::size_t e = i + p;
            while (e < t.size() && t[e] == t[e - p]) ++e;
            REQUIRE(succ_sync(a, i) + 2 * tau - 1 == e);
        }
    }
}

TEST_CASE("planted aperiodic duplicates share sync offsets") {
    std::mt19937_64 rng(24);
    for (int it = 0; it < 60; ++it) {
        std::size_t tau = testutil::uniform(rng, 3, 10);
        std::string u = testutil::random_string(rng, testutil::uniform(rng, 3 * tau - 1, 6 * tau), 3);
        auto uc = codes(u);
        if (naive_period(uc, 0, uc.size() < 3 * tau - 1 ? uc.size() : 3 * tau - 1) <= tau / 3) continue;
        std::string s = testutil::random_string(rng, 30, 3) + u + testutil::random_string(rng, 30, 3) + u + testutil::random_string(rng, 30, 3);
        std::size_t i = 30, j = 60 + u.size();
        auto a = build_sync_set(codes(s), tau);
        std::size_t di = succ_sync(a, i) - i, dj = succ_sync(a, j) - j;
        REQUIRE(di == dj);
        REQUIRE(di <= u.size() - 2 * tau);
    }
}

TEST_CASE("tau runs examples") {
    auto g = find_tau_runs(codes(std::string(20, 'a')), 6);
    REQUIRE(g.runs.size() == 1);
    CHECK(g.runs[0].start == 0);
    CHECK(g.runs[0].end == 20);
    CHECK(g.runs[0].period == 1);
    CHECK(g.runs[0].tail() == 0);

    auto h = find_tau_runs(codes(repeat("ab", 10)), 6);
    REQUIRE(h.runs.size() == 1);
    CHECK(h.runs[0].period == 2);
    CHECK(h.runs[0].lyndon_start == 0);
    CHECK(h.runs[0].second_lyndon_start() == 2);

    auto r = find_tau_runs(codes("b" + repeat("ba", 10)), 6);
    REQUIRE(r.runs.size() == 1);
    CHECK(r.runs[0].lyndon_start == 2);  // root "ab"
}

TEST_CASE("least rotation") {
    CHECK(least_rotation(codes("bca")) == 2);
    CHECK(least_rotation(codes("abab")) == 0);
    std::mt19937_64 rng(25);
    for (int it = 0; it < 300; ++it) {
        auto s = codes(testutil::random_string(rng, testutil::uniform(rng, 1, 12), 3));
        std::size_t k = least_rotation(s);
        std::vector<Code> best;
        for (std::size_t r = 0; r < s.size(); ++r) {
            std::vector<Code> rot(s.begin() + r, s.end());
            rot.insert(rot.end(), s.begin(), s.begin() + r);
            if (best.empty() || rot < best) best = rot;
        }
        std::vector<Code> got(s.begin() + k, s.end());
        got.insert(got.end(), s.begin(), s.begin() + k);
        REQUIRE(got == best);
    }
}

TEST_CASE("tau runs equal naive enumeration") {
    std::mt19937_64 rng(26);
    for (int it = 0; it < 300; ++it) {
        std::size_t tau = testutil::uniform(rng, 3, 12);
        std::string s;
        std::size_t target = testutil::uniform(rng, 10, 2000);
        while (s.size() < target) {
            if (testutil::uniform(rng, 0, 2) == 0)
                s += repeat(testutil::random_string(rng, testutil::uniform(rng, 1, 4), 2), testutil::uniform(rng, 2, 30));
            else
                s += testutil::random_string(rng, testutil::uniform(rng, 1, 40), 2);
        }
        auto t = codes(s);
        auto g = find_tau_runs(t, tau);
        auto want = naive_tau_runs(t, tau);
        std::vector<NaiveRun> got;
        for (auto& r : g.runs) got.push_back({r.start, r.end, r.period});
        REQUIRE(got == want);
        for (std::size_t a = 0; a < g.runs.size(); ++a) {
            const auto& r = g.runs[a];
            // Lyndon root really is the least rotation and sits in the first period
            REQUIRE(r.lyndon_start < r.start + r.period);
            for (std::size_t b = a + 1; b < g.runs.size(); ++b) {
                const auto& q = g.runs[b];
                if (q.start < r.end) REQUIRE(r.end - q.start <= 2 * tau / 3);
            }
            // weak periodicity lemma on the run
            for (std::size_t p2 = r.period + 1; p2 <= r.length() - r.period; ++p2) {
                if (naive_period(t, r.start, r.end) != r.period) break;
                bool is_period = true;
                for (std::size_t x = r.start; x + p2 < r.end && is_period; ++x) is_period = t[x] == t[x + p2];
                if (is_period) REQUIRE(p2 % r.period == 0);
            }
        }
    }
}

TEST_CASE("misperiods") {
    BidirectionalLce x(codes("aaabaaa"));
    auto m = misperiods(x, 1, 2, 1);
    CHECK(m.left.empty());
    REQUIRE(m.right.size() == 1);
    CHECK(m.right[0] == 3);

    BidirectionalLce per(codes(repeat("abc", 8)));
    auto e = misperiods(per, 6, 9, 3);
    CHECK(e.left.empty());
    CHECK(e.right.empty());
    CHECK_THROWS_AS(misperiods(per, 3, 3, 1), std::invalid_argument);

    std::mt19937_64 rng(27);
    for (int it = 0; it < 1000; ++it) {
        std::string s = testutil::random_string(rng, testutil::uniform(rng, 2, 20), 2);
        s = repeat(s.substr(0, testutil::uniform(rng, 1, 3)), testutil::uniform(rng, 1, 15)) + s;
        if (it % 2) std::reverse(s.begin(), s.end());
        auto c = codes(s);
        BidirectionalLce l(c);
        std::size_t i = testutil::uniform(rng, 0, c.size() - 1), j = testutil::uniform(rng, i + 1, c.size());
        std::size_t k = testutil::uniform(rng, 0, 5);
        REQUIRE(right_misperiods(l, i, j, k) == naive_right_misperiods(c, i, j, k));
        REQUIRE(left_misperiods(l, i, j, k) == naive_left_misperiods(c, i, j, k));
    }
}

TEST_CASE("two smallest congruent positions") {
    CHECK(two_smallest_congruent(5, 1, 3, 100) == std::vector<std::size_t>{7, 10});
    CHECK(two_smallest_congruent(0, 4, 3, 100) == std::vector<std::size_t>{1, 4});
    CHECK(two_smallest_congruent(98, 0, 2, 100) == std::vector<std::size_t>{98});
}
