#include <doctest.h>

#include <random>

#include "packed_lcs/klcs.hpp"
#include "packed_lcs/lcs.hpp"
#include "packed_lcs/verify.hpp"

using namespace plcs;

namespace {

VerifyConfig small(double scale, std::string inject = {}) {
    VerifyConfig c;
    c.seed = 7;
    c.scale = scale;
    c.inject = std::move(inject);
    return c;
}

}  // namespace

TEST_CASE("every suite passes on a small scale") {
    for (const char* suite : {"lcs", "sync", "families", "wavelet"}) {
        for (const CheckResult& r : run_suite(suite, small(0.03))) {
            INFO(suite, " ", r.id, " ", r.failure);
            CHECK(r.pass);
            CHECK(r.cases > 0);
        }
    }
    VerifyConfig k = small(0.01);
    k.max_n = 64;
    for (const CheckResult& r : run_suite("klcs", k)) {
        INFO(r.id, " ", r.failure);
        CHECK(r.pass);
    }
}

TEST_CASE("injected faults are caught with a shrunk counterexample") {
    const std::pair<const char*, const char*> cases[] = {{"lcs-length", "lcs"},       {"lcs-witness", "lcs"},
                                                         {"sync-drop", "sync"},        {"family-value", "families"},
                                                         {"wavelet-value", "wavelet"}, {"klcs-length", "klcs"}};
    for (auto [fault, suite] : cases) {
        VerifyConfig c = small(0.02, fault);
        c.max_n = std::string(suite) == "klcs" ? 40 : 0;
        bool caught = false;
        for (const CheckResult& r : run_suite(suite, c))
            if (!r.pass) {
                caught = true;
                CHECK(!r.failure.empty());
            }
        INFO(fault);
        CHECK(caught);
    }
    CHECK_THROWS_AS(run_suite("lcs", small(0.01, "no-such-fault")), std::invalid_argument);
    CHECK_THROWS_AS(run_suite("nope", small(0.01)), std::invalid_argument);
}

TEST_CASE("suites are reproducible under a fixed seed") {
    auto a = check_sync_validity(small(0.05));
    auto b = check_sync_validity(small(0.05));
    CHECK(a.metric("density_max") == b.metric("density_max"));
    auto c = check_lcs_equivalence(small(0.02));
    auto d = check_lcs_equivalence(small(0.02));
    CHECK(c.metric("planted_long") == d.metric("planted_long"));
}

TEST_CASE("paper value criterion") {
    auto r = check_paper_value({});
    CHECK(r.pass);
    CHECK(r.metric("lcp_k") == 6);
}

TEST_CASE("generators") {
    std::mt19937_64 rng(3);
    CHECK(parse_generator("planted-klcs") == Generator::PlantedKlcs);
    CHECK_FALSE(parse_generator("zipf").has_value());
    for (int it = 0; it < 20; ++it) {
        GeneratedPair g = generate(Generator::PlantedLcs, 600, 4, rng);
        CHECK(g.planted == 75);
        CHECK(lcs(g.s, g.t).length == g.planted);
    }
    GeneratedPair p = generate(Generator::Periodic, 400, 3, rng);
    CHECK(p.s.size() == 400);
    CHECK(lcs(p.s, p.t).length >= 20);  // long shared periodic stretches
    GeneratedPair k = generate(Generator::PlantedKlcs, 400, 4, rng, 2);
    CHECK(k.planted == 50);
    CHECK(klcs(k.s, k.t, 2).length >= k.planted);
    CHECK_THROWS_AS(generate(Generator::Random, 10, 30, rng), std::invalid_argument);
}
