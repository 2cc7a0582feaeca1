#include "packed_lcs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "packed_lcs/family_lcp.hpp"
#include "packed_lcs/klcs.hpp"
#include "packed_lcs/lcs.hpp"
#include "packed_lcs/oracles.hpp"
#include "packed_lcs/sync_runs.hpp"
#include "packed_lcs/wavelet_lcp.hpp"

namespace plcs {

double CheckResult::metric(std::string_view name) const {
    for (const Metric& m : metrics)
        if (m.name == name) return m.value;
    throw std::out_of_range("no metric " + std::string(name));
}

namespace {

using Clock = std::chrono::steady_clock;

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string random_string(std::mt19937_64& rng, std::size_t n, std::size_t sigma) {
    std::string s(n, 'a');
    for (auto& c : s) c = static_cast<char>('a' + uniform(rng, 0, sigma - 1));
    return s;
}

// Every case draws from its own stream, so case i is the same whatever ran before it.
std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t salt, std::uint64_t i) {
    std::seed_seq seq{seed, salt, i};
    return std::mt19937_64(seq);
}

std::size_t count_of(const VerifyConfig& cfg, std::size_t base) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(base) * cfg.scale)));
}

std::size_t limit_of(const VerifyConfig& cfg, std::size_t dflt) { return cfg.max_n ? cfg.max_n : dflt; }

std::size_t ceil_lg(std::size_t n) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))))));
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

// Greedy chunk deletion while the failure persists; bounded by `budget` re-checks.
void shrink(const std::vector<std::string*>& parts, const std::function<bool()>& fails, std::size_t budget = 400) {
    for (bool progress = true; progress && budget;) {
        progress = false;
        for (std::string* p : parts)
            for (std::size_t chunk = std::max<std::size_t>(1, p->size() / 2); budget; chunk /= 2) {
                for (std::size_t at = 0; at + chunk <= p->size() && budget;) {
                    std::string keep = *p;
                    p->erase(at, chunk);
                    --budget;
                    if (fails()) progress = true;
                    else {
                        *p = std::move(keep);
                        at += chunk;
                    }
                }
                if (chunk == 1) break;
            }
    }
}

struct Timer {
    CheckResult& r;
    Clock::time_point t0 = Clock::now();
    ~Timer() { r.seconds = std::chrono::duration<double>(Clock::now() - t0).count(); }
};

void known_fault(const VerifyConfig& cfg) {
    if (cfg.inject.empty()) return;
    const auto& f = fault_names();
    if (std::find(f.begin(), f.end(), cfg.inject) == f.end()) throw std::invalid_argument("unknown fault: " + cfg.inject);
}

// Strings packed into S of one combined text, each addressable by a span.
struct Pool {
    std::unique_ptr<FragmentIndex> idx;
    std::vector<Span> spans;

    explicit Pool(const std::vector<std::string>& strs) {
        std::string s;
        std::vector<std::size_t> off;
        for (const auto& x : strs) {
            off.push_back(s.size());
            s += x;
        }
        if (s.empty()) s = "a";
        auto [ps, pt] = remap_and_pack_pair(s, s.substr(0, 1));
        idx = std::make_unique<FragmentIndex>(ps, pt);
        for (std::size_t i = 0; i < strs.size(); ++i)
            spans.push_back({static_cast<u32>(idx->text().resolve({Side::S, off[i], off[i] + strs[i].size(), false})),
                             static_cast<u32>(strs[i].size())});
    }
    Code code(char c) const { return idx->s().alphabet().encode(static_cast<unsigned char>(c)); }
    std::string text_of(const ModifiedString& m) const {
        std::string out;
        for (Code c : materialize(*idx, m)) out += static_cast<char>(idx->s().alphabet().decode(c));
        return out;
    }
};

using Family = std::vector<StringPair>;

Family random_family(std::mt19937_64& rng, std::size_t n, std::size_t alpha, std::size_t beta, std::size_t sigma) {
    Family f(n);
    for (auto& e : f) {
        e.first = random_string(rng, uniform(rng, 0, alpha), sigma);
        e.second = random_string(rng, uniform(rng, 0, beta), sigma);
    }
    return f;
}

std::string dump_family(const Family& f) {
    std::string out = "[";
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? ", (" : "(") + quote(f[i].first) + ", " + quote(f[i].second) + ")";
    return out + "]";
}

// Drops single elements of P or Q while the failure persists.
void shrink_families(Family& p, Family& q, const std::function<bool()>& fails, std::size_t budget = 400) {
    for (bool progress = true; progress && budget;) {
        progress = false;
        for (Family* f : {&p, &q})
            for (std::size_t i = 0; i < f->size() && f->size() > 1 && budget;) {
                StringPair keep = (*f)[i];
                f->erase(f->begin() + static_cast<std::ptrdiff_t>(i));
                --budget;
                if (fails()) progress = true;
                else f->insert(f->begin() + static_cast<std::ptrdiff_t>(i++), keep);
            }
    }
}

// Plants a length-L block at random places of both strings; `k` letters of T's copy are changed.
GeneratedPair plant(std::mt19937_64& rng, std::size_t ns, std::size_t nt, std::size_t sigma, std::size_t len, std::size_t k) {
    GeneratedPair g{random_string(rng, ns, sigma), random_string(rng, nt, sigma), 0};
    len = std::min({len, ns, nt});
    if (len == 0) return g;
    std::string block = random_string(rng, len, sigma);
    std::string copy = block;
    if (sigma > 1) {
        std::vector<std::size_t> at(len);
        std::iota(at.begin(), at.end(), 0);
        std::shuffle(at.begin(), at.end(), rng);
        for (std::size_t i = 0; i < std::min(k, len); ++i)
            copy[at[i]] = static_cast<char>('a' + (copy[at[i]] - 'a' + uniform(rng, 1, sigma - 1)) % sigma);
    }
    const std::size_t ps = uniform(rng, 0, ns - len), pt = uniform(rng, 0, nt - len);
    g.s.replace(ps, len, block);
    g.t.replace(pt, len, copy);
    // equal neighbours would lengthen the match past the plant
    auto differ = [&](std::size_t i, std::size_t j) {
        if (sigma > 1 && g.s[i] == g.t[j]) g.t[j] = static_cast<char>('a' + (g.t[j] - 'a' + 1) % sigma);
    };
    if (ps > 0 && pt > 0) differ(ps - 1, pt - 1);
    if (ps + len < ns && pt + len < nt) differ(ps + len, pt + len);
    g.planted = len;
    return g;
}

}  // namespace

// ---- generators ----

std::optional<Generator> parse_generator(std::string_view name) {
    for (Generator g : {Generator::Random, Generator::Periodic, Generator::PlantedLcs, Generator::PlantedKlcs})
        if (name == generator_name(g)) return g;
    return std::nullopt;
}

const char* generator_name(Generator g) {
    switch (g) {
        case Generator::Random: return "random";
        case Generator::Periodic: return "periodic";
        case Generator::PlantedLcs: return "planted-lcs";
        case Generator::PlantedKlcs: return "planted-klcs";
    }
    return "?";
}

GeneratedPair generate(Generator g, std::size_t n, std::size_t sigma, std::mt19937_64& rng, std::size_t k) {
    if (sigma < 1 || sigma > 26) throw std::invalid_argument("sigma must be in [1, 26]");
    switch (g) {
        case Generator::Random: return {random_string(rng, n, sigma), random_string(rng, n, sigma), 0};
        case Generator::Periodic: {
            // shared root, random phase, sparse noise
            std::string root = random_string(rng, uniform(rng, 1, std::max<std::size_t>(1, std::min<std::size_t>(8, n))), sigma);
            auto make = [&]() {
                std::string x(n, 'a');
                const std::size_t phase = uniform(rng, 0, root.size() - 1);
                for (std::size_t i = 0; i < n; ++i) x[i] = root[(i + phase) % root.size()];
                for (std::size_t e = 0; e < n / 64 && n; ++e) x[uniform(rng, 0, n - 1)] = static_cast<char>('a' + uniform(rng, 0, sigma - 1));
                return x;
            };
            std::string s = make();
            return {s, make(), 0};
        }
        case Generator::PlantedLcs: return plant(rng, n, n, sigma, std::max<std::size_t>(1, n / 8), 0);
        case Generator::PlantedKlcs: return plant(rng, n, n, sigma, std::max<std::size_t>(1, n / 8), k);
    }
    throw std::invalid_argument("unknown generator");
}

// ---- suites ----

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> v{"lcs", "klcs", "sync", "families", "wavelet", "all"};
    return v;
}

const std::vector<std::string>& fault_names() {
    static const std::vector<std::string> v{"lcs-length", "lcs-witness", "klcs-length", "sync-drop", "family-value", "wavelet-value"};
    return v;
}

CheckResult check_lcs_equivalence(const VerifyConfig& cfg) {
    known_fault(cfg);
    CheckResult r{"lcs-equivalence", "LCS dispatcher equals lcs_dp, witnesses byte-verify", true, false, 0, {}, {}, 0};
    Timer timer{r};
    const std::size_t max_n = limit_of(cfg, 2000);
    const std::size_t planted_max = cfg.max_n ? cfg.max_n : 4096;
    std::size_t regimes[4] = {0, 0, 0, 0};

    // Returns an empty string when the case passes. A planted case also runs the routine whose
    // exactness range holds the true length on its own; `bucket` receives that regime.
    auto run_case = [&](const std::string& s, const std::string& t, Regime* bucket) -> std::string {
        LcsReport rep;
        try {
            rep = lcs_report(s, t);
        } catch (const std::exception& e) {
            return std::string("exception: ") + e.what();
        }
        if (cfg.inject == "lcs-length") ++rep.result.length;
        if (cfg.inject == "lcs-witness" && rep.result.length) ++rep.result.pos_s;
        OracleConfig oc;
        oc.max_n = std::max({oc.max_n, s.size(), t.size()});
        const OracleMatch truth = lcs_dp(s, t, oc);
        const LcsResult& x = rep.result;
        std::ostringstream why;
        if (x.length != truth.length) why << "length " << x.length << " != lcs_dp " << truth.length;
        else if (x.pos_s + x.length > s.size() || x.pos_t + x.length > t.size() ||
                 s.compare(x.pos_s, x.length, t, x.pos_t, x.length) != 0)
            why << "witness (" << x.pos_s << ", " << x.pos_t << ", " << x.length << ") does not match";
        if (bucket && why.str().empty()) {
            const LcsParams& p = rep.params;
            const std::size_t L = truth.length;
            // m >= 3 tau, so lengths from m up to the cap are the medium routine's
            *bucket = L < p.m ? Regime::Short : (L <= p.delta_cap ? Regime::Medium : Regime::Long);
            const LcsResult alone = lcs_report(s, t, *bucket).result;
            if (alone.length != L) why << regime_name(*bucket) << " routine alone gives " << alone.length << ", lcs_dp " << L;
        }
        return why.str();
    };
    auto fail = [&](std::string s, std::string t, const std::string& why, std::size_t i, const char* kind) {
        r.pass = false;
        Regime b = Regime::Auto;
        Regime* bp = std::string_view(kind) == "planted" ? &b : nullptr;
        shrink({&s, &t}, [&]() { return !s.empty() && !t.empty() && !run_case(s, t, bp).empty(); });
        r.failure = std::string(kind) + " case " + std::to_string(i) + ": " + why + "; shrunk to s=" + quote(s) + " t=" + quote(t) +
                    " (" + run_case(s, t, bp) + ")";
    };

    const std::size_t sigmas[] = {2, 4, 26};
    const std::size_t n_random = count_of(cfg, 1000);
    for (std::size_t i = 0; i < n_random && r.pass; ++i) {
        auto rng = case_rng(cfg.seed, 11, i);
        const std::size_t sigma = sigmas[i % 3];
        std::string s = random_string(rng, uniform(rng, 1, max_n), sigma);
        std::string t = random_string(rng, uniform(rng, 1, max_n), sigma);
        ++r.cases;
        if (auto why = run_case(s, t, nullptr); !why.empty()) fail(s, t, why, i, "random");
    }
    // planted: short and medium targets need a quiet background, so they use a large alphabet
    const std::size_t n_planted = count_of(cfg, 200);
    for (std::size_t i = 0; i < n_planted && r.pass; ++i) {
        auto rng = case_rng(cfg.seed, 12, i);
        const int target = static_cast<int>(i % 3);  // 0 short, 1 medium, 2 long
        const std::size_t sigma = target == 2 ? sigmas[uniform(rng, 0, 2)] : 26;
        const std::size_t lo = std::min<std::size_t>(planted_max, std::max<std::size_t>(1, planted_max / 2));
        const std::size_t ns = uniform(rng, lo, planted_max), nt = uniform(rng, lo, planted_max);
        const LcsParams p = lcs_params(std::max(ns, nt), sigma);
        std::size_t a = p.delta_cap + 1, b = std::max(a, std::min(ns, nt) / 2);
        if (target == 0 && p.m > 1) a = 1, b = p.m - 1;
        if (target == 1 && p.delta_cap >= p.m) a = p.m, b = p.delta_cap;
        GeneratedPair g = plant(rng, ns, nt, sigma, uniform(rng, a, b), 0);
        Regime bucket = Regime::Auto;
        ++r.cases;
        if (auto why = run_case(g.s, g.t, &bucket); !why.empty()) fail(g.s, g.t, why, i, "planted");
        ++regimes[static_cast<int>(bucket)];
    }
    r.metrics = {{"random_cases", static_cast<double>(n_random)},
                 {"planted_cases", static_cast<double>(n_planted)},
                 {"planted_short", static_cast<double>(regimes[1])},
                 {"planted_medium", static_cast<double>(regimes[2])},
                 {"planted_long", static_cast<double>(regimes[3])}};
    if (r.pass && n_planted >= 3 && (!regimes[1] || !regimes[2] || !regimes[3])) {
        r.pass = false;
        r.failure = "planted lengths did not cover every regime";
    }
    return r;
}

std::vector<CheckResult> check_klcs(const VerifyConfig& cfg) {
    known_fault(cfg);
    CheckResult eq{"klcs-equivalence", "k-LCS equals klcs_dp for k = 1, 2, 3", true, false, 0, {}, {}, 0};
    CheckResult growth{"family-growth", "family sizes within 2^k per source and C_fam * N * min(l, lg N)^k", true, false, 0, {}, {}, 0};
    CheckResult merge{"merge-work-klcs", "general-solver merges within N * ceil(lg N)^2 on k-LCS instances", true, false, 0, {}, {}, 0};
    const auto t0 = Clock::now();
    const std::size_t max_n = limit_of(cfg, 512);
    const std::size_t per_k = count_of(cfg, 300);
    const std::size_t sigmas[] = {2, 4, 26};
    double c_fam = 0, merge_ratio = 0, anchor_ratio = 0;
    std::size_t per_source_excess = 0, runs = 0, brute = 0;

    auto run_case = [&](const std::string& s, const std::string& t, std::size_t k, KlcsReport* out) -> std::string {
        KlcsReport rep;
        try {
            rep = klcs_report(s, t, k);
        } catch (const std::exception& e) {
            return std::string("exception: ") + e.what();
        }
        if (cfg.inject == "klcs-length") ++rep.result.length;
        const std::size_t truth = klcs_dp(s, t, k).length;
        const KlcsResult& x = rep.result;
        std::ostringstream why;
        if (x.length != truth) why << "length " << x.length << " != klcs_dp " << truth;
        else if (x.pos_s + x.length > s.size() || x.pos_t + x.length > t.size()) why << "witness out of range";
        else {
            std::size_t mism = 0;
            for (std::size_t i = 0; i < x.length; ++i) mism += s[x.pos_s + i] != t[x.pos_t + i];
            if (mism > k) why << "witness has " << mism << " mismatches";
        }
        if (out) *out = std::move(rep);
        return why.str();
    };

    for (std::size_t k = 1; k <= 3 && eq.pass; ++k)
        for (std::size_t i = 0; i < per_k && eq.pass; ++i) {
            auto rng = case_rng(cfg.seed, 20 + k, i);
            const std::size_t sigma = sigmas[i % 3];
            std::string s = random_string(rng, uniform(rng, 1, max_n), sigma);
            std::string t = random_string(rng, uniform(rng, 1, max_n), sigma);
            KlcsReport rep;
            ++eq.cases;
            if (auto why = run_case(s, t, k, &rep); !why.empty()) {
                eq.pass = false;
                shrink({&s, &t}, [&]() { return !s.empty() && !t.empty() && !run_case(s, t, k, nullptr).empty(); }, 150);
                eq.failure = "k=" + std::to_string(k) + " case " + std::to_string(i) + ": " + why + "; shrunk to s=" + quote(s) +
                             " t=" + quote(t) + " (" + run_case(s, t, k, nullptr) + ")";
                break;
            }
            brute += rep.brute_evaluations;
            anchor_ratio = std::max(anchor_ratio, rep.anchor_ratio_max);
            for (const KStats& st : rep.runs) {
                ++runs;
                const std::size_t n = st.n_elements;
                if (st.bicomplete.first.max_per_source > (std::size_t{1} << st.k1) ||
                    st.bicomplete.second.max_per_source > (std::size_t{1} << st.k2))
                    ++per_source_excess;
                const double base = std::pow(static_cast<double>(std::min(st.ell, ceil_lg(n))), static_cast<double>(st.k1 + st.k2));
                c_fam = std::max(c_fam, static_cast<double>(st.p_family_total) / (static_cast<double>(n) * base));
                merge_ratio = std::max(merge_ratio, st.merge_ratio_max);
            }
        }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    eq.seconds = growth.seconds = merge.seconds = secs;
    eq.metrics = {{"pairs_per_k", static_cast<double>(per_k)}, {"family_runs", static_cast<double>(runs)},
                  {"brute_evaluations", static_cast<double>(brute)}, {"anchor_ratio_max", anchor_ratio}};
    growth.cases = merge.cases = runs;
    growth.metrics = {{"c_fam", c_fam}, {"c_fam_limit", 64}, {"per_source_excess", static_cast<double>(per_source_excess)}};
    growth.pass = eq.pass && per_source_excess == 0 && c_fam <= 64;
    if (!eq.pass) growth.failure = merge.failure = "k-LCS suite stopped early";
    else if (!growth.pass) growth.failure = "C_fam = " + std::to_string(c_fam) + ", per-source excess in " + std::to_string(per_source_excess) + " runs";
    merge.metrics = {{"merge_ratio_max", merge_ratio}};
    merge.pass = eq.pass && merge_ratio <= 1.0;
    if (eq.pass && !merge.pass) merge.failure = "merge ratio " + std::to_string(merge_ratio);
    return {eq, growth, merge};
}

CheckResult check_paper_value(const VerifyConfig& cfg) {
    known_fault(cfg);
    CheckResult r{"paper-value", "LCP_3(ababbabb, aacbaaab) = 6 and the worked maxpair passes the checker", true, false, 1, {}, {}, 0};
    Timer timer{r};
    const std::string u = "ababbabb", v = "aacbaaab";
    Pool pool({u, v});
    const std::size_t value = lcp_k(*pool.idx, pool.spans[0], pool.spans[1], 3);
    // substitutions at 1-based positions (2,a),(3,b) and (3,b),(5,b)
    ModifiedString mu{pool.spans[0], 0, {}}, mv{pool.spans[1], 0, {}};
    mu = with_substitution(*pool.idx, mu, 1, pool.code('a'));
    mu = with_substitution(*pool.idx, mu, 2, pool.code('b'));
    mv = with_substitution(*pool.idx, mv, 2, pool.code('b'));
    mv = with_substitution(*pool.idx, mv, 4, pool.code('b'));
    const std::string um = pool.text_of(mu), vm = pool.text_of(mv);
    const bool maxpair = is_maxpair(u, um, v, vm, 3);
    const std::size_t modified_lcp = lcp_modified(*pool.idx, mu, mv);
    r.metrics = {{"lcp_k", static_cast<double>(value)}, {"modified_lcp", static_cast<double>(modified_lcp)}, {"maxpair", maxpair ? 1.0 : 0.0}};
    r.pass = value == 6 && naive_lcp_k(u, v, 3) == 6 && maxpair && modified_lcp == 6;
    if (!r.pass)
        r.failure = "lcp_k=" + std::to_string(value) + " modified=" + um + "/" + vm + " lcp=" + std::to_string(modified_lcp) +
                    " maxpair=" + (maxpair ? "yes" : "no");
    return r;
}

CheckResult check_sync_validity(const VerifyConfig& cfg) {
    known_fault(cfg);
    CheckResult r{"sync-validity", "synchronizing sets satisfy both conditions with density <= 8", true, false, 0, {}, {}, 0};
    Timer timer{r};
    const std::size_t max_n = limit_of(cfg, 5000);
    const std::size_t count = count_of(cfg, 200);
    double density = 0;
    auto run_case = [&](const std::string& s, std::size_t tau) -> std::string {
        std::vector<Code> text(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) text[i] = static_cast<Code>(s[i] - 'a');
        SyncSet a;
        try {
            a = build_sync_set(text, tau);
        } catch (const std::exception& e) {
            return std::string("exception: ") + e.what();
        }
        if (cfg.inject == "sync-drop")
            std::erase_if(a.positions, [&](u32 x) { return x >= s.size() / 3 && x < 2 * s.size() / 3; });
        SyncReport rep = check_sync_set(a.positions, text, tau);
        if (!rep.ok) return rep.message;
        density = std::max(density, rep.density);
        if (rep.density > 8.0) return "density " + std::to_string(rep.density) + " > 8";
        return {};
    };
    for (std::size_t i = 0; i < count && r.pass; ++i) {
        auto rng = case_rng(cfg.seed, 30, i);
        const std::size_t tau = uniform(rng, 3, 64);
        const std::size_t n = uniform(rng, std::min(2 * tau, max_n), std::max(2 * tau, max_n));
        std::string s = random_string(rng, n, 2);
        if (i % 3 == 0) {
            // a periodic stretch so condition 2 has something to say
            std::string root = random_string(rng, uniform(rng, 1, std::max<std::size_t>(1, tau / 3)), 2);
            const std::size_t len = std::min(n / 2, 4 * tau + uniform(rng, 0, n / 4));
            const std::size_t at = uniform(rng, 0, n - len);
            for (std::size_t j = 0; j < len; ++j) s[at + j] = root[j % root.size()];
        }
        ++r.cases;
        if (auto why = run_case(s, tau); !why.empty()) {
            r.pass = false;
            shrink({&s}, [&]() { return s.size() >= 2 * tau && !run_case(s, tau).empty(); });
            r.failure = "case " + std::to_string(i) + " tau=" + std::to_string(tau) + ": " + why + "; shrunk to " + quote(s) + " (" +
                        run_case(s, tau) + ")";
        }
    }
    r.metrics = {{"density_max", density}};
    return r;
}

namespace {

// Shared driver for the Two-Families agreement checks; `solve` returns an error text or "".
CheckResult family_check(const VerifyConfig& cfg, CheckResult r, std::uint64_t salt, std::size_t base,
                         const std::function<void(std::mt19937_64&, Family&, Family&, std::size_t&, std::size_t&)>& make,
                         const std::function<std::string(const Family&, const Family&, std::size_t, std::size_t)>& solve) {
    Timer timer{r};
    const std::size_t count = count_of(cfg, base);
    for (std::size_t i = 0; i < count && r.pass; ++i) {
        auto rng = case_rng(cfg.seed, salt, i);
        Family p, q;
        std::size_t a = 0, b = 0;
        make(rng, p, q, a, b);
        ++r.cases;
        std::string why;
        try {
            why = solve(p, q, a, b);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        if (why.empty()) continue;
        r.pass = false;
        shrink_families(p, q, [&]() {
            try {
                return !solve(p, q, a, b).empty();
            } catch (const std::exception&) {
                return true;
            }
        });
        r.failure = "case " + std::to_string(i) + ": " + why + "; shrunk to P=" + dump_family(p) + " Q=" + dump_family(q);
    }
    return r;
}

}  // namespace

CheckResult check_alpha_beta_agreement(const VerifyConfig& cfg) {
    known_fault(cfg);
    const std::size_t max_n = limit_of(cfg, 200);
    return family_check(
        cfg, {"alpha-beta-agreement", "general, wavelet and brute force agree on (alpha,beta)-families", true, false, 0, {}, {}, 0}, 40, 500,
        [&](std::mt19937_64& rng, Family& p, Family& q, std::size_t& alpha, std::size_t& beta) {
            alpha = uniform(rng, 0, 64);
            beta = uniform(rng, 0, 64);
            const std::size_t sigma = uniform(rng, 1, 4), n = uniform(rng, 2, std::max<std::size_t>(2, max_n));
            const std::size_t np = uniform(rng, 1, n - 1);
            p = random_family(rng, np, alpha, beta, sigma);
            q = random_family(rng, n - np, alpha, beta, sigma);
        },
        [&](const Family& p, const Family& q, std::size_t alpha, std::size_t beta) -> std::string {
            const auto inst = instance_from_strings(p, q);
            const std::size_t brute = brute_max_pair_lcp(p, q, 0, 0);
            PairLcpResult g = max_pair_lcp_general(inst), w = solve_alpha_beta(inst, alpha, beta);
            if (cfg.inject == "family-value") ++g.value;
            if (cfg.inject == "wavelet-value") ++w.value;
            std::ostringstream why;
            if (g.value != brute || w.value != brute)
                why << "brute " << brute << ", general " << g.value << ", wavelet " << w.value << " (alpha=" << alpha << ", beta=" << beta << ")";
            else if (brute && (pair_value(inst, g.p_index, g.q_index) != brute || pair_value(inst, w.p_index, w.q_index) != brute))
                why << "witness value differs";
            return why.str();
        });
}

CheckResult check_prefix_agreement(const VerifyConfig& cfg) {
    known_fault(cfg);
    const std::size_t max_n = limit_of(cfg, 200);
    return family_check(
        cfg, {"prefix-agreement", "prefix solver agrees with brute force on prefix families", true, false, 0, {}, {}, 0}, 41, 500,
        [&](std::mt19937_64& rng, Family& p, Family& q, std::size_t&, std::size_t&) {
            const std::size_t sigma = uniform(rng, 1, 4), n = uniform(rng, 2, std::max<std::size_t>(2, max_n));
            const std::string y = random_string(rng, uniform(rng, 0, 64), sigma);
            const std::size_t np = uniform(rng, 1, n - 1);
            auto fill = [&](Family& f, std::size_t m) {
                f.resize(m);
                for (auto& e : f) {
                    e.first = y.substr(0, uniform(rng, 0, y.size()));
                    e.second = random_string(rng, uniform(rng, 0, 64), sigma);
                }
            };
            fill(p, np);
            fill(q, n - np);
        },
        [&](const Family& p, const Family& q, std::size_t, std::size_t) -> std::string {
            const auto inst = instance_from_strings(p, q);
            const std::size_t brute = brute_max_pair_lcp(p, q, 0, 0);
            PairLcpResult x = max_pair_lcp_prefix(inst);
            if (cfg.inject == "family-value") ++x.value;
            std::ostringstream why;
            if (x.value != brute) why << "brute " << brute << ", prefix " << x.value;
            else if (brute && pair_value(inst, x.p_index, x.q_index) != brute) why << "witness value differs";
            return why.str();
        });
}

CheckResult check_max_pair_k(const VerifyConfig& cfg) {
    known_fault(cfg);
    const std::size_t max_n = limit_of(cfg, 60);
    const std::pair<std::size_t, std::size_t> ks[] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}};
    return family_check(
        cfg, {"maxpair-k", "max_pair_lcp_k equals brute_max_pair_lcp", true, false, 0, {}, {}, 0}, 50, 300,
        [&, i = std::size_t{0}](std::mt19937_64& rng, Family& p, Family& q, std::size_t& k1, std::size_t& k2) mutable {
            std::tie(k1, k2) = ks[i++ % 4];
            const std::size_t ell = uniform(rng, 1, 32), sigma = uniform(rng, 1, 4), n = uniform(rng, 2, std::max<std::size_t>(2, max_n));
            const std::size_t np = uniform(rng, 1, n - 1);
            p = random_family(rng, np, ell, ell, sigma);
            q = random_family(rng, n - np, ell, ell, sigma);
        },
        [&](const Family& p, const Family& q, std::size_t k1, std::size_t k2) -> std::string {
            std::vector<std::string> all;
            std::size_t ell = 1;
            for (const Family* f : {&p, &q})
                for (const auto& [a, b] : *f) {
                    all.push_back(a);
                    all.push_back(b);
                    ell = std::max({ell, a.size(), b.size()});
                }
            Pool pool(all);
            PairFamily U, V;
            std::size_t x = 0;
            for (std::size_t i = 0; i < p.size(); ++i, x += 2) U.push_back({pool.spans[x], pool.spans[x + 1]});
            for (std::size_t i = 0; i < q.size(); ++i, x += 2) V.push_back({pool.spans[x], pool.spans[x + 1]});
            PairLcpResult got = max_pair_lcp_k(*pool.idx, U, V, k1, k2, ell);
            if (cfg.inject == "family-value") ++got.value;
            const std::size_t brute = brute_max_pair_lcp(p, q, k1, k2);
            std::ostringstream why;
            if (got.value != brute) why << "k1=" << k1 << " k2=" << k2 << ": brute " << brute << ", max_pair_lcp_k " << got.value;
            else if (got.has_witness && naive_lcp_k(p[got.p_index].first, q[got.q_index].first, k1) +
                                                naive_lcp_k(p[got.p_index].second, q[got.q_index].second, k2) != brute)
                why << "witness value differs";
            return why.str();
        });
}

CheckResult check_merge_work(const VerifyConfig& cfg) {
    known_fault(cfg);
    CheckResult r{"merge-work", "general-solver merges within N * ceil(lg N)^2", true, false, 0, {}, {}, 0};
    Timer timer{r};
    const std::size_t max_n = limit_of(cfg, 2000);
    const std::size_t count = count_of(cfg, 200);
    double worst = 0;
    for (std::size_t i = 0; i < count && r.pass; ++i) {
        auto rng = case_rng(cfg.seed, 60, i);
        const std::size_t n = uniform(rng, 2, std::max<std::size_t>(2, max_n)), np = uniform(rng, 1, n - 1);
        // alternate random sets with nested unary ones (deep, unbalanced tries)
        const std::size_t sigma = i % 4 == 3 ? 1 : uniform(rng, 1, 4);
        Family p = random_family(rng, np, 16, 16, sigma), q = random_family(rng, n - np, 16, 16, sigma);
        SolverStats st;
        const auto inst = instance_from_strings(p, q);
        max_pair_lcp_general(inst, &st);
        const double lg = static_cast<double>(ceil_lg(n));
        const double ratio = static_cast<double>(st.merged_elements) / (static_cast<double>(n) * lg * lg);
        worst = std::max(worst, ratio);
        ++r.cases;
        if (ratio > 1.0) {
            r.pass = false;
            r.failure = "case " + std::to_string(i) + ": N=" + std::to_string(n) + " merged=" + std::to_string(st.merged_elements);
        }
    }
    r.metrics = {{"merge_ratio_max", worst}};
    return r;
}

CheckResult check_perf_smoke(std::size_t n, std::size_t sigma, std::uint64_t seed) {
    CheckResult r{"perf-smoke", "packed LCS against the suffix-automaton baseline (2x target is soft)", true, true, 1, {}, {}, 0};
    Timer timer{r};
    auto rng = case_rng(seed, 70, 0);
    GeneratedPair g = generate(Generator::Random, n, sigma, rng);
    auto time_of = [](auto&& f) {
        const auto t0 = Clock::now();
        f();
        return std::chrono::duration<double>(Clock::now() - t0).count();
    };
    LcsResult sam, packed;
    LcsReport medium;
    const double t_sam = time_of([&] { sam = lcs_suffix_automaton(g.s, g.t); });
    const double t_packed = time_of([&] { packed = lcs(g.s, g.t); });
    const double t_medium = time_of([&] { medium = lcs_report(g.s, g.t, Regime::Medium); });
    const double ratio = t_sam / std::max(t_packed, 1e-9);
    r.metrics = {{"n", static_cast<double>(n)},
                 {"lcs", static_cast<double>(packed.length)},
                 {"sam_seconds", t_sam},
                 {"packed_seconds", t_packed},
                 {"medium_seconds", t_medium},
                 {"speedup", ratio},
                 {"medium_speedup", t_sam / std::max(t_medium, 1e-9)}};
    if (packed.length != sam.length) {
        r.soft = false;
        r.pass = false;
        r.failure = "length " + std::to_string(packed.length) + " != baseline " + std::to_string(sam.length);
    } else if (ratio < 2.0) {
        r.pass = false;
        r.failure = "speedup " + std::to_string(ratio) + " below the 2x target";
    }
    return r;
}

std::vector<CheckResult> run_suite(std::string_view suite, const VerifyConfig& cfg) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw std::invalid_argument("unknown suite: " + std::string(suite));
    known_fault(cfg);
    const bool all = suite == "all";
    std::vector<CheckResult> out;
    if (all || suite == "lcs") out.push_back(check_lcs_equivalence(cfg));
    if (all || suite == "klcs") {
        out.push_back(check_paper_value(cfg));
        out.push_back(check_max_pair_k(cfg));
        for (auto& r : check_klcs(cfg)) out.push_back(std::move(r));
    }
    if (all || suite == "sync") out.push_back(check_sync_validity(cfg));
    if (all || suite == "families") {
        out.push_back(check_prefix_agreement(cfg));
        out.push_back(check_merge_work(cfg));
    }
    if (all || suite == "wavelet") out.push_back(check_alpha_beta_agreement(cfg));
    return out;
}

}  // namespace plcs
