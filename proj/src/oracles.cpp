#include "packed_lcs/oracles.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace plcs {

namespace {
void guard(std::size_t a, std::size_t b, std::size_t cap, const char* what) {
    if (a > cap || b > cap) throw std::length_error(std::string(what) + ": input beyond oracle size guard");
}
}  // namespace

OracleMatch lcs_dp(const std::string& s, const std::string& t, const OracleConfig& cfg) {
    guard(s.size(), t.size(), cfg.max_n, "lcs_dp");
    OracleMatch best;
    std::vector<std::uint32_t> prev(t.size() + 1, 0), cur(t.size() + 1, 0);
    for (std::size_t i = 1; i <= s.size(); ++i) {
        for (std::size_t j = 1; j <= t.size(); ++j) {
            cur[j] = s[i - 1] == t[j - 1] ? prev[j - 1] + 1 : 0;
            if (cur[j] > best.length) best = {cur[j], i - cur[j], j - cur[j]};
        }
        std::swap(prev, cur);
    }
    return best;
}

OracleMatch klcs_dp(const std::string& s, const std::string& t, std::size_t k, const OracleConfig& cfg) {
    guard(s.size(), t.size(), cfg.max_n, "klcs_dp");
    OracleMatch best;
    const long n = static_cast<long>(s.size()), m = static_cast<long>(t.size());
    std::vector<std::size_t> mis;
    for (long d = -(m - 1); d <= n - 1; ++d) {
        // diagonal: s[i] vs t[i - d]
        long i0 = std::max(0L, d), i1 = std::min(n, m + d);
        std::size_t head = 0;
        mis.clear();
        long left = i0;
        for (long i = i0; i < i1; ++i) {
            if (s[i] != t[i - d]) mis.push_back(static_cast<std::size_t>(i));
            if (mis.size() - head > k) left = static_cast<long>(mis[head++]) + 1;
            std::size_t len = static_cast<std::size_t>(i - left + 1);
            if (len > best.length) best = {len, static_cast<std::size_t>(left), static_cast<std::size_t>(left - d)};
        }
    }
    return best;
}

std::size_t naive_lcp_k(const std::string& u, const std::string& v, std::size_t k) {
    std::size_t l = 0, used = 0;
    while (l < u.size() && l < v.size()) {
        if (u[l] != v[l]) {
            if (used == k) break;
            ++used;
        }
        ++l;
    }
    return l;
}

bool is_maxpair(const std::string& u, const std::string& um, const std::string& v, const std::string& vm, std::size_t k) {
    if (u.size() != um.size() || v.size() != vm.size()) return false;
    const std::size_t lk = naive_lcp_k(u, v, k);
    for (std::size_t i = 0; i < std::max(u.size(), v.size()); ++i) {
        if (i < lk && u[i] != v[i]) {
            if (um[i] != vm[i]) return false;
        } else {
            if (i < u.size() && um[i] != u[i]) return false;
            if (i < v.size() && vm[i] != v[i]) return false;
        }
    }
    return true;
}

std::size_t brute_max_pair_lcp(const std::vector<StringPair>& p, const std::vector<StringPair>& q, std::size_t k1,
                               std::size_t k2, const OracleConfig& cfg) {
    guard(p.size(), q.size(), cfg.max_family, "brute_max_pair_lcp");
    std::size_t best = 0;
    for (const auto& a : p)
        for (const auto& b : q)
            best = std::max(best, naive_lcp_k(a.first, b.first, k1) + naive_lcp_k(a.second, b.second, k2));
    return best;
}

std::size_t naive_period(const std::vector<Code>& t, std::size_t b, std::size_t e) {
    for (std::size_t p = 1; p < e - b; ++p) {
        bool ok = true;
        for (std::size_t x = b; x + p < e && ok; ++x) ok = t[x] == t[x + p];
        if (ok) return p;
    }
    return e - b;
}

SyncReport check_sync_set(const std::vector<std::uint32_t>& a, const std::vector<Code>& t, std::size_t tau) {
    SyncReport rep;
    const std::size_t n = t.size();
    if (tau == 0 || 2 * tau > n) {
        rep.ok = false;
        rep.message = "tau out of range";
        return rep;
    }
    std::vector<char> in(n, 0);
    for (auto x : a) {
        if (x > n - 2 * tau) {
            rep.ok = false;
            rep.message = "position beyond n-2tau";
            rep.violation_position = x;
            return rep;
        }
        in[x] = 1;
    }
    rep.density = static_cast<double>(a.size()) * static_cast<double>(tau) / static_cast<double>(n);
    // condition 2: A misses [i, i+tau) iff T[i..i+3tau-1) has period <= tau/3
    for (std::size_t i = 0; i + 3 * tau - 1 <= n; ++i) {
        bool empty = true;
        for (std::size_t x = i; x < i + tau && x < n; ++x) empty &= !in[x];
        bool periodic = false;
        for (std::size_t p = 1; p <= tau / 3 && !periodic; ++p) {
            bool ok = true;
            for (std::size_t x = i; x + p < i + 3 * tau - 1 && ok; ++x) ok = t[x] == t[x + p];
            periodic = ok;
        }
        if (empty != periodic) {
            rep.ok = false;
            rep.message = "condition 2 (density) violated";
            rep.violation_position = i;
            return rep;
        }
    }
    // condition 1: equal 2tau-windows agree on membership
    std::unordered_map<std::string, char> seen;
    for (std::size_t i = 0; i + 2 * tau <= n; ++i) {
        std::string key;
        key.reserve(2 * tau * 4);
        for (std::size_t x = i; x < i + 2 * tau; ++x) key.append(reinterpret_cast<const char*>(&t[x]), sizeof(Code));
        auto [it, fresh] = seen.emplace(std::move(key), in[i]);
        if (!fresh && it->second != in[i]) {
            rep.ok = false;
            rep.message = "condition 1 (consistency) violated";
            rep.violation_position = i;
            return rep;
        }
    }
    return rep;
}

std::vector<NaiveRun> naive_tau_runs(const std::vector<Code>& t, std::size_t tau) {
    std::vector<NaiveRun> out;
    const std::size_t n = t.size();
    if (tau < 3) return out;
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t p = 1; p <= tau / 3; ++p) {
            if (b > 0 && b - 1 + p < n && t[b - 1] == t[b - 1 + p]) continue;  // not left-maximal
            std::size_t e = b + p;
            if (e > n) break;
            while (e < n && t[e] == t[e - p]) ++e;
            if (e - b < 3 * tau - 1 || naive_period(t, b, e) != p) continue;
            out.push_back({b, e, p});
        }
    std::sort(out.begin(), out.end(), [](const NaiveRun& x, const NaiveRun& y) { return x.start < y.start || (x.start == y.start && x.end < y.end); });
    return out;
}

std::vector<std::size_t> naive_right_misperiods(const std::vector<Code>& x, std::size_t i, std::size_t j, std::size_t k) {
    std::vector<std::size_t> out;
    std::size_t p = j - i;
    for (std::size_t a = j; a < x.size() && out.size() < k; ++a)
        if (x[a] != x[i + (a - i) % p]) out.push_back(a);
    return out;
}

std::vector<std::size_t> naive_left_misperiods(const std::vector<Code>& x, std::size_t i, std::size_t j, std::size_t k) {
    std::vector<std::size_t> out;
    std::size_t p = j - i;
    for (std::size_t a = i; a-- > 0 && out.size() < k;) {
        std::size_t b = j - 1 - ((j - 1 - a) % p);
        if (x[a] != x[b]) out.push_back(a);
    }
    return out;
}

}  // namespace plcs
