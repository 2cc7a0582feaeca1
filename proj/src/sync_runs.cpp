#include "packed_lcs/sync_runs.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace plcs {

std::vector<bool> periodic_windows(const std::vector<Code>& t, std::size_t tau) {
    const std::size_t n = t.size();
    if (tau == 0 || tau > n) return {};
    std::vector<bool> q(n - tau + 1, false);
    for (std::size_t p = 1; p <= tau / 3; ++p) {
        // window j has period p iff no mismatch t[x] != t[x+p] for x in [j, j+tau-p)
        std::size_t span = tau - p, bad = 0;
        for (std::size_t x = 0; x < span; ++x) bad += t[x] != t[x + p];
        for (std::size_t j = 0;; ++j) {
            if (bad == 0) q[j] = true;
            if (j + tau >= n) break;
            bad -= t[j] != t[j + p];
            bad += t[j + span] != t[j + span + p];
        }
    }
    return q;
}

std::vector<u32> window_ids(const SuffixIndex& idx, std::size_t tau) {
    const auto& sa = idx.sa();
    const auto& lcp = idx.lcp();
    std::vector<u32> id(sa.size(), 0);
    u32 cur = 0;
    for (std::size_t r = 0; r < sa.size(); ++r) {
        if (r && lcp[r] < tau) ++cur;
        id[sa[r]] = cur;
    }
    return id;
}

SyncSet build_sync_set(const std::vector<Code>& text, std::size_t tau, const std::vector<u32>& ids) {
    const std::size_t n = text.size();
    if (tau < 1 || 2 * tau > n) throw std::invalid_argument("sync set requires 1 <= tau <= n/2");
    SyncSet out;
    out.tau = tau;
    out.n = n;
    auto q = periodic_windows(text, tau);
    constexpr u32 inf = std::numeric_limits<u32>::max();
    auto val = [&](std::size_t j) { return q[j] ? inf : ids[j]; };
    // sliding minimum over [i, i+tau] with a monotone deque
    std::deque<std::size_t> dq;
    auto push = [&](std::size_t j) {
        while (!dq.empty() && val(dq.back()) > val(j)) dq.pop_back();
        dq.push_back(j);
    };
    for (std::size_t j = 0; j <= tau; ++j) push(j);
    for (std::size_t i = 0; i + 2 * tau <= n; ++i) {
        if (i) push(i + tau);
        while (dq.front() < i) dq.pop_front();
        u32 m = val(dq.front());
        if (m != inf && (val(i) == m || val(i + tau) == m)) out.positions.push_back(static_cast<u32>(i));
    }
    return out;
}

SyncSet build_sync_set(const std::vector<Code>& text, std::size_t tau) {
    if (tau < 1 || 2 * tau > text.size()) throw std::invalid_argument("sync set requires 1 <= tau <= n/2");
    Code up = 0;
    for (Code c : text) up = std::max(up, c);
    SuffixIndex idx(std::vector<u32>(text.begin(), text.end()), up + 1);
    return build_sync_set(text, tau, window_ids(idx, tau));
}

SyncSet build_sync_set(const PackedText& text, std::size_t tau) { return build_sync_set(text.unpack(), tau); }

std::size_t succ_sync(const SyncSet& a, std::size_t i) {
    auto it = std::lower_bound(a.positions.begin(), a.positions.end(), i);
    if (it == a.positions.end()) return a.n - 2 * a.tau + 1;
    return *it;
}

std::size_t least_rotation(const std::vector<Code>& s) {
    const std::size_t n = s.size();
    if (n == 0) return 0;
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        Code sj = s[j % n];
        long i = f[j - k - 1];
        while (i != -1 && sj != s[(k + i + 1) % n]) {
            if (sj < s[(k + i + 1) % n]) k = j - i - 1;
            i = f[i];
        }
        if (i == -1 && sj != s[(k + i + 1) % n]) {
            if (sj < s[(k + i + 1) % n]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k;
}

TauRunGroups find_tau_runs(const std::vector<Code>& t, std::size_t tau) {
    TauRunGroups g;
    const std::size_t n = t.size();
    if (tau < 3 || n == 0) return g;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;  // interval -> smallest period
    for (std::size_t p = 1; p <= tau / 3; ++p) {
        std::size_t x = 0;
        while (x + p < n) {
            if (t[x] != t[x + p]) { ++x; continue; }
            std::size_t a = x;
            while (x + p < n && t[x] == t[x + p]) ++x;
            std::size_t end = x + p;  // T[a..end) has period p and is maximal
            if (end - a >= 3 * tau - 1) seen.emplace(std::make_pair(a, end), p);
        }
    }
    for (auto& [iv, p] : seen) {
        TauRun r;
        r.start = iv.first;
        r.end = iv.second;
        r.period = p;
        std::vector<Code> block(t.begin() + r.start, t.begin() + r.start + p);
        r.lyndon_start = r.start + least_rotation(block);
        g.runs.push_back(r);
    }
    for (std::size_t k = 0; k < g.runs.size(); ++k) {
        const auto& r = g.runs[k];
        std::vector<Code> root(t.begin() + r.lyndon_start, t.begin() + r.lyndon_start + r.period);
        g.by_root[root].push_back(static_cast<u32>(k));
        g.by_root_tail[{root, r.tail()}].push_back(static_cast<u32>(k));
    }
    return g;
}

std::vector<std::size_t> right_misperiods(const BidirectionalLce& lce, std::size_t i, std::size_t j, std::size_t k) {
    if (i >= j) throw std::invalid_argument("misperiods of an empty fragment");
    const std::size_t n = lce.size(), p = j - i;
    std::vector<std::size_t> res;
    std::size_t first_mis = std::numeric_limits<std::size_t>::max();
    std::size_t x = j;
    while (res.size() < k && x < n) {
        // the text agrees with the periodic extension of [i, j) on [i, clean)
        std::size_t clean = std::min(first_mis, x);
        if (clean < j) clean = j;
        std::size_t ref = i + (x - i) % p;
        std::size_t cap = std::min(clean - ref, n - x);
        std::size_t l = std::min(lce.forward(x, ref), cap);
        if (l < cap) {
            res.push_back(x + l);
            first_mis = std::min(first_mis, x + l);
            x += l + 1;
        } else {
            x += cap;
        }
    }
    return res;
}

std::vector<std::size_t> left_misperiods(const BidirectionalLce& lce, std::size_t i, std::size_t j, std::size_t k) {
    if (i >= j) throw std::invalid_argument("misperiods of an empty fragment");
    const std::size_t n = lce.size(), p = j - i;
    std::vector<std::size_t> res;
    // mirror of the right scan: positions x < i compared to the window end going backwards
    std::size_t first_mis = std::numeric_limits<std::size_t>::max();  // distance-from-end measure
    std::size_t xr = n - i;  // reversed coordinates: window is [n-j, n-i)
    std::size_t ir = n - j;
    while (res.size() < k && xr < n) {
        std::size_t clean = std::min(first_mis, xr);
        if (clean < n - i) clean = n - i;
        std::size_t ref = ir + (xr - ir) % p;
        std::size_t cap = std::min(clean - ref, n - xr);
        // forward LCE in reversed text == backward LCE in the original
        std::size_t l = std::min(lce.backward(n - 1 - xr, n - 1 - ref), cap);
        if (l < cap) {
            res.push_back(n - 1 - (xr + l));
            first_mis = std::min(first_mis, xr + l);
            xr += l + 1;
        } else {
            xr += cap;
        }
    }
    return res;
}

MisperiodSets misperiods(const BidirectionalLce& lce, std::size_t i, std::size_t j, std::size_t k) {
    return {left_misperiods(lce, i, j, k), right_misperiods(lce, i, j, k)};
}

std::vector<std::size_t> two_smallest_congruent(std::size_t from, std::size_t q, std::size_t p, std::size_t n) {
    std::vector<std::size_t> out;
    std::size_t r = q % p;
    std::size_t first = from <= r ? r : from + ((r + p - from % p) % p);
    for (std::size_t x = first; x < n && out.size() < 2; x += p) out.push_back(x);
    return out;
}

}  // namespace plcs
