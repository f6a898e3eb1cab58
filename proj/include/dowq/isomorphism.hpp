#pragma once

// Order-isomorphism testing by backtracking over the Hasse diagram, pruned
// by iterated invariant refinement (height, depth, cover degrees, up/down
// set sizes, then neighbourhood label multisets).  The search carries a
// node budget; exceeding it is reported as Inconclusive, distinct from a
// definite None.

#include <algorithm>
#include <functional>
#include <cstdint>
#include <map>
#include <vector>

#include "dowq/poset.hpp"

namespace dowq {

struct IsoResult {
    enum class Status { Found, None, Inconclusive };
    Status status = Status::None;
    std::vector<int> mapping;  // p index -> q index, valid iff Found
    long long nodes_explored = 0;

    bool found() const { return status == Status::Found; }
};

namespace detail {

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

inline std::vector<std::uint64_t> refine_labels(const FinitePoset& p) {
    const int n = p.size();
    std::vector<std::uint64_t> lab(n);
    for (int v = 0; v < n; ++v) {
        std::uint64_t h = 0xcbf29ce484222325ull;
        h = hash_mix(h, static_cast<std::uint64_t>(p.height(v)));
        h = hash_mix(h, static_cast<std::uint64_t>(p.depth(v)));
        h = hash_mix(h, p.upper_covers(v).size());
        h = hash_mix(h, p.lower_covers(v).size());
        h = hash_mix(h, p.up_set(v).count());
        h = hash_mix(h, p.down_set(v).count());
        lab[v] = h;
    }
    for (int round = 0; round < n; ++round) {
        std::vector<std::uint64_t> next(n);
        std::vector<std::uint64_t> nb;
        for (int v = 0; v < n; ++v) {
            std::uint64_t h = hash_mix(lab[v], 0x517cc1b727220a95ull);
            nb.clear();
            for (int w : p.upper_covers(v)) nb.push_back(lab[w]);
            std::sort(nb.begin(), nb.end());
            for (auto x : nb) h = hash_mix(h, x);
            h = hash_mix(h, 0xdeadbeefcafef00dull);
            nb.clear();
            for (int w : p.lower_covers(v)) nb.push_back(lab[w]);
            std::sort(nb.begin(), nb.end());
            for (auto x : nb) h = hash_mix(h, x);
            next[v] = h;
        }
        std::map<std::uint64_t, int> before, after;
        for (auto x : lab) before[x]++;
        for (auto x : next) after[x]++;
        bool grew = after.size() > before.size();
        lab = std::move(next);
        if (!grew) break;
    }
    return lab;
}

}  // namespace detail

inline IsoResult find_isomorphism(const FinitePoset& p, const FinitePoset& q,
                                  long long node_budget = 5'000'000) {
    IsoResult res;
    const int n = p.size();
    if (n != q.size()) return res;  // None
    if (n == 0) {
        res.status = IsoResult::Status::Found;
        return res;
    }

    auto lp = detail::refine_labels(p);
    auto lq = detail::refine_labels(q);
    {
        std::map<std::uint64_t, int> cp, cq;
        for (auto x : lp) cp[x]++;
        for (auto x : lq) cq[x]++;
        if (cp != cq) return res;  // None
    }

    // Candidate lists per p-vertex, smallest class first.
    std::map<std::uint64_t, std::vector<int>> q_class;
    for (int v = 0; v < n; ++v) q_class[lq[v]].push_back(v);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto sa = q_class[lp[a]].size(), sb = q_class[lp[b]].size();
        if (sa != sb) return sa < sb;
        return a < b;
    });

    std::vector<int> map_pq(n, -1), map_qp(n, -1);
    long long nodes = 0;
    bool budget_hit = false;

    auto consistent = [&](int a, int b) {
        // covers between a and every already-mapped vertex must match exactly
        for (int w : p.upper_covers(a))
            if (map_pq[w] >= 0 && !std::binary_search(q.upper_covers(b).begin(),
                                                      q.upper_covers(b).end(), map_pq[w]))
                return false;
        for (int w : p.lower_covers(a))
            if (map_pq[w] >= 0 && !std::binary_search(q.lower_covers(b).begin(),
                                                      q.lower_covers(b).end(), map_pq[w]))
                return false;
        for (int w : q.upper_covers(b))
            if (map_qp[w] >= 0 && !std::binary_search(p.upper_covers(a).begin(),
                                                      p.upper_covers(a).end(), map_qp[w]))
                return false;
        for (int w : q.lower_covers(b))
            if (map_qp[w] >= 0 && !std::binary_search(p.lower_covers(a).begin(),
                                                      p.lower_covers(a).end(), map_qp[w]))
                return false;
        return true;
    };

    std::function<bool(int)> extend = [&](int idx) -> bool {
        if (idx == n) return true;
        if (++nodes > node_budget) {
            budget_hit = true;
            return false;
        }
        int a = order[idx];
        for (int b : q_class[lp[a]]) {
            if (map_qp[b] >= 0 || lq[b] != lp[a]) continue;
            if (!consistent(a, b)) continue;
            map_pq[a] = b;
            map_qp[b] = a;
            if (extend(idx + 1)) return true;
            if (budget_hit) return false;
            map_pq[a] = -1;
            map_qp[b] = -1;
        }
        return false;
    };

    bool ok = extend(0);
    res.nodes_explored = nodes;
    if (ok) {
        // final safety check: covering relations correspond bijectively
        for (int a = 0; a < n; ++a) {
            if (p.upper_covers(a).size() != q.upper_covers(map_pq[a]).size()) ok = false;
            for (int w : p.upper_covers(a))
                if (!q.leq(map_pq[a], map_pq[w])) ok = false;
        }
    }
    if (ok) {
        res.status = IsoResult::Status::Found;
        res.mapping = map_pq;
    } else if (budget_hit) {
        res.status = IsoResult::Status::Inconclusive;
    }
    return res;
}

}  // namespace dowq
