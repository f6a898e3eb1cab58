#pragma once

// Order complexes (all chains of a poset) and reduced rational homology
// ranks via boundary-matrix reduction.
//
// Ranks are certified exactly: the reduction first runs over Z/p for a
// large prime p.  Universal coefficients give b_i(Q) <= b_i(Z/p), and the
// alternating sum of either equals the (exactly counted) reduced Euler
// characteristic.  So whenever the mod-p Betti vector has at most one
// nonzero entry, the rational Betti vector is pinned down exactly.  Inputs
// that fail that test (non-Cohen-Macaulay complexes) fall back to the same
// reduction over exact rationals.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dowq/exact.hpp"
#include "dowq/poset.hpp"

namespace dowq {

struct OrderComplex {
    // faces[k] = the k-dimensional faces, i.e. chains of k+1 poset elements,
    // each listed in increasing poset order.  dim() == -1 for the empty
    // complex (no vertices; the empty face is always implicit).
    std::vector<std::vector<std::vector<int>>> faces;

    int dim() const { return static_cast<int>(faces.size()) - 1; }
    long long face_count(int k) const {
        if (k == -1) return 1;
        if (k < -1 || k > dim()) return 0;
        return static_cast<long long>(faces[k].size());
    }
    // Reduced Euler characteristic, empty face included.
    Int reduced_euler() const {
        Int chi = -1;
        int sign = 1;
        for (const auto& level : faces) {
            chi += sign * Int(static_cast<long>(level.size()));
            sign = -sign;
        }
        return chi;
    }
};

inline OrderComplex order_complex(const FinitePoset& p) {
    OrderComplex c;
    const int n = p.size();
    if (n == 0) return c;
    // Strict up-lists in topological position order keep every generated
    // chain sorted by the poset order.
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[p.topo_order()[i]] = i;
    std::vector<std::vector<int>> ups(n);
    for (int v = 0; v < n; ++v) {
        p.up_set(v).for_each([&](std::size_t w) {
            if (static_cast<int>(w) != v) ups[v].push_back(static_cast<int>(w));
        });
        std::sort(ups[v].begin(), ups[v].end(), [&](int a, int b) { return pos[a] < pos[b]; });
    }
    c.faces.emplace_back();
    for (int v = 0; v < n; ++v) c.faces[0].push_back({v});
    while (true) {
        std::vector<std::vector<int>> next;
        for (const auto& f : c.faces.back())
            for (int w : ups[f.back()]) {
                auto g = f;
                g.push_back(w);
                next.push_back(std::move(g));
            }
        if (next.empty()) break;
        c.faces.push_back(std::move(next));
    }
    return c;
}

struct BettiVector {
    // Rank of reduced homology in dimension -1 (1 exactly for the empty
    // complex) kept apart from the per-dimension ranks.
    int minus_one = 0;
    std::vector<long long> ranks;  // index i = reduced rank in dimension i

    bool operator==(const BettiVector& o) const = default;
};

namespace detail {

constexpr std::uint64_t kHomologyPrime = 2147483647ull;  // 2^31 - 1

struct Fp {
    std::uint64_t v = 0;
    Fp() = default;
    explicit Fp(long long x) {
        long long m = x % static_cast<long long>(kHomologyPrime);
        if (m < 0) m += kHomologyPrime;
        v = static_cast<std::uint64_t>(m);
    }
    bool is_zero() const { return v == 0; }
    friend Fp operator*(Fp a, Fp b) {
        Fp r;
        r.v = (a.v * b.v) % kHomologyPrime;
        return r;
    }
    friend Fp operator-(Fp a, Fp b) {
        Fp r;
        r.v = (a.v + kHomologyPrime - b.v) % kHomologyPrime;
        return r;
    }
    Fp inv() const {
        // Fermat
        std::uint64_t base = v, e = kHomologyPrime - 2, acc = 1;
        while (e) {
            if (e & 1) acc = (acc * base) % kHomologyPrime;
            base = (base * base) % kHomologyPrime;
            e >>= 1;
        }
        Fp r;
        r.v = acc;
        return r;
    }
};

struct RatField {
    Rat v;
    RatField() : v(0) {}
    explicit RatField(long long x) : v(static_cast<long>(x)) {}
    bool is_zero() const { return v == 0; }
    friend RatField operator*(RatField a, const RatField& b) {
        a.v *= b.v;
        return a;
    }
    friend RatField operator-(RatField a, const RatField& b) {
        a.v -= b.v;
        return a;
    }
    RatField inv() const {
        RatField r;
        r.v = 1 / v;
        return r;
    }
};

struct FaceKeyHash {
    std::size_t operator()(const std::vector<int>& f) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : f) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Column reduction of the full boundary matrix, columns ordered by
// dimension.  Returns rank of each boundary map; ranks[k] = rank of
// d_k : C_k -> C_{k-1}, with C_{-1} spanned by the empty face.
template <typename F>
std::vector<long long> boundary_ranks(const OrderComplex& c) {
    using Column = std::vector<std::pair<long long, F>>;  // sorted by row id
    const int dim = c.dim();
    std::vector<long long> rank(dim + 1, 0);
    if (dim < 0) return rank;

    // Global ids: empty face 0, then faces by dimension.
    std::vector<long long> id_base(dim + 1);
    long long next_id = 1;
    std::vector<std::unordered_map<std::vector<int>, long long, FaceKeyHash>> lookup(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        id_base[k] = next_id;
        for (const auto& f : c.faces[k]) lookup[k].emplace(f, next_id++);
    }

    std::vector<long long> pivot_owner(next_id, -1);
    std::unordered_map<long long, Column> stored;  // pivot column id -> reduced column
    std::vector<int> scratch;

    for (int k = 0; k <= dim; ++k) {
        for (const auto& f : c.faces[k]) {
            Column col;
            if (k == 0) {
                col.push_back({0, F(1)});
            } else {
                int sign = 1;
                // boundary faces in ascending row id order are not automatic;
                // collect then sort.
                for (std::size_t drop = 0; drop < f.size(); ++drop) {
                    scratch.assign(f.begin(), f.end());
                    scratch.erase(scratch.begin() + static_cast<long>(drop));
                    auto it = lookup[k - 1].find(scratch);
                    col.push_back({it->second, F(sign)});
                    sign = -sign;
                }
                std::sort(col.begin(), col.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
            }
            while (!col.empty()) {
                long long low = col.back().first;
                long long owner = pivot_owner[low];
                if (owner < 0) {
                    pivot_owner[low] = lookup[k].at(f);
                    stored[lookup[k].at(f)] = col;
                    rank[k]++;
                    break;
                }
                const Column& oc = stored[owner];
                F factor = col.back().second * oc.back().second.inv();
                // col -= factor * oc  (merge of sorted sparse vectors)
                Column merged;
                merged.reserve(col.size() + oc.size());
                std::size_t i = 0, j = 0;
                while (i < col.size() || j < oc.size()) {
                    if (j == oc.size() || (i < col.size() && col[i].first < oc[j].first)) {
                        merged.push_back(col[i++]);
                    } else if (i == col.size() || oc[j].first < col[i].first) {
                        merged.push_back({oc[j].first, F(0) - factor * oc[j].second});
                        ++j;
                    } else {
                        F val = col[i].second - factor * oc[j].second;
                        if (!val.is_zero()) merged.push_back({col[i].first, val});
                        ++i, ++j;
                    }
                }
                col = std::move(merged);
            }
        }
    }
    return rank;
}

inline BettiVector betti_from_ranks(const OrderComplex& c, const std::vector<long long>& rank) {
    BettiVector b;
    const int dim = c.dim();
    if (dim < 0) {
        b.minus_one = 1;
        return b;
    }
    b.minus_one = static_cast<int>(1 - rank[0]);
    b.ranks.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        long long higher = (k + 1 <= dim) ? rank[k + 1] : 0;
        b.ranks[k] = c.face_count(k) - rank[k] - higher;
    }
    return b;
}

}  // namespace detail

// Reduced rational Betti numbers of an order complex, exact.
inline BettiVector homology_ranks(const OrderComplex& c) {
    BettiVector modp = detail::betti_from_ranks(c, detail::boundary_ranks<detail::Fp>(c));
    int nonzero = modp.minus_one != 0 ? 1 : 0;
    for (long long r : modp.ranks)
        if (r != 0) ++nonzero;
    if (nonzero <= 1) return modp;  // certified: see header comment
    return detail::betti_from_ranks(c, detail::boundary_ranks<detail::RatField>(c));
}

inline BettiVector homology_ranks(const FinitePoset& p) { return homology_ranks(order_complex(p)); }

}  // namespace dowq
