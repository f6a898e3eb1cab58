#pragma once

// The Dowling lattice Q_n(r) and its restricted families Q_n(r,J),
// Q_n(r,d), Q_n(r,d,k), Q_n(r,d,k,J) as finite posets.
//
// Members: canonical G-partitions of {1..n} with labels mod r whose blocks
// all have size divisible by d and are k-evenly coloured (equal label
// counts in every residue class mod k), and whose zero block size avoids J.
// The natural minimum of Q_n(r) (all singletons) is struck exactly when
// d > 1 or 0 in J; a formal bottom with reserved key "BOT" is adjoined in
// that case.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dowq/errors.hpp"
#include "dowq/gpartition.hpp"
#include "dowq/poset.hpp"

namespace dowq {

struct FamilySpec {
    int n = 1;
    int r = 1;       // label modulus
    int d = 1;       // block sizes divisible by d
    int k = 1;       // k-evenly coloured; needs k | r and k | d
    std::set<int> forbidden_zero_sizes;  // J: |I| must avoid these

    bool operator==(const FamilySpec&) const = default;

    std::string to_string() const {
        std::string s = "Q_" + std::to_string(n) + "(" + std::to_string(r);
        if (d > 1 || k > 1) s += "," + std::to_string(d) + "," + std::to_string(k);
        if (!forbidden_zero_sizes.empty()) {
            s += ",{";
            bool first = true;
            for (int j : forbidden_zero_sizes) {
                if (!first) s += ",";
                s += std::to_string(j);
                first = false;
            }
            s += "}";
        }
        return s + ")";
    }
};

inline void validate(const FamilySpec& s) {
    if (s.n < 0) throw InvalidSpec("n must be >= 0");
    if (s.r < 1 || s.d < 1 || s.k < 1) throw InvalidSpec("r, d, k must be >= 1");
    if (s.r % s.k != 0) throw InvalidSpec("k must divide r in " + s.to_string());
    if (s.d % s.k != 0) throw InvalidSpec("k must divide d in " + s.to_string());
    for (int j : s.forbidden_zero_sizes)
        if (j < 0 || j > s.n) throw InvalidSpec("J entries must lie in {0..n}");
}

inline bool natural_bottom_included(const FamilySpec& s) {
    return s.d == 1 && !s.forbidden_zero_sizes.count(0);
}

inline bool block_k_even(const GBlock& b, int k, int) {
    if (k == 1) return true;
    std::vector<int> cnt(k, 0);
    for (int l : b.labels) cnt[l % k]++;
    for (int c : cnt)
        if (c != cnt[0]) return false;
    return true;
}

inline bool in_family(const GPartition& x, const FamilySpec& s) {
    if (x.n != s.n || x.modulus != s.r) return false;
    if (s.forbidden_zero_sizes.count(static_cast<int>(x.zero_block.size()))) return false;
    for (const auto& b : x.blocks) {
        if (b.support.size() % s.d != 0) return false;
        if (!block_k_even(b, s.k, s.r)) return false;
    }
    return true;
}

namespace detail {

// All (zero set, partition) shapes by restricted growth, then all label
// assignments with the minimum of each block pinned to 0.
inline void enumerate_labelled(const FamilySpec& s, std::vector<GPartition>& out) {
    const int n = s.n, r = s.r;
    std::vector<int> zero;
    std::vector<std::vector<int>> parts;

    std::function<void()> labels_and_emit = [&]() {
        if (s.forbidden_zero_sizes.count(static_cast<int>(zero.size()))) return;
        for (const auto& p : parts)
            if (p.size() % s.d != 0) return;
        // per-block label odometer, min element fixed at 0
        std::vector<GBlock> blocks(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            blocks[i].support = parts[i];
            blocks[i].labels.assign(parts[i].size(), 0);
        }
        std::function<void(std::size_t, std::size_t)> assign = [&](std::size_t bi, std::size_t ei) {
            if (bi == blocks.size()) {
                GPartition g;
                g.n = n;
                g.modulus = r;
                g.zero_block = zero;
                g.blocks = blocks;
                if (in_family(g, s)) out.push_back(g);
                return;
            }
            if (ei == blocks[bi].support.size()) {
                if (!block_k_even(blocks[bi], s.k, r)) return;  // prune block-wise
                assign(bi + 1, 1);
                return;
            }
            for (int l = 0; l < r; ++l) {
                blocks[bi].labels[ei] = l;
                assign(bi, ei + 1);
            }
        };
        assign(0, 1);
    };

    std::function<void(int)> grow = [&](int e) {
        if (e == n) {
            labels_and_emit();
            return;
        }
        zero.push_back(e);
        grow(e + 1);
        zero.pop_back();
        for (auto& p : parts) {
            p.push_back(e);
            grow(e + 1);
            p.pop_back();
        }
        parts.push_back({e});
        grow(e + 1);
        parts.pop_back();
    };
    grow(0);
}

}  // namespace detail

// Family members in canonical key order, the formal bottom excluded.
inline std::vector<GPartition> family_elements(const FamilySpec& s) {
    validate(s);
    std::vector<GPartition> out;
    detail::enumerate_labelled(s, out);
    std::sort(out.begin(), out.end(), [](const GPartition& a, const GPartition& b) {
        return canonical_key(a) < canonical_key(b);
    });
    return out;
}

// Rank inside the family:
//   BOT                      -> 0
//   d == 1                   -> n - |pi|       (Q_n(r) and every Q_n(r,J))
//   d > 1                    -> floor(n/d) + 1 - |pi|,
//                               one less for J={0}, n = 0 mod d and
//                               J={1}, n = 1 mod d.
inline int rank_in_family(const GPartition& x, const FamilySpec& s) {
    validate(s);
    if (!in_family(x, s)) throw NotInFamily(canonical_key(x) + " not in " + s.to_string());
    if (s.d == 1) return s.n - x.block_count();
    int rk = s.n / s.d + 1 - x.block_count();
    const auto& J = s.forbidden_zero_sizes;
    if ((J == std::set<int>{0} && s.n % s.d == 0) || (J == std::set<int>{1} && s.n % s.d == 1))
        rk -= 1;
    return rk;
}

inline const char* kBottomKey = "BOT";

// The family as a FinitePoset, ordered by gp_leq, with "BOT" prepended when
// the natural minimum is struck.  Rank function attached when it is valid
// (always for J in {{}, {0}, {1}}).
inline FinitePoset build_family(const FamilySpec& s) {
    auto members = family_elements(s);
    bool artificial = !natural_bottom_included(s);
    std::vector<std::string> keys;
    if (artificial) keys.push_back(kBottomKey);
    for (const auto& g : members) keys.push_back(canonical_key(g));
    const int off = artificial ? 1 : 0;
    std::vector<std::pair<int, int>> rel;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (artificial) rel.emplace_back(0, static_cast<int>(i) + off);
        for (std::size_t j = 0; j < members.size(); ++j)
            if (i != j && gp_leq(members[i], members[j]))
                rel.emplace_back(static_cast<int>(i) + off, static_cast<int>(j) + off);
    }
    FinitePoset p = FinitePoset::from_covers(std::move(keys), rel);
    std::vector<int> ranks;
    if (artificial) ranks.push_back(0);
    for (const auto& g : members) ranks.push_back(rank_in_family(g, s));
    try {
        p.attach_ranks(std::move(ranks));
    } catch (const std::invalid_argument&) {
        // general J can break gradedness; leave the poset unranked then
    }
    return p;
}

// Number of atoms of the bounded family poset (elements of rank 1, sitting
// just above the bottom, formal or natural).
inline long long count_atoms(const FamilySpec& s) {
    auto members = family_elements(s);
    bool artificial = !natural_bottom_included(s);
    long long atoms = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!artificial && members[i].block_count() == s.n) continue;  // the natural bottom
        bool minimal = true;
        for (std::size_t j = 0; j < members.size() && minimal; ++j) {
            if (i == j) continue;
            if (!artificial && members[j].block_count() == s.n) continue;
            if (gp_leq(members[j], members[i])) minimal = false;
        }
        atoms += minimal;
    }
    return atoms;
}

// The distinguished single-block element of Q_dn(r, d, k): support {1..dn},
// labels 1..k in consecutive runs of dn/k (canonicalization shifts them).
inline GPartition c_element(int dn, int r, int d, int k) {
    if (dn <= 0 || dn % d != 0) throw InvalidSpec("c_element needs d | dn, dn > 0");
    GBlock b;
    for (int i = 0; i < dn; ++i) {
        b.support.push_back(i);
        b.labels.push_back(static_cast<int>(static_cast<long long>(i) * k / dn) + 1);
    }
    return canonicalize(dn, r, {}, {b});
}

}  // namespace dowq
