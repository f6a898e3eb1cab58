#pragma once

// Canonical G-partitions for a cyclic label group Z/m: a zero block plus
// labelled blocks, labels normalized per block so the minimum element of
// each support carries label 0.  Elements are 0-based internally; canonical
// key strings print them 1-based.
//
// The covering relation is generated by merges: absorbing a block into the
// zero block, or uniting two blocks with one of m relative label shifts.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dowq/errors.hpp"

namespace dowq {

struct GBlock {
    std::vector<int> support;  // ascending
    std::vector<int> labels;   // parallel to support; labels[0] == 0 canonically

    bool operator==(const GBlock&) const = default;
};

struct GPartition {
    int n = 0;
    int modulus = 1;
    std::vector<int> zero_block;  // ascending
    std::vector<GBlock> blocks;   // sorted by support.front()

    int block_count() const { return static_cast<int>(blocks.size()); }

    bool operator==(const GPartition& o) const = default;
    bool operator<(const GPartition& o) const {
        if (zero_block != o.zero_block) return zero_block < o.zero_block;
        auto proj = [](const GPartition& g) {
            std::vector<std::pair<std::vector<int>, std::vector<int>>> v;
            for (const auto& b : g.blocks) v.emplace_back(b.support, b.labels);
            return v;
        };
        return proj(*this) < proj(o);
    }
};

inline GPartition canonicalize(int n, int modulus, std::vector<int> zero_block,
                               std::vector<GBlock> raw_blocks) {
    if (n < 0 || modulus < 1) throw NotAPartition("bad ground set or modulus");
    std::vector<char> seen(n, 0);
    auto mark = [&](int e) {
        if (e < 0 || e >= n || seen[e]) throw NotAPartition("element " + std::to_string(e + 1) +
                                                            " repeated or out of range");
        seen[e] = 1;
    };
    for (int e : zero_block) mark(e);
    for (auto& b : raw_blocks) {
        if (b.support.empty()) throw NotAPartition("empty nonzero block");
        if (b.support.size() != b.labels.size()) throw NotAPartition("labels do not match support");
        for (int e : b.support) mark(e);
    }
    for (int e = 0; e < n; ++e)
        if (!seen[e]) throw NotAPartition("element " + std::to_string(e + 1) + " not covered");

    GPartition g;
    g.n = n;
    g.modulus = modulus;
    g.zero_block = std::move(zero_block);
    std::sort(g.zero_block.begin(), g.zero_block.end());
    for (auto& b : raw_blocks) {
        std::vector<int> idx(b.support.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int c) { return b.support[a] < b.support[c]; });
        GBlock nb;
        for (int i : idx) {
            nb.support.push_back(b.support[i]);
            nb.labels.push_back(((b.labels[i] % modulus) + modulus) % modulus);
        }
        int shift = nb.labels[0];
        for (int& l : nb.labels) l = ((l - shift) % modulus + modulus) % modulus;
        g.blocks.push_back(std::move(nb));
    }
    std::sort(g.blocks.begin(), g.blocks.end(),
              [](const GBlock& a, const GBlock& b) { return a.support.front() < b.support.front(); });
    return g;
}

inline GPartition gp_bottom(int n, int modulus) {
    GPartition g;
    g.n = n;
    g.modulus = modulus;
    for (int e = 0; e < n; ++e) g.blocks.push_back({{e}, {0}});
    return g;
}

inline GPartition gp_top(int n, int modulus) {
    GPartition g;
    g.n = n;
    g.modulus = modulus;
    for (int e = 0; e < n; ++e) g.zero_block.push_back(e);
    return g;
}

// "I={1,3}|B={2:0,4:1}|B={5:0,6:2}": elements ascending (printed 1-based),
// labels as integers mod modulus.  This string is the poset element key.
inline std::string canonical_key(const GPartition& g) {
    std::string s = "I={";
    for (std::size_t i = 0; i < g.zero_block.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(g.zero_block[i] + 1);
    }
    s += '}';
    for (const auto& b : g.blocks) {
        s += "|B={";
        for (std::size_t i = 0; i < b.support.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(b.support[i] + 1) + ':' + std::to_string(b.labels[i]);
        }
        s += '}';
    }
    return s;
}

// Inverse of canonical_key.  The modulus is not recoverable from the string
// and must be supplied.
inline GPartition parse_key(const std::string& key, int n, int modulus) {
    auto fail = [&]() { return NotAFamilyPoset("cannot parse key '" + key + "'"); };
    std::size_t pos = 0;
    auto expect = [&](const std::string& tok) {
        if (key.compare(pos, tok.size(), tok) != 0) throw fail();
        pos += tok.size();
    };
    auto read_int = [&]() {
        std::size_t start = pos;
        while (pos < key.size() && (std::isdigit(static_cast<unsigned char>(key[pos])))) ++pos;
        if (pos == start) throw fail();
        return std::stoi(key.substr(start, pos - start));
    };
    std::vector<int> zero;
    std::vector<GBlock> blocks;
    expect("I={");
    if (pos < key.size() && key[pos] != '}') {
        while (true) {
            zero.push_back(read_int() - 1);
            if (key[pos] == ',') {
                ++pos;
                continue;
            }
            break;
        }
    }
    expect("}");
    while (pos < key.size()) {
        expect("|B={");
        GBlock b;
        while (true) {
            b.support.push_back(read_int() - 1);
            expect(":");
            b.labels.push_back(read_int());
            if (key[pos] == ',') {
                ++pos;
                continue;
            }
            break;
        }
        expect("}");
        blocks.push_back(std::move(b));
    }
    return canonicalize(n, modulus, std::move(zero), std::move(blocks));
}

// All covers of x in Q_n(modulus): one zero-merge per block and modulus
// merges per unordered pair of blocks, deduplicated after canonicalization.
inline std::vector<GPartition> merges(const GPartition& x) {
    std::set<GPartition> out;
    const int k = x.block_count();
    for (int i = 0; i < k; ++i) {
        std::vector<int> zero = x.zero_block;
        zero.insert(zero.end(), x.blocks[i].support.begin(), x.blocks[i].support.end());
        std::vector<GBlock> rest;
        for (int j = 0; j < k; ++j)
            if (j != i) rest.push_back(x.blocks[j]);
        out.insert(canonicalize(x.n, x.modulus, std::move(zero), std::move(rest)));
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int g = 0; g < x.modulus; ++g) {
                GBlock merged = x.blocks[i];
                for (std::size_t t = 0; t < x.blocks[j].support.size(); ++t) {
                    merged.support.push_back(x.blocks[j].support[t]);
                    merged.labels.push_back((x.blocks[j].labels[t] + g) % x.modulus);
                }
                std::vector<GBlock> rest;
                rest.push_back(std::move(merged));
                for (int t = 0; t < k; ++t)
                    if (t != i && t != j) rest.push_back(x.blocks[t]);
                out.insert(canonicalize(x.n, x.modulus, x.zero_block, std::move(rest)));
            }
    return {out.begin(), out.end()};
}

// x <= y in the merge order, decided directly: zero block containment plus
// every block of x lying inside the zero block of y or inside a single
// block of y with labels agreeing up to one constant shift.
inline bool gp_leq(const GPartition& x, const GPartition& y) {
    if (x.n != y.n || x.modulus != y.modulus)
        throw IncompatibleModulus("gp_leq across different ground sets or moduli");
    const int m = x.modulus;
    std::vector<int> owner(x.n, -1);  // element -> block index in y, -1 for zero block
    std::vector<int> label_in_y(x.n, 0);
    for (int j = 0; j < y.block_count(); ++j)
        for (std::size_t t = 0; t < y.blocks[j].support.size(); ++t) {
            owner[y.blocks[j].support[t]] = j;
            label_in_y[y.blocks[j].support[t]] = y.blocks[j].labels[t];
        }
    for (int e : x.zero_block)
        if (owner[e] != -1) return false;
    for (const auto& b : x.blocks) {
        int o = owner[b.support[0]];
        if (o == -1) {
            for (int e : b.support)
                if (owner[e] != -1) return false;
            continue;
        }
        int shift = ((label_in_y[b.support[0]] - b.labels[0]) % m + m) % m;
        for (std::size_t t = 0; t < b.support.size(); ++t) {
            int e = b.support[t];
            if (owner[e] != o) return false;
            if (((b.labels[t] + shift) % m) != label_in_y[e]) return false;
        }
    }
    return true;
}

// Join in Q_n(modulus): combine both constraint systems by union-find with
// label potentials; classes whose relations become inconsistent collapse
// into the zero block, as do classes touching either zero block.
inline GPartition gp_join(const GPartition& x, const GPartition& y) {
    if (x.n != y.n || x.modulus != y.modulus)
        throw IncompatibleModulus("gp_join across different ground sets or moduli");
    const int n = x.n, m = x.modulus;
    std::vector<int> parent(n), pot(n, 0);  // label(e) - label(root) mod m
    std::vector<char> zeroed(n, 0);
    for (int e = 0; e < n; ++e) parent[e] = e;

    std::function<std::pair<int, int>(int)> find = [&](int e) -> std::pair<int, int> {
        if (parent[e] == e) return {e, 0};
        auto [r, p] = find(parent[e]);
        parent[e] = r;
        pot[e] = (pot[e] + p) % m;
        return {r, pot[e]};
    };
    auto unite = [&](int a, int b, int delta) {  // label(b) - label(a) = delta
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if (((pb - pa) % m + m) % m != ((delta % m) + m) % m)
                zeroed[ra] = 1;  // inconsistent relation forces the class to 0
            return;
        }
        parent[rb] = ra;
        pot[rb] = (((pa + delta - pb) % m) + m) % m;
        zeroed[ra] = zeroed[ra] | zeroed[rb];
    };

    for (const GPartition* g : {&x, &y}) {
        for (const auto& b : g->blocks)
            for (std::size_t t = 1; t < b.support.size(); ++t)
                unite(b.support[0], b.support[t], b.labels[t] - b.labels[0]);
        for (int e : g->zero_block) zeroed[find(e).first] = 1;
    }

    std::vector<int> zero;
    std::map<int, GBlock> cls;
    for (int e = 0; e < n; ++e) {
        auto [r, p] = find(e);
        if (zeroed[r]) {
            zero.push_back(e);
        } else {
            cls[r].support.push_back(e);
            cls[r].labels.push_back(p);
        }
    }
    std::vector<GBlock> blocks;
    for (auto& [r, b] : cls) blocks.push_back(std::move(b));
    return canonicalize(n, m, std::move(zero), std::move(blocks));
}

// Left action of the wreath product: (g; sigma) . (i, a) = (sigma(i),
// g[sigma(i)] + a); the zero block moves by sigma alone.
inline GPartition wreath_act(const std::vector<int>& g, const std::vector<int>& sigma,
                             const GPartition& x) {
    const int n = x.n, m = x.modulus;
    if (static_cast<int>(g.size()) != n || static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("wreath_act: wrong arity");
    std::vector<int> zero;
    for (int e : x.zero_block) zero.push_back(sigma[e]);
    std::vector<GBlock> blocks;
    for (const auto& b : x.blocks) {
        GBlock nb;
        for (std::size_t t = 0; t < b.support.size(); ++t) {
            int img = sigma[b.support[t]];
            nb.support.push_back(img);
            nb.labels.push_back(((g[img] + b.labels[t]) % m + m) % m);
        }
        blocks.push_back(std::move(nb));
    }
    return canonicalize(n, m, std::move(zero), std::move(blocks));
}

// Type (b; a_1..a_n): zero block size then block-size counts.
inline std::vector<int> type_of(const GPartition& g) {
    std::vector<int> t(g.n + 1, 0);
    t[0] = static_cast<int>(g.zero_block.size());
    for (const auto& b : g.blocks) t[static_cast<int>(b.support.size())]++;
    return t;
}

}  // namespace dowq
