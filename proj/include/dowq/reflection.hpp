#pragma once

// The imprimitive reflection cosets gamma G(r,p,n) with gamma =
// diag(xi_{er/p}, 1, ..., 1), their zeta-eigenspace posets under reverse
// inclusion, and the case-by-case comparison against the d-divisible,
// d-evenly coloured families.
//
// Roots of unity are exponents modulo L = lcm(m, r) = d*r; every identity
// used below is a congruence, never a float.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "dowq/errors.hpp"
#include "dowq/exact.hpp"
#include "dowq/family.hpp"
#include "dowq/gpartition.hpp"
#include "dowq/isomorphism.hpp"
#include "dowq/poset.hpp"

namespace dowq {

// e^{2 pi i num / mod} with 0 <= num < mod; products are exponent sums.
struct RootExp {
    long long num = 0;
    long long mod = 1;

    RootExp() = default;
    RootExp(long long n, long long m) : num(((n % m) + m) % m), mod(m) {}

    bool is_one() const { return num == 0; }
    RootExp pow(long long k) const {
        long long v = (num % mod) * (k % mod) % mod;
        return RootExp(v, mod);
    }
    friend RootExp operator*(const RootExp& a, const RootExp& b) {
        if (a.mod != b.mod) throw IncompatibleModulus("root moduli differ");
        return RootExp(a.num + b.num, a.mod);
    }
    RootExp inverse() const { return RootExp(-num, mod); }
    long long order() const { return mod / std::gcd(num == 0 ? mod : num, mod); }
    bool operator==(const RootExp&) const = default;
};

// e_i |-> diag[sigma(i)] * e_{sigma(i)}; all diagonal entries share modulus.
struct MonomialMap {
    int n = 0;
    std::vector<int> sigma;           // 0-based permutation, i -> sigma[i]
    std::vector<long long> diag_exp;  // exponents mod `mod`
    long long mod = 1;
};

struct CosetParams {
    int r = 1, p = 1, n = 1, e = 1, m = 1;
    // derived
    int d = 1;
    long long L = 1;            // common exponent modulus, = d*r
    long long zeta_exp = 0;     // primitive m-th root
    long long omega_exp = 0;    // primitive r-th root
    long long xi_erp_exp = 0;   // primitive (er/p)-th root
    long long xi_e_exp = 0;     // primitive e-th root

    static CosetParams make(int r, int p, int n, int e, int m) {
        if (r < 1 || p < 1 || n < 1 || e < 1 || m < 1) throw InvalidSpec("coset parameters must be >= 1");
        if (r % p != 0) throw InvalidSpec("p must divide r");
        if (p % e != 0) throw InvalidSpec("e must divide p");
        CosetParams c;
        c.r = r;
        c.p = p;
        c.n = n;
        c.e = e;
        c.m = m;
        c.d = m / std::gcd(m, r);
        c.L = static_cast<long long>(c.d) * r;  // = lcm(m, r)
        c.zeta_exp = (c.L / m) % c.L;
        c.omega_exp = (c.L / r) % c.L;
        c.xi_erp_exp = (c.L / (static_cast<long long>(e) * r / p)) % c.L;
        c.xi_e_exp = (c.L / e) % c.L;
        return c;
    }

    RootExp zeta() const { return RootExp(zeta_exp, L); }
    std::string to_string() const {
        return "gamma G(" + std::to_string(r) + "," + std::to_string(p) + "," + std::to_string(n) +
               "), e=" + std::to_string(e) + ", m=" + std::to_string(m);
    }
};

// The coset gamma G(r,p,n) as monomial maps, sigma in lexicographic order
// and exponent vectors in odometer order within each sigma; exactly
// r^n n!/p maps.  Membership of (theta; sigma) in G(r,p,n) is
// sum(theta) = 0 mod p; gamma multiplies coordinate 1 by xi_{er/p}.
inline std::vector<MonomialMap> enumerate_coset(const CosetParams& c) {
    std::vector<MonomialMap> out;
    std::vector<int> sigma(c.n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        std::vector<int> theta(c.n, 0);
        while (true) {
            int total = 0;
            for (int t : theta) total += t;
            if (total % c.p == 0) {
                MonomialMap x;
                x.n = c.n;
                x.sigma = sigma;
                x.mod = c.L;
                x.diag_exp.resize(c.n);
                for (int j = 0; j < c.n; ++j) {
                    long long ex = static_cast<long long>(theta[j]) * c.omega_exp;
                    if (j == 0) ex += c.xi_erp_exp;
                    x.diag_exp[j] = ex % c.L;
                }
                out.push_back(std::move(x));
            }
            int i = 0;
            while (i < c.n && theta[i] == c.r - 1) theta[i++] = 0;
            if (i == c.n) break;
            theta[i]++;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

// The zeta-eigenspace of x as a canonical G-partition with labels mod
// d*r = lcm(ord(zeta), r).  A cycle (j_1 ... j_k) of sigma contributes a
// block iff zeta^k equals its diagonal cycle-product; the labels follow
//   label(j_1) = 0,  label(j_{s+1}) = label(j_s) - e_zeta + e_diag(j_{s+1}).
// Coordinates of non-solving cycles land in the zero block.
inline GPartition eigenspace(const MonomialMap& x, const RootExp& zeta, int r) {
    if (zeta.mod != x.mod) throw IncompatibleModulus("zeta modulus differs from map modulus");
    const long long L = x.mod;
    const long long m = zeta.order();
    const int d = static_cast<int>(m / std::gcd(m, static_cast<long long>(r)));
    const long long dr = static_cast<long long>(d) * r;
    if (L % dr != 0) throw IncompatibleModulus("map modulus incompatible with d*r");
    const long long scale = L / dr;

    std::vector<char> done(x.n, 0);
    std::vector<int> zero;
    std::vector<GBlock> blocks;
    for (int start = 0; start < x.n; ++start) {
        if (done[start]) continue;
        std::vector<int> cycle{start};
        done[start] = 1;
        for (int j = x.sigma[start]; j != start; j = x.sigma[j]) {
            cycle.push_back(j);
            done[j] = 1;
        }
        long long prod = 0;
        for (int j : cycle) prod = (prod + x.diag_exp[j]) % L;
        long long k_zeta = (zeta.num % L) * (static_cast<long long>(cycle.size()) % L) % L;
        if (prod == k_zeta) {
            if (cycle.size() % d != 0)
                throw ColouringViolation("solvable cycle length not divisible by d");
            GBlock b;
            long long lab = 0;
            b.support.push_back(cycle[0]);
            b.labels.push_back(0);
            for (std::size_t s = 1; s < cycle.size(); ++s) {
                lab = ((lab - zeta.num + x.diag_exp[cycle[s]]) % L + L) % L;
                if (lab % scale != 0) throw ColouringViolation("label is not a (d*r)-th root");
                b.support.push_back(cycle[s]);
                b.labels.push_back(static_cast<int>(lab / scale));
            }
            blocks.push_back(std::move(b));
        } else {
            for (int j : cycle) zero.push_back(j);
        }
    }
    return canonicalize(x.n, static_cast<int>(dr), std::move(zero), std::move(blocks));
}

// tau is realized by construction; this asserts the d-even colouring that
// membership in Q_n(dr, d, d) requires and hands the partition back.
inline GPartition tau(const GPartition& es, int d) {
    for (const auto& b : es.blocks) {
        if (b.support.size() % d != 0)
            throw ColouringViolation("block size not divisible by d in " + canonical_key(es));
        if (!block_k_even(b, d, es.modulus))
            throw ColouringViolation("block not d-evenly coloured in " + canonical_key(es));
    }
    return es;
}

// Distinct eigenspaces over the whole coset, ordered by reverse inclusion
// (which is exactly gp_leq on the tau images).
inline FinitePoset build_eigenposet(const CosetParams& c) {
    std::map<std::string, GPartition> members;
    for (const auto& x : enumerate_coset(c)) {
        GPartition es = tau(eigenspace(x, c.zeta(), c.r), c.d);
        members.emplace(canonical_key(es), std::move(es));
    }
    std::vector<std::string> keys;
    std::vector<const GPartition*> elems;
    for (auto& [k, g] : members) {
        keys.push_back(k);
        elems.push_back(&g);
    }
    std::vector<std::pair<int, int>> rel;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j && gp_leq(*elems[i], *elems[j]))
                rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return FinitePoset::from_covers(std::move(keys), rel);
}

// Case analysis of the eigenposet isomorphism: which family the poset
// matches, and whether the family's formal bottom must be stripped first.
struct CaseInfo {
    int case_no = 0;  // 1..6
    FamilySpec target;
    bool strip_bottom = false;
};

inline bool xi_condition(const CosetParams& c) {
    // (zeta^n xi_{er/p}^{-1})^{r/p} == 1, as exponents mod L
    long long base = ((static_cast<long long>(c.n) * c.zeta_exp - c.xi_erp_exp) % c.L + c.L) % c.L;
    return (base * (c.r / c.p)) % c.L == 0;
}

inline CaseInfo classify_case(const CosetParams& c) {
    CaseInfo info;
    const bool cond = xi_condition(c);
    if (c.d > 1) {
        if (c.n % c.d == 0 && !cond) {
            info.case_no = 1;
            info.target = FamilySpec{c.n, c.d * c.r, c.d, c.d, {0}};
            info.strip_bottom = true;
        } else {
            info.case_no = 2;
            info.target = FamilySpec{c.n, c.d * c.r, c.d, c.d, {}};
            info.strip_bottom = true;
        }
        return info;
    }
    if (!cond) {
        info.case_no = 3;
        info.target = FamilySpec{c.n, c.r, 1, 1, {0}};
        info.strip_bottom = true;
    } else if (c.r == c.p && c.r != 1) {
        // with r = p the xi-condition already says zeta^n = xi_e
        info.case_no = 4;
        info.target = FamilySpec{c.n, c.r, 1, 1, {1}};
    } else if (c.r == 1 && c.p == 1) {
        info.case_no = 5;
        info.target = FamilySpec{c.n - 1, 1, 1, 1, {}};
    } else {
        info.case_no = 6;
        info.target = FamilySpec{c.n, c.r, 1, 1, {}};
    }
    return info;
}

// The full space V is an eigenspace iff diag(zeta,...,zeta) lies in the
// coset, which happens iff the xi-condition holds and d = 1.
inline bool full_space_present(const CosetParams& c) { return xi_condition(c) && c.d == 1; }

// Scalar-multiple normalizer: the eigenspace poset of alpha * (gamma G) at
// zeta equals that of gamma G at alpha^{-1} zeta, so scaled cosets reduce
// to the stated diagonal form by shifting the eigenvalue.
inline RootExp normalized_eigenvalue(const RootExp& alpha, const RootExp& zeta) {
    return alpha.inverse() * zeta;
}

// Remove the unique maximum, remove the minimum exactly when the full
// space is an eigenspace (an accidental unique minimal element that is a
// proper subspace stays), then adjoin fresh bounds.  The result is the
// poset whose Mobius value equals the top reduced homology rank.
inline FinitePoset hat_tilde(const FinitePoset& s, bool full_space_in_poset) {
    int t = s.unique_max();
    if (t < 0) throw NoUniqueMax("eigenspace poset lacks a unique maximal element");
    std::vector<int> keep;
    for (int v = 0; v < s.size(); ++v)
        if (v != t) keep.push_back(v);
    FinitePoset mid = s.induced(keep);
    if (full_space_in_poset && mid.size() > 0) {
        int b = mid.unique_min();
        if (b < 0) throw NotBounded("full space present but no unique minimal element");
        std::vector<int> keep2;
        for (int v = 0; v < mid.size(); ++v)
            if (v != b) keep2.push_back(v);
        mid = mid.induced(keep2);
    }
    return mid.adjoin_bounds();
}

inline FinitePoset hat_tilde(const FinitePoset& s, const CosetParams& c) {
    return hat_tilde(s, full_space_present(c));
}

// Partitions of {1..n} (modulus 1, empty zero block) turned into the
// G-partitions of {1..n-1} over the trivial group: the block containing n
// becomes the zero block.  This is the Pi_n = Q_{n-1}(1) identification.
inline GPartition partition_drop_last(const GPartition& g) {
    const int n = g.n;
    std::vector<int> zero;
    std::vector<GBlock> blocks;
    for (const auto& b : g.blocks) {
        if (std::find(b.support.begin(), b.support.end(), n - 1) != b.support.end()) {
            for (int e : b.support)
                if (e != n - 1) zero.push_back(e);
        } else {
            GBlock nb;
            nb.support = b.support;
            nb.labels.assign(b.support.size(), 0);
            blocks.push_back(std::move(nb));
        }
    }
    return canonicalize(n - 1, 1, std::move(zero), std::move(blocks));
}

struct VerifyReport {
    int case_no = 0;
    std::size_t lhs_size = 0, rhs_size = 0;
    bool sizes_match = false;
    bool tau_bijective = false;
    bool order_iso = false;
    bool inconclusive = false;
    bool degenerate = false;  // n = 1, skipped
    Int hat_mobius = 0;
    std::string target;

    bool pass() const { return degenerate || (sizes_match && tau_bijective && order_iso); }
};

// Builds both sides of the isomorphism and checks tau is an order-preserving
// bijection with order-preserving inverse.  Only diagonal gamma is in
// scope; the three exceptional cosets are refused.
inline VerifyReport verify_theorem(const CosetParams& c, bool diagonal_gamma = true,
                                   long long iso_budget = 5'000'000) {
    if (!diagonal_gamma)
        throw ExceptionalCosetUnsupported("only gamma = diag(xi_{er/p}, 1, ..., 1) is supported");
    VerifyReport rep;
    if (c.n == 1) {
        rep.degenerate = true;
        FinitePoset s = build_eigenposet(c);
        rep.lhs_size = static_cast<std::size_t>(s.size());
        rep.hat_mobius = hat_tilde(s, c).mobius_bounded();
        return rep;
    }

    FinitePoset lhs = build_eigenposet(c);
    CaseInfo info = classify_case(c);
    rep.case_no = info.case_no;
    rep.target = info.target.to_string() + (info.strip_bottom ? " minus bottom" : "");

    FinitePoset fam = build_family(info.target);
    FinitePoset rhs = fam;
    if (info.strip_bottom) {
        int b = fam.index_of(kBottomKey);
        std::vector<int> keep;
        for (int v = 0; v < fam.size(); ++v)
            if (v != b) keep.push_back(v);
        rhs = fam.induced(keep);
    }

    rep.lhs_size = static_cast<std::size_t>(lhs.size());
    rep.rhs_size = static_cast<std::size_t>(rhs.size());
    rep.sizes_match = rep.lhs_size == rep.rhs_size;

    // tau lands in canonical keys, so in cases 1,2,3,4,6 bijectivity onto
    // the family is literal key-set equality and order preservation both
    // ways is equality of the closures under the key matching.  Case 5
    // first rewrites eigenspaces (partitions of [n]) as members of
    // Q_{n-1}(1).
    FinitePoset lhs_cmp = lhs;
    if (info.case_no == 5) {
        std::vector<std::string> keys;
        for (int v = 0; v < lhs.size(); ++v) {
            GPartition g = parse_key(lhs.key(v), c.n, static_cast<int>(c.d) * c.r);
            keys.push_back(canonical_key(partition_drop_last(g)));
        }
        std::vector<std::pair<int, int>> rel;
        for (int a = 0; a < lhs.size(); ++a)
            for (int b2 : lhs.upper_covers(a)) rel.emplace_back(a, b2);
        lhs_cmp = FinitePoset::from_covers(std::move(keys), rel);
    }

    std::set<std::string> lk(lhs_cmp.keys().begin(), lhs_cmp.keys().end());
    std::set<std::string> rk(rhs.keys().begin(), rhs.keys().end());
    rep.tau_bijective = lk == rk;

    bool orders_agree = rep.tau_bijective;
    if (rep.tau_bijective) {
        for (int a = 0; a < lhs_cmp.size() && orders_agree; ++a) {
            int ra = rhs.index_of(lhs_cmp.key(a));
            for (int b2 = 0; b2 < lhs_cmp.size() && orders_agree; ++b2) {
                int rb = rhs.index_of(lhs_cmp.key(b2));
                if (lhs_cmp.leq(a, b2) != rhs.leq(ra, rb)) orders_agree = false;
            }
        }
    }
    // Independent route: generic backtracking isomorphism search.
    IsoResult iso = find_isomorphism(lhs, rhs, iso_budget);
    if (iso.status == IsoResult::Status::Inconclusive) rep.inconclusive = true;
    rep.order_iso = orders_agree && iso.found();

    rep.hat_mobius = hat_tilde(lhs, c).mobius_bounded();
    return rep;
}

}  // namespace dowq
