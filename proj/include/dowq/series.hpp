#pragma once

// Truncated formal power series over exact rationals, the M(n)/N(n)
// denominator formulas, and the Mobius generating-function identities for
// the d-divisible, k-evenly coloured families and their restricted
// variants.  No tolerances anywhere: every identity below is an exact
// coefficient equality.

#include <functional>
#include <set>
#include <vector>

#include "dowq/errors.hpp"
#include "dowq/exact.hpp"

namespace dowq {

class RationalSeries {
  public:
    explicit RationalSeries(int truncation) : c_(truncation + 1, Rat(0)) {
        if (truncation < 0) throw std::invalid_argument("negative truncation order");
    }
    static RationalSeries from_coeffs(std::vector<Rat> coeffs) {
        RationalSeries s(static_cast<int>(coeffs.size()) - 1);
        s.c_ = std::move(coeffs);
        return s;
    }

    int truncation() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& operator[](int i) const { return c_.at(i); }
    Rat& operator[](int i) { return c_.at(i); }

    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) {
        a.check(b);
        for (int i = 0; i <= a.truncation(); ++i) a.c_[i] += b.c_[i];
        return a;
    }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) {
        a.check(b);
        for (int i = 0; i <= a.truncation(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }
    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
        a.check(b);
        RationalSeries out(a.truncation());
        for (int i = 0; i <= a.truncation(); ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= a.truncation(); ++j) {
                if (b.c_[j] == 0) continue;
                out.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return out;
    }
    RationalSeries operator-() const {
        RationalSeries out(truncation());
        for (int i = 0; i <= truncation(); ++i) out.c_[i] = -c_[i];
        return out;
    }
    bool operator==(const RationalSeries& o) const { return c_ == o.c_; }

    RationalSeries scale(const Rat& a) const {  // a * f
        RationalSeries out(truncation());
        for (int i = 0; i <= truncation(); ++i) out.c_[i] = a * c_[i];
        return out;
    }
    RationalSeries substitute_scaled(const Rat& a) const {  // f(a*x)
        RationalSeries out(truncation());
        Rat pw = 1;
        for (int i = 0; i <= truncation(); ++i) {
            out.c_[i] = pw * c_[i];
            pw *= a;
        }
        return out;
    }

  private:
    std::vector<Rat> c_;
    void check(const RationalSeries& o) const {
        if (o.truncation() != truncation())
            throw std::invalid_argument("series truncation orders differ");
    }
};

// g = ln f, requiring f(0) = 1:  n f_n = sum_{j=1..n} j g_j f_{n-j}.
inline RationalSeries series_ln(const RationalSeries& f) {
    if (f[0] != 1) throw BadConstantTerm("ln needs f(0) = 1, got " + to_string(f[0]));
    const int T = f.truncation();
    RationalSeries g(T);
    for (int n = 1; n <= T; ++n) {
        Rat s = Rat(n) * f[n];
        for (int j = 1; j < n; ++j) s -= Rat(j) * g[j] * f[n - j];
        g[n] = s / n;
    }
    return g;
}

// g = exp f, requiring f(0) = 0:  n g_n = sum_{j=1..n} j f_j g_{n-j}.
inline RationalSeries series_exp(const RationalSeries& f) {
    if (f[0] != 0) throw BadConstantTerm("exp needs f(0) = 0, got " + to_string(f[0]));
    const int T = f.truncation();
    RationalSeries g(T);
    g[0] = 1;
    for (int n = 1; n <= T; ++n) {
        Rat s = 0;
        for (int j = 1; j <= n; ++j) s += Rat(j) * f[j] * g[n - j];
        g[n] = s / n;
    }
    return g;
}

// f^q = exp(q ln f) for rational q, requiring f(0) = 1.
inline RationalSeries series_pow(const RationalSeries& f, const Rat& q) {
    if (f[0] != 1) throw BadConstantTerm("pow needs f(0) = 1, got " + to_string(f[0]));
    return series_exp(series_ln(f).scale(q));
}

// Denominator sequences of the d-divisible, k-evenly coloured structures:
//   M(n) = ((dn/k)!)^k / (n! ((d/k)!)^{kn})
//   N(n) = (dn+e)! r^{(d-1)n} / (n! e! ((d/k)!)^{kn} k^{dn})
struct StructureCounts {
    int d = 1, k = 1, e = 0, r = 1;

    Rat M(int n) const {
        if (n == 0) return 1;
        Rat num(int_pow(factorial(static_cast<unsigned long>(d) * n / k), static_cast<unsigned long>(k)));
        Rat den(factorial(n) * int_pow(factorial(d / k), static_cast<unsigned long>(k) * n));
        return num / den;
    }
    Rat N(int n) const {
        if (n == 0) return 1;
        Rat num(factorial(static_cast<unsigned long>(d) * n + e) *
                int_pow(Int(r), static_cast<unsigned long>(d - 1) * n));
        Rat den(factorial(n) * factorial(e) *
                int_pow(factorial(d / k), static_cast<unsigned long>(k) * n) *
                int_pow(Int(k), static_cast<unsigned long>(d) * n));
        return num / den;
    }
};

inline StructureCounts counts_general(int d, int k, int e, int r) {
    if (d < 1 || k < 1 || e < 0 || r < 1) throw InvalidSpec("counts_general: parameters must be positive");
    if (d % k != 0) throw InvalidSpec("counts_general: k must divide d");
    if (r % k != 0) throw InvalidSpec("counts_general: k must divide r");
    return StructureCounts{d, k, e, r};
}

// mu(S_n + bottom) for n = 0..T from the exponential Dowling identity
//   sum mu_n x^n / (N(n) n!) = -(sum x^n/(N(n) n!)) (sum (s x)^n/(M(n) n!))^{-1/s},
// s = order of the label group.
inline std::vector<Rat> mobius_gf(const StructureCounts& sc, int s, int T) {
    RationalSeries A(T), B(T);
    Rat spow = 1;
    for (int n = 0; n <= T; ++n) {
        A[n] = 1 / (sc.N(n) * Rat(factorial(n)));
        B[n] = spow / (sc.M(n) * Rat(factorial(n)));
        spow *= s;
    }
    RationalSeries R = -(A * series_pow(B, make_rat(-1, s)));
    std::vector<Rat> mu(T + 1);
    for (int n = 0; n <= T; ++n) mu[n] = R[n] * sc.N(n) * Rat(factorial(n));
    return mu;
}

// The plain exponential-structure identity
//   sum_{n>=1} mu(R_n + bottom) x^n/(M(n) n!) = -ln(sum x^n/(M(n) n!)).
inline std::vector<Rat> mobius_exp_structure(const std::function<Rat(int)>& M, int T) {
    RationalSeries F(T);
    for (int n = 0; n <= T; ++n) F[n] = 1 / (M(n) * Rat(factorial(n)));
    RationalSeries L = -series_ln(F);
    std::vector<Rat> mu(T + 1, Rat(0));
    for (int n = 1; n <= T; ++n) mu[n] = L[n] * M(n) * Rat(factorial(n));
    return mu;
}

inline std::vector<Int> to_integers(const std::vector<Rat>& v) {
    std::vector<Int> out;
    out.reserve(v.size());
    for (const auto& q : v) {
        if (!is_integer(q)) throw NonIntegerMu("extracted value " + to_string(q) + " is not an integer");
        out.push_back(q.get_num());
    }
    return out;
}

// mu(Q_{dn+e}(dr, d, d)) for n = 0..T.  Label group is Z/dr, so M(n) =
// (n!)^{d-1}, N(n) = (dn+e)! r^{(d-1)n} / (n! e! d^n) and s = dr.
inline std::vector<Int> mobius_Q_dde(int r, int d, int e, int T) {
    if (d < 1 || r < 1 || e < 0) throw InvalidSpec("mobius_Q_dde: bad parameters");
    return to_integers(mobius_gf(counts_general(d, d, e, d * r), d * r, T));
}

// mu(Q_{dn}(dr, d, d, {0})) for n = 1..T (index 0 of the result is the
// conventional 0 for n outside J = N \ {0}).  The restricted identity with
// I = N, J = N \ {0} drops the n = 0 term of the N-sum.
inline std::vector<Int> mobius_Q_dd0(int r, int d, int T) {
    if (d < 1 || r < 1) throw InvalidSpec("mobius_Q_dd0: bad parameters");
    StructureCounts sc = counts_general(d, d, 0, d * r);
    const int s = d * r;
    RationalSeries A(T), B(T);
    Rat spow = 1;
    for (int n = 0; n <= T; ++n) {
        A[n] = n == 0 ? Rat(0) : 1 / (sc.N(n) * Rat(factorial(n)));
        B[n] = spow / (sc.M(n) * Rat(factorial(n)));
        spow *= s;
    }
    RationalSeries R = -(A * series_pow(B, make_rat(-1, s)));
    std::vector<Rat> mu(T + 1);
    for (int n = 0; n <= T; ++n) mu[n] = R[n] * sc.N(n) * Rat(factorial(n));
    return to_integers(mu);
}

// Restricted Mobius values under the semigroup hypotheses: I a subset of
// {1,2,...} closed under addition, J a subset of {0,1,...} with I+J in J.
//   sum_{n in J} mu_{I,J}(n) x^n/(N n!) =
//     -(sum_{n in J} x^n/(N n!)) (sum_{n in I or 0} (s x)^n/(M n!))^{-1/s}.
// Entries for n outside J come back 0.
inline std::vector<Rat> mobius_restricted(const std::set<int>& I, const std::set<int>& J,
                                          const StructureCounts& sc, int s, int T) {
    for (int a : I) {
        if (a < 1) throw HypothesisViolated("I must contain positive integers");
        for (int b : I)
            if (a + b <= T && !I.count(a + b))
                throw HypothesisViolated("I is not a semigroup within truncation");
        for (int b : J)
            if (a + b <= T && !J.count(a + b))
                throw HypothesisViolated("I + J is not contained in J within truncation");
    }
    for (int b : J)
        if (b < 0) throw HypothesisViolated("J must contain nonnegative integers");
    RationalSeries A(T), B(T);
    Rat spow = 1;
    for (int n = 0; n <= T; ++n) {
        A[n] = J.count(n) ? 1 / (sc.N(n) * Rat(factorial(n))) : Rat(0);
        B[n] = (n == 0 || I.count(n)) ? spow / (sc.M(n) * Rat(factorial(n))) : Rat(0);
        spow *= s;
    }
    RationalSeries R = -(A * series_pow(B, make_rat(-1, s)));
    std::vector<Rat> mu(T + 1, Rat(0));
    for (int n = 0; n <= T; ++n)
        if (J.count(n)) mu[n] = R[n] * sc.N(n) * Rat(factorial(n));
    return mu;
}

// General restricted identity for arbitrary I, J with caller-supplied
// correction sums m_n (n outside I) and p_n (n outside J):
//   sum_{n in J} mu x^n/(N n!) =
//     -(sum_{n>=0} x^n/(N n!) - sum_{n not in J} p_n x^n/(N n!))
//      (sum_{n>=0} (s x)^n/(M n!) - sum_{n>=1 not in I} m_n (s x)^n/(M n!))^{-1/s}.
inline std::vector<Rat> mobius_restricted_general(
    const std::set<int>& I, const std::set<int>& J, const std::function<Rat(int)>& m_fn,
    const std::function<Rat(int)>& p_fn, const StructureCounts& sc, int s, int T) {
    RationalSeries A(T), B(T);
    Rat spow = 1;
    for (int n = 0; n <= T; ++n) {
        Rat a_coef = J.count(n) ? Rat(1) : Rat(1) - p_fn(n);
        Rat b_coef = (n == 0 || I.count(n)) ? Rat(1) : Rat(1) - m_fn(n);
        A[n] = a_coef / (sc.N(n) * Rat(factorial(n)));
        B[n] = b_coef * spow / (sc.M(n) * Rat(factorial(n)));
        spow *= s;
    }
    RationalSeries R = -(A * series_pow(B, make_rat(-1, s)));
    std::vector<Rat> mu(T + 1, Rat(0));
    for (int n = 0; n <= T; ++n)
        if (J.count(n)) mu[n] = R[n] * sc.N(n) * Rat(factorial(n));
    return mu;
}

}  // namespace dowq
