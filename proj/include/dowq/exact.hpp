#pragma once

// Exact integer / rational arithmetic, backed by GMP.  Nothing in this
// project ever touches floating point: root-of-unity identities, Mobius
// values and series coefficients are all integers or rationals.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dowq {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Int factorial(unsigned long n) {
    Int out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
    if (!is_integer(q)) throw std::invalid_argument("rational is not an integer: " + q.get_str());
    return q.get_num();
}

// "p" for integers, "p/q" otherwise.  Used for all JSON/CLI output so that
// values stay exact regardless of magnitude.
inline std::string to_string(const Int& v) { return v.get_str(); }
inline std::string to_string(const Rat& v) { return v.get_str(); }

}  // namespace dowq
