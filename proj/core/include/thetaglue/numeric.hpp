#pragma once

#include <gmpxx.h>

namespace thetaglue {

using Int = mpz_class;
using Rat = mpq_class;

/* n over k; 0 outside the Pascal triangle */
inline Int binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/* n! / (k1! k2! (n-k1-k2)!); 0 if any part is negative */
inline Int trinomial(long n, long k1, long k2) {
    if (k1 < 0 || k2 < 0 || k1 + k2 > n) return 0;
    return binomial(n, k1) * binomial(n - k1, k2);
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

/* p/q in lowest terms; mpq_class(p, q) alone does not canonicalize */
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}
