#pragma once

#include <map>
#include <string>
#include <utility>

#include "thetaglue/errors.hpp"
#include "thetaglue/numeric.hpp"

namespace thetaglue {

/*
 * Exact polynomials in Z[a,b], keyed by (deg_a, deg_b).  The intended reading
 * is $a = \theta_2^4$, $b = \theta_4^4$, so total degree 2w corresponds to a
 * weight-w expression.  Monomial order throughout is lex with a > b.
 */
class BPoly {
public:
    BPoly() = default;
    static BPoly constant(const Int& c);
    static BPoly monomial(const Int& c, int da, int db);
    static BPoly var_a();
    static BPoly var_b();

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<int, int>, Int>& terms() const { return terms_; }
    Int coeff(int da, int db) const;
    /* total degree; -1 for the zero polynomial */
    long degree() const;

    friend bool operator==(const BPoly&, const BPoly&) = default;

private:
    std::map<std::pair<int, int>, Int> terms_;
    friend BPoly bp_normalized(std::map<std::pair<int, int>, Int> t);
};

BPoly bp_add(const BPoly& x, const BPoly& y);
BPoly bp_sub(const BPoly& x, const BPoly& y);
BPoly bp_neg(const BPoly& x);
BPoly bp_mul(const BPoly& x, const BPoly& y);
BPoly bp_mul(const BPoly& x, const Int& c);
BPoly bp_pow(const BPoly& x, unsigned long n);

/* single-divisor reduction; throws not_divisible unless den divides num */
BPoly bp_div_exact(const BPoly& num, const BPoly& den);

/* swap a and b */
BPoly bp_swapped(const BPoly& x);

inline BPoly operator+(const BPoly& x, const BPoly& y) { return bp_add(x, y); }
inline BPoly operator-(const BPoly& x, const BPoly& y) { return bp_sub(x, y); }
inline BPoly operator-(const BPoly& x) { return bp_neg(x); }
inline BPoly operator*(const BPoly& x, const BPoly& y) { return bp_mul(x, y); }
inline BPoly operator*(const BPoly& x, const Int& c) { return bp_mul(x, c); }
inline BPoly operator*(const Int& c, const BPoly& x) { return bp_mul(x, c); }

/* a^2 + ab + b^2 */
BPoly E_poly();
/* a^2 b^2 (a+b)^2 */
BPoly Delta_poly();

/* a^{2n} + b^{2n} + (a+b)^{2n}; h_0 = 3 */
BPoly h_poly(long n);
/* ((a+b)^{2n+3} - a^{2n+3} - b^{2n+3}) / (ab(a+b)); rho_{-1} = 0 */
BPoly rho_poly(long n);

/* 2E^n + sum_{i=1}^{[n/3]} (n/i) C(n-i-1, 2i-1) Delta^i E^{n-3i}, n >= 1 */
BPoly h_closed_poly(long n);
/* sum_{i=0}^{[n/3]} ((2n+3)/(2i+1)) C(n-i, 2i) Delta^i E^{n-3i}, n >= 0 */
BPoly rho_closed_poly(long n);

/* f_n = 2E f_{n-1} - E^2 f_{n-2} + Delta f_{n-3}, n >= 3 */
bool check_recurrence_h(long n);
bool check_recurrence_rho(long n);

/*
 * Re-express a polynomial lying in Z[E, Delta] as (deg_Delta, deg_E) -> coeff
 * by greedy elimination of lex leading terms; throws not_divisible when the
 * input is not in that span.
 */
std::map<std::pair<int, int>, Int> e_delta_coeffs(const BPoly& p);

/* "2*a^3*b - a*b^2 + 7" in descending lex order */
std::string to_string(const BPoly& p);
/* "2*E^10 + 80*Delta*E^7 + 175*Delta^2*E^4 + 20*Delta^3*E" */
std::string e_delta_string(const BPoly& p);

}
