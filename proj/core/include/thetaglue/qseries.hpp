#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thetaglue/errors.hpp"
#include "thetaglue/numeric.hpp"

namespace thetaglue {

/* Exponent on the quarter-integer grid: QExp{n} stands for $q^{n/4}$. */
struct QExp {
    long long quarters = 0;
    friend constexpr auto operator<=>(QExp, QExp) = default;
    friend constexpr QExp operator+(QExp x, QExp y) { return {x.quarters + y.quarters}; }
    friend constexpr QExp operator-(QExp x, QExp y) { return {x.quarters - y.quarters}; }
};

constexpr QExp q_int(long long n) { return {4 * n}; }
constexpr QExp q_quarters(long long n) { return {n}; }

/* exponent as a reduced rational: "3", "1/2", "9/4" */
std::string to_string(QExp e);

/*
 * Truncated q-expansion with exact integer coefficients.  A series knows its
 * coefficient at every exponent strictly below trunc() and nothing beyond.
 * Stored terms are normalized: sorted, nonzero, strictly below trunc.
 * Exponents are non-negative.  Values are immutable; operations return new
 * series.
 */
class QSeries {
public:
    /* the zero series, known below trunc */
    explicit QSeries(QExp trunc);

    /* terms are accumulated; zero coefficients and terms at or beyond trunc
     * are dropped; negative exponents are rejected */
    static QSeries from_terms(const std::vector<std::pair<QExp, Int>>& terms, QExp trunc);
    static QSeries one(QExp trunc);
    static QSeries monomial(const Int& c, QExp e, QExp trunc);

    QExp trunc() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }
    /* smallest exponent with a nonzero coefficient; trunc() for the zero series */
    QExp min_exp() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }
    const std::map<QExp, Int>& terms() const { return terms_; }

    /* throws beyond_truncation for e >= trunc() */
    Int coeff(QExp e) const;

    /* forget terms from t on; t must not exceed trunc() */
    QSeries truncated(QExp t) const;

    friend bool operator==(const QSeries&, const QSeries&) = default;

private:
    std::map<QExp, Int> terms_;
    QExp trunc_;
};

QSeries add(const QSeries& x, const QSeries& y);
QSeries sub(const QSeries& x, const QSeries& y);
QSeries neg(const QSeries& x);

/*
 * Truncation rule for products: with operands known below Ta and Tb and
 * smallest possibly-nonzero exponents ma and mb (ma = Ta for the zero
 * series), every coefficient below min(Ta + mb, Tb + ma) is a finite sum of
 * known terms, so that bound is the product's trunc.  For series with
 * ma, mb >= 0 this is never weaker than min(Ta, Tb).
 */
QSeries mul(const QSeries& x, const QSeries& y);
QSeries mul(const QSeries& x, const Int& c);
QSeries pow(const QSeries& x, unsigned long n);

/*
 * Long division from the lowest exponent.  The quotient is certified below
 * min(Tn - md, Td - md + mn) with md, mn the divisor/dividend minimum
 * exponents.  Throws division_by_zero for a zero divisor and not_divisible
 * when a coefficient fails to divide or the quotient would need a negative
 * exponent.
 */
QSeries div_exact(const QSeries& num, const QSeries& den);

/* divide every coefficient by 2; throws odd_coefficient */
QSeries halve_exact(const QSeries& x);

/* equality of all coefficients below min(trunc, trunc) */
bool agree_to_shared_trunc(const QSeries& x, const QSeries& y);

/* human-readable list of the first few differing coefficients below the shared
 * truncation, "q^2: 24 vs 0; q^4: ...", or "" when the series agree */
std::string diff_to_shared_trunc(const QSeries& x, const QSeries& y, int max_shown = 3);

inline QSeries operator+(const QSeries& x, const QSeries& y) { return add(x, y); }
inline QSeries operator-(const QSeries& x, const QSeries& y) { return sub(x, y); }
inline QSeries operator-(const QSeries& x) { return neg(x); }
inline QSeries operator*(const QSeries& x, const QSeries& y) { return mul(x, y); }
inline QSeries operator*(const QSeries& x, const Int& c) { return mul(x, c); }
inline QSeries operator*(const Int& c, const QSeries& x) { return mul(x, c); }

/*
 * Text form:
 *   trunc=<quarters>
 *   <quarters>\t<decimal coefficient>
 * one term per line, ascending exponents.  The parser also skips blank lines
 * and lines starting with '#'.
 */
std::string to_qs_text(const QSeries& s);
QSeries parse_qs_text(const std::string& text);

}
