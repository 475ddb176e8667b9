#include "thetaglue/bivar.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace thetaglue {

BPoly bp_normalized(std::map<std::pair<int, int>, Int> t) {
    std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
    BPoly p;
    p.terms_ = std::move(t);
    return p;
}

BPoly BPoly::constant(const Int& c) { return monomial(c, 0, 0); }

BPoly BPoly::monomial(const Int& c, int da, int db) {
    if (da < 0 || db < 0) throw std::invalid_argument("BPoly: negative degree");
    std::map<std::pair<int, int>, Int> t;
    if (c != 0) t[{da, db}] = c;
    return bp_normalized(std::move(t));
}

BPoly BPoly::var_a() { return monomial(1, 1, 0); }
BPoly BPoly::var_b() { return monomial(1, 0, 1); }

Int BPoly::coeff(int da, int db) const {
    auto it = terms_.find({da, db});
    return it == terms_.end() ? Int(0) : it->second;
}

long BPoly::degree() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m.first + m.second));
    return d;
}

BPoly bp_add(const BPoly& x, const BPoly& y) {
    auto t = x.terms();
    for (const auto& [m, c] : y.terms()) t[m] += c;
    return bp_normalized(std::move(t));
}

BPoly bp_neg(const BPoly& x) {
    auto t = x.terms();
    for (auto& [m, c] : t) c = -c;
    return bp_normalized(std::move(t));
}

BPoly bp_sub(const BPoly& x, const BPoly& y) { return bp_add(x, bp_neg(y)); }

BPoly bp_mul(const BPoly& x, const BPoly& y) {
    std::map<std::pair<int, int>, Int> t;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms())
            mpz_addmul(t[{mx.first + my.first, mx.second + my.second}].get_mpz_t(),
                       cx.get_mpz_t(), cy.get_mpz_t());
    return bp_normalized(std::move(t));
}

BPoly bp_mul(const BPoly& x, const Int& c) {
    auto t = x.terms();
    for (auto& [m, v] : t) v *= c;
    return bp_normalized(std::move(t));
}

BPoly bp_pow(const BPoly& x, unsigned long n) {
    if (n == 0) return BPoly::constant(1);
    int top = 63;
    while (!((n >> top) & 1ul)) --top;
    BPoly acc = x;
    for (int b = top - 1; b >= 0; --b) {
        acc = bp_mul(acc, acc);
        if ((n >> b) & 1ul) acc = bp_mul(acc, x);
    }
    return acc;
}

BPoly bp_div_exact(const BPoly& num, const BPoly& den) {
    if (den.is_zero()) throw division_by_zero("bp_div_exact: zero divisor");
    const auto& [dm, dc] = *den.terms().rbegin();
    BPoly q, r = num;
    while (!r.is_zero()) {
        const auto& [rm, rc] = *r.terms().rbegin();
        if (rm.first < dm.first || rm.second < dm.second ||
            !mpz_divisible_p(rc.get_mpz_t(), dc.get_mpz_t()))
            throw not_divisible("bp_div_exact: leading term a^" + std::to_string(rm.first) +
                                "*b^" + std::to_string(rm.second) + " is not reducible");
        Int c;
        mpz_divexact(c.get_mpz_t(), rc.get_mpz_t(), dc.get_mpz_t());
        const BPoly t = BPoly::monomial(c, rm.first - dm.first, rm.second - dm.second);
        q = bp_add(q, t);
        r = bp_sub(r, bp_mul(t, den));
    }
    return q;
}

BPoly bp_swapped(const BPoly& x) {
    std::map<std::pair<int, int>, Int> t;
    for (const auto& [m, c] : x.terms()) t[{m.second, m.first}] = c;
    return bp_normalized(std::move(t));
}

BPoly E_poly() {
    return bp_add(bp_add(BPoly::monomial(1, 2, 0), BPoly::monomial(1, 1, 1)),
                  BPoly::monomial(1, 0, 2));
}

BPoly Delta_poly() {
    const BPoly ab1 = bp_mul(bp_mul(BPoly::var_a(), BPoly::var_b()),
                             bp_add(BPoly::var_a(), BPoly::var_b()));
    return bp_mul(ab1, ab1);
}

BPoly h_poly(long n) {
    if (n < 0) throw std::invalid_argument("h_poly: n must be >= 0");
    const unsigned long e = 2 * static_cast<unsigned long>(n);
    return bp_add(bp_add(bp_pow(BPoly::var_a(), e), bp_pow(BPoly::var_b(), e)),
                  bp_pow(bp_add(BPoly::var_a(), BPoly::var_b()), e));
}

BPoly rho_poly(long n) {
    if (n < -1) throw std::invalid_argument("rho_poly: n must be >= -1");
    if (n == -1) return BPoly();
    const unsigned long e = 2 * static_cast<unsigned long>(n) + 3;
    const BPoly num = bp_sub(bp_sub(bp_pow(bp_add(BPoly::var_a(), BPoly::var_b()), e),
                                    bp_pow(BPoly::var_a(), e)),
                             bp_pow(BPoly::var_b(), e));
    const BPoly den = bp_mul(bp_mul(BPoly::var_a(), BPoly::var_b()),
                             bp_add(BPoly::var_a(), BPoly::var_b()));
    return bp_div_exact(num, den);
}

static Int integral_prefactor(const Rat& r, const char* who) {
    if (r.get_den() != 1)
        throw non_integer_result(std::string(who) + ": prefactor " + r.get_str() +
                                 " is not an integer");
    return r.get_num();
}

BPoly h_closed_poly(long n) {
    if (n < 1) throw std::invalid_argument("h_closed_poly: n must be >= 1");
    const BPoly E = E_poly(), D = Delta_poly();
    BPoly r = bp_mul(bp_pow(E, n), Int(2));
    for (long i = 1; 3 * i <= n; ++i) {
        const Rat pref = make_rat(Int(n), Int(i)) * Rat(binomial(n - i - 1, 2 * i - 1));
        const Int c = integral_prefactor(pref, "h_closed_poly");
        r = bp_add(r, bp_mul(bp_mul(bp_pow(D, i), bp_pow(E, n - 3 * i)), c));
    }
    return r;
}

BPoly rho_closed_poly(long n) {
    if (n < 0) throw std::invalid_argument("rho_closed_poly: n must be >= 0");
    const BPoly E = E_poly(), D = Delta_poly();
    BPoly r;
    for (long i = 0; 3 * i <= n; ++i) {
        const Rat pref = make_rat(Int(2 * n + 3), Int(2 * i + 1)) * Rat(binomial(n - i, 2 * i));
        const Int c = integral_prefactor(pref, "rho_closed_poly");
        r = bp_add(r, bp_mul(bp_mul(bp_pow(D, i), bp_pow(E, n - 3 * i)), c));
    }
    return r;
}

static BPoly recurrence_rhs(const BPoly& f1, const BPoly& f2, const BPoly& f3) {
    const BPoly E = E_poly();
    return bp_add(bp_sub(bp_mul(bp_mul(E, f1), Int(2)), bp_mul(bp_mul(E, E), f2)),
                  bp_mul(Delta_poly(), f3));
}

bool check_recurrence_h(long n) {
    if (n < 3) throw std::invalid_argument("check_recurrence_h: n must be >= 3");
    return h_poly(n) == recurrence_rhs(h_poly(n - 1), h_poly(n - 2), h_poly(n - 3));
}

bool check_recurrence_rho(long n) {
    if (n < 3) throw std::invalid_argument("check_recurrence_rho: n must be >= 3");
    return rho_poly(n) == recurrence_rhs(rho_poly(n - 1), rho_poly(n - 2), rho_poly(n - 3));
}

std::map<std::pair<int, int>, Int> e_delta_coeffs(const BPoly& p) {
    std::map<std::pair<int, int>, Int> out;
    const BPoly E = E_poly(), D = Delta_poly();
    BPoly r = p;
    while (!r.is_zero()) {
        const auto& [m, c] = *r.terms().rbegin();
        const auto [x, y] = m;
        /* lex leading monomial of Delta^i E^j is a^{4i+2j} b^{2i} */
        if (y % 2 != 0 || x < 2 * y || (x - 2 * y) % 2 != 0)
            throw not_divisible("e_delta_coeffs: a^" + std::to_string(x) + "*b^" +
                                std::to_string(y) + " is outside Z[E, Delta]");
        const int i = y / 2, j = (x - 2 * y) / 2;
        out[{i, j}] = c;
        r = bp_sub(r, bp_mul(bp_mul(bp_pow(D, i), bp_pow(E, j)), c));
    }
    return out;
}

static void append_term(std::ostringstream& os, bool first, const Int& c,
                        const std::vector<std::pair<std::string, int>>& vars) {
    Int a = c;
    if (first) {
        if (a < 0) { os << "-"; a = -a; }
    } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
    }
    std::vector<std::string> parts;
    for (const auto& [name, e] : vars) {
        if (e == 0) continue;
        parts.push_back(e == 1 ? name : name + "^" + std::to_string(e));
    }
    if (parts.empty()) {
        os << a.get_str();
        return;
    }
    if (a != 1) os << a.get_str() << "*";
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
}

std::string to_string(const BPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        append_term(os, first, it->second, {{"a", it->first.first}, {"b", it->first.second}});
        first = false;
    }
    return os.str();
}

std::string e_delta_string(const BPoly& p) {
    if (p.is_zero()) return "0";
    const auto coeffs = e_delta_coeffs(p);
    std::vector<std::pair<std::pair<int, int>, Int>> rows(coeffs.begin(), coeffs.end());
    std::sort(rows.begin(), rows.end(), [](const auto& l, const auto& r) {
        if (l.first.first != r.first.first) return l.first.first < r.first.first;
        return l.first.second > r.first.second;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : rows) {
        append_term(os, first, c, {{"Delta", m.first}, {"E", m.second}});
        first = false;
    }
    return os.str();
}

}
