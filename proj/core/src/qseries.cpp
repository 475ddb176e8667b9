#include "thetaglue/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace thetaglue {

std::string to_string(QExp e) {
    long long q = e.quarters;
    if (q % 4 == 0) return std::to_string(q / 4);
    if (q % 2 == 0) return std::to_string(q / 2) + "/2";
    return std::to_string(q) + "/4";
}

QSeries::QSeries(QExp trunc) : trunc_(trunc) {
    if (trunc.quarters < 0)
        throw std::invalid_argument("QSeries: trunc must be non-negative");
}

QSeries QSeries::from_terms(const std::vector<std::pair<QExp, Int>>& terms, QExp trunc) {
    QSeries s(trunc);
    for (const auto& [e, c] : terms) {
        if (e.quarters < 0)
            throw std::invalid_argument("QSeries: negative exponent q^(" + to_string(e) + ")");
        if (e < trunc && c != 0) s.terms_[e] += c;
    }
    std::erase_if(s.terms_, [](const auto& t) { return t.second == 0; });
    return s;
}

QSeries QSeries::one(QExp trunc) { return monomial(1, q_int(0), trunc); }

QSeries QSeries::monomial(const Int& c, QExp e, QExp trunc) {
    return from_terms({{e, c}}, trunc);
}

Int QSeries::coeff(QExp e) const {
    if (e >= trunc_)
        throw beyond_truncation("coefficient at q^(" + to_string(e) +
                                ") is beyond trunc q^(" + to_string(trunc_) + ")");
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
}

QSeries QSeries::truncated(QExp t) const {
    if (t > trunc_)
        throw std::invalid_argument("QSeries: cannot extend trunc from q^(" +
                                    to_string(trunc_) + ") to q^(" + to_string(t) + ")");
    QSeries s(t);
    for (const auto& [e, c] : terms_) {
        if (e >= t) break;
        s.terms_.emplace(e, c);
    }
    return s;
}

QSeries add(const QSeries& x, const QSeries& y) {
    QExp t = std::min(x.trunc(), y.trunc());
    std::vector<std::pair<QExp, Int>> out(x.terms().begin(), x.terms().end());
    out.insert(out.end(), y.terms().begin(), y.terms().end());
    return QSeries::from_terms(out, t);
}

QSeries neg(const QSeries& x) {
    std::vector<std::pair<QExp, Int>> out;
    out.reserve(x.terms().size());
    for (const auto& [e, c] : x.terms()) out.emplace_back(e, -c);
    return QSeries::from_terms(out, x.trunc());
}

QSeries sub(const QSeries& x, const QSeries& y) { return add(x, neg(y)); }

QSeries mul(const QSeries& x, const QSeries& y) {
    const long long mx = x.min_exp().quarters;
    const long long my = y.min_exp().quarters;
    const QExp t{std::min(x.trunc().quarters + my, y.trunc().quarters + mx)};
    if (x.is_zero() || y.is_zero()) return QSeries(t);
    const long long base = mx + my;
    if (base >= t.quarters) return QSeries(t);
    std::vector<Int> dense(static_cast<size_t>(t.quarters - base));
    for (const auto& [ex, cx] : x.terms()) {
        for (const auto& [ey, cy] : y.terms()) {
            const long long e = ex.quarters + ey.quarters;
            if (e >= t.quarters) break;
            mpz_addmul(dense[static_cast<size_t>(e - base)].get_mpz_t(),
                       cx.get_mpz_t(), cy.get_mpz_t());
        }
    }
    std::vector<std::pair<QExp, Int>> out;
    for (size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0) out.emplace_back(QExp{base + static_cast<long long>(i)}, std::move(dense[i]));
    return QSeries::from_terms(out, t);
}

QSeries mul(const QSeries& x, const Int& c) {
    std::vector<std::pair<QExp, Int>> out;
    out.reserve(x.terms().size());
    for (const auto& [e, v] : x.terms()) out.emplace_back(e, v * c);
    return QSeries::from_terms(out, x.trunc());
}

QSeries pow(const QSeries& x, unsigned long n) {
    if (n == 0) return QSeries::one(x.trunc());
    int top = 63;
    while (!((n >> top) & 1ul)) --top;
    QSeries acc = x;
    for (int b = top - 1; b >= 0; --b) {
        acc = mul(acc, acc);
        if ((n >> b) & 1ul) acc = mul(acc, x);
    }
    return acc;
}

QSeries div_exact(const QSeries& num, const QSeries& den) {
    if (den.is_zero())
        throw division_by_zero("div_exact: divisor is the zero series");
    const long long md = den.min_exp().quarters;
    const Int& dlead = den.terms().begin()->second;
    const long long mn = num.min_exp().quarters;
    const long long qtr = std::min(num.trunc().quarters - md,
                                   den.trunc().quarters - md + mn);
    if (qtr <= 0) return QSeries(QExp{std::max(qtr, 0ll)});
    const long long rlimit = qtr + md;

    std::map<long long, Int> r;
    for (const auto& [e, c] : num.terms())
        if (e.quarters < rlimit) r.emplace(e.quarters, c);

    std::vector<std::pair<QExp, Int>> q;
    while (!r.empty()) {
        const long long rmin = r.begin()->first;
        const Int rc = r.begin()->second;
        const long long e = rmin - md;
        if (e < 0)
            throw not_divisible("div_exact: quotient would need exponent q^(" +
                                to_string(QExp{e}) + ")");
        if (!mpz_divisible_p(rc.get_mpz_t(), dlead.get_mpz_t()))
            throw not_divisible("div_exact: coefficient at q^(" + to_string(QExp{rmin}) +
                                ") is not divisible by the divisor's leading coefficient");
        Int c;
        mpz_divexact(c.get_mpz_t(), rc.get_mpz_t(), dlead.get_mpz_t());
        q.emplace_back(QExp{e}, c);
        for (const auto& [ed, cd] : den.terms()) {
            const long long ee = e + ed.quarters;
            if (ee >= rlimit) break;
            mpz_submul(r[ee].get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
        }
        while (!r.empty() && r.begin()->second == 0) r.erase(r.begin());
    }
    return QSeries::from_terms(q, QExp{qtr});
}

QSeries halve_exact(const QSeries& x) {
    std::vector<std::pair<QExp, Int>> out;
    out.reserve(x.terms().size());
    for (const auto& [e, c] : x.terms()) {
        if (mpz_odd_p(c.get_mpz_t()))
            throw odd_coefficient("halve_exact: odd coefficient at q^(" + to_string(e) + ")");
        out.emplace_back(e, c / 2);
    }
    return QSeries::from_terms(out, x.trunc());
}

bool agree_to_shared_trunc(const QSeries& x, const QSeries& y) {
    const QExp t = std::min(x.trunc(), y.trunc());
    auto ix = x.terms().begin(), iy = y.terms().begin();
    while (true) {
        const bool ex = ix == x.terms().end() || ix->first >= t;
        const bool ey = iy == y.terms().end() || iy->first >= t;
        if (ex || ey) return ex && ey;
        if (ix->first != iy->first || ix->second != iy->second) return false;
        ++ix;
        ++iy;
    }
}

std::string diff_to_shared_trunc(const QSeries& x, const QSeries& y, int max_shown) {
    const QExp t = std::min(x.trunc(), y.trunc());
    const QSeries a = x.truncated(t);
    const QSeries b = y.truncated(t);
    if (a.terms() == b.terms()) return "";
    std::ostringstream out;
    int shown = 0;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        QExp e{0};
        Int va(0), vb(0);
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            e = ia->first;
            va = ia->second;
            ++ia;
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            e = ib->first;
            vb = ib->second;
            ++ib;
        } else {
            e = ia->first;
            va = ia->second;
            vb = ib->second;
            ++ia;
            ++ib;
        }
        if (va == vb) continue;
        if (shown == max_shown) {
            out << "; ...";
            break;
        }
        if (shown) out << "; ";
        out << "q^" << to_string(e) << ": " << va.get_str() << " vs " << vb.get_str();
        ++shown;
    }
    return out.str();
}

std::string to_qs_text(const QSeries& s) {
    std::ostringstream os;
    os << "trunc=" << s.trunc().quarters << "\n";
    for (const auto& [e, c] : s.terms()) os << e.quarters << "\t" << c.get_str() << "\n";
    return os.str();
}

QSeries parse_qs_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    bool have_header = false;
    long long tr = 0;
    std::vector<std::pair<QExp, Int>> terms;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos || line[pos] == '#') continue;
        if (!have_header) {
            if (line.compare(pos, 6, "trunc=") != 0)
                throw std::invalid_argument("qs text: first line must be trunc=<quarters>");
            tr = std::stoll(line.substr(pos + 6));
            have_header = true;
            continue;
        }
        std::istringstream ls(line);
        long long e;
        std::string coeff;
        if (!(ls >> e >> coeff))
            throw std::invalid_argument("qs text: bad term line: " + line);
        terms.emplace_back(QExp{e}, Int(coeff));
    }
    if (!have_header) throw std::invalid_argument("qs text: empty input");
    return QSeries::from_terms(terms, QExp{tr});
}

}
