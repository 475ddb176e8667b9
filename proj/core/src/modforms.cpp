#include "thetaglue/modforms.hpp"

namespace thetaglue {

QSeries theta_series(ThetaKind kind, QExp trunc) {
    std::vector<std::pair<QExp, Int>> terms;
    if (kind == ThetaKind::Theta2) {
        /* (m+1/2)^2 = (2m+1)^2/4; m and -m-1 coincide */
        for (long long m = 0; (2 * m + 1) * (2 * m + 1) < trunc.quarters; ++m)
            terms.emplace_back(q_quarters((2 * m + 1) * (2 * m + 1)), 2);
    } else {
        terms.emplace_back(q_int(0), 1);
        for (long long m = 1; 4 * m * m < trunc.quarters; ++m) {
            const bool flip = kind == ThetaKind::Theta4 && m % 2 == 1;
            terms.emplace_back(q_quarters(4 * m * m), flip ? -2 : 2);
        }
    }
    return QSeries::from_terms(terms, trunc);
}

QSeries e4_divisor_series(QExp trunc) {
    std::vector<std::pair<QExp, Int>> terms{{q_int(0), 1}};
    for (long long m = 1; 8 * m < trunc.quarters; ++m) {
        Int s3 = 0;
        for (long d = 1; d <= m; ++d)
            if (m % d == 0) s3 += Int(d) * d * d;
        terms.emplace_back(q_int(2 * m), 240 * s3);
    }
    return QSeries::from_terms(terms, trunc);
}

ModformCache::ModformCache(QExp trunc)
    : trunc_(trunc),
      work_(trunc + q_quarters(16)),
      t2w_(theta_series(ThetaKind::Theta2, work_)),
      t3w_(theta_series(ThetaKind::Theta3, work_)),
      t4w_(theta_series(ThetaKind::Theta4, work_)),
      e4w_(halve_exact(add(add(pow(t2w_, 8), pow(t3w_, 8)), pow(t4w_, 8)))),
      d24w_(pow(halve_exact(mul(mul(t2w_, t3w_), t4w_)), 8)),
      den4_(pow(mul(mul(t2w_, t3w_), t4w_), 4)),
      t2_(t2w_.truncated(trunc_)),
      t3_(t3w_.truncated(trunc_)),
      t4_(t4w_.truncated(trunc_)),
      e4_(e4w_.truncated(trunc_)),
      d24_(d24w_.truncated(trunc_)) {}

const QSeries& ModformCache::theta(ThetaKind kind) const {
    switch (kind) {
        case ThetaKind::Theta2: return t2_;
        case ThetaKind::Theta3: return t3_;
        default: return t4_;
    }
}

Int ModformCache::tau(long m) const {
    if (m < 1) throw std::invalid_argument("tau: m must be >= 1");
    return d24_.coeff(q_int(2 * m));
}

QSeries ModformCache::theta_pow(ThetaKind kind, unsigned long e) const {
    switch (kind) {
        case ThetaKind::Theta2: return pow(t2w_, e);
        case ThetaKind::Theta3: return pow(t3w_, e);
        default: return pow(t4w_, e);
    }
}

const QSeries& ModformCache::h(long n) {
    if (n < 0) throw std::invalid_argument("h: n must be >= 0");
    auto it = memo_h_.find(n);
    if (it != memo_h_.end()) return it->second;
    QSeries val = n == 0 ? QSeries::monomial(3, q_int(0), trunc_)
                         : add(add(theta_pow(ThetaKind::Theta2, 8 * n),
                                   theta_pow(ThetaKind::Theta3, 8 * n)),
                               theta_pow(ThetaKind::Theta4, 8 * n))
                               .truncated(trunc_);
    return memo_h_.emplace(n, std::move(val)).first->second;
}

const QSeries& ModformCache::rho(long n) {
    if (n < -1) throw std::invalid_argument("rho: n must be >= -1");
    auto it = memo_rho_.find(n);
    if (it != memo_rho_.end()) return it->second;
    QSeries val(trunc_);
    if (n >= 0) {
        const unsigned long N = 8 * static_cast<unsigned long>(n) + 12;
        const QSeries num = sub(theta_pow(ThetaKind::Theta3, N),
                                add(theta_pow(ThetaKind::Theta2, N),
                                    theta_pow(ThetaKind::Theta4, N)));
        val = div_exact(num, den4_).truncated(trunc_);
    }
    return memo_rho_.emplace(n, std::move(val)).first->second;
}

static Int integral_prefactor(const Rat& r, const char* who) {
    if (r.get_den() != 1)
        throw non_integer_result(std::string(who) + ": prefactor " + r.get_str() +
                                 " is not an integer");
    return r.get_num();
}

QSeries ModformCache::h_closed(long n) {
    if (n < 1) throw std::invalid_argument("h_closed: n must be >= 1");
    QSeries acc = mul(pow(e4w_, n), Int(2));
    for (long i = 1; 3 * i <= n; ++i) {
        const Rat pref = make_rat(Int(n), Int(i)) * Rat(binomial(n - i - 1, 2 * i - 1));
        const Int c = integral_prefactor(pref, "h_closed") * pow2(8 * i);
        acc = add(acc, mul(mul(pow(d24w_, i), pow(e4w_, n - 3 * i)), c));
    }
    return acc.truncated(trunc_);
}

QSeries ModformCache::rho_closed(long n) {
    if (n < 0) throw std::invalid_argument("rho_closed: n must be >= 0");
    QSeries acc(work_);
    for (long i = 0; 3 * i <= n; ++i) {
        const Rat pref = make_rat(Int(2 * n + 3), Int(2 * i + 1)) * Rat(binomial(n - i, 2 * i));
        const Int c = integral_prefactor(pref, "rho_closed") * pow2(8 * i);
        acc = add(acc, mul(mul(pow(d24w_, i), pow(e4w_, n - 3 * i)), c));
    }
    return acc.truncated(trunc_);
}

}
