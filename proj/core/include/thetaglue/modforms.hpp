#pragma once

#include <map>

#include "thetaglue/qseries.hpp"

namespace thetaglue {

enum class ThetaKind { Theta2 = 2, Theta3 = 3, Theta4 = 4 };

/*
 * theta2 = sum_m q^{(m+1/2)^2}, theta3 = sum_m q^{m^2},
 * theta4 = sum_m (-1)^m q^{m^2}, summed over all integers m.
 */
QSeries theta_series(ThetaKind kind, QExp trunc);

/* 1 + 240 sum_{m>=1} sigma_3(m) q^{2m}; independent of the theta route */
QSeries e4_divisor_series(QExp trunc);

/*
 * One truncation, one set of cached building blocks.  Construction computes
 * the thetas with internal slack so that the rho quotients and the closed
 * forms stay exact out to the requested trunc; every series handed out
 * shares exactly trunc().
 */
class ModformCache {
public:
    explicit ModformCache(QExp trunc = q_int(32));

    QExp trunc() const { return trunc_; }
    const QSeries& theta(ThetaKind kind) const;
    /* (theta2^8 + theta3^8 + theta4^8) / 2 */
    const QSeries& e4() const { return e4_; }
    /* ((theta2 theta3 theta4) / 2)^8 */
    const QSeries& delta24() const { return d24_; }
    /* coefficient of q^{2m} in delta24; m >= 1, 2m below trunc */
    Int tau(long m) const;

    /* theta2^{8n} + theta3^{8n} + theta4^{8n}; h_0 = 3 */
    const QSeries& h(long n);
    /* (theta3^{8n+12} - theta2^{8n+12} - theta4^{8n+12}) / (theta2 theta3 theta4)^4;
     * rho_{-1} = 0 */
    const QSeries& rho(long n);

    /* 2 E4^n + sum_i (n/i) C(n-i-1, 2i-1) 2^{8i} Delta24^i E4^{n-3i}, n >= 1 */
    QSeries h_closed(long n);
    /* sum_i ((2n+3)/(2i+1)) C(n-i, 2i) 2^{8i} Delta24^i E4^{n-3i}, n >= 0 */
    QSeries rho_closed(long n);

private:
    QSeries theta_pow(ThetaKind kind, unsigned long e) const;

    QExp trunc_, work_;
    QSeries t2w_, t3w_, t4w_, e4w_, d24w_, den4_;
    QSeries t2_, t3_, t4_, e4_, d24_;
    std::map<long, QSeries> memo_h_, memo_rho_;
};

}
