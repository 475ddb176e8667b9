#include <doctest.h>

#include <map>

#include <thetaglue/errors.hpp>
#include <thetaglue/modforms.hpp>

using namespace thetaglue;

namespace {

/* direct lattice-sum oracle for the three theta constants */
QSeries theta_oracle(ThetaKind kind, QExp trunc) {
    std::map<QExp, Int> acc;
    for (long long m = -200; m <= 200; ++m) {
        long long quarters = 0;
        Int weight(1);
        switch (kind) {
            case ThetaKind::Theta2:
                quarters = (2 * m + 1) * (2 * m + 1);
                break;
            case ThetaKind::Theta3:
                quarters = 4 * m * m;
                break;
            case ThetaKind::Theta4:
                quarters = 4 * m * m;
                if (m % 2 != 0) weight = -1;
                break;
        }
        if (quarters < trunc.quarters) acc[QExp{quarters}] += weight;
    }
    std::vector<std::pair<QExp, Int>> terms(acc.begin(), acc.end());
    return QSeries::from_terms(terms, trunc);
}

}  // namespace

TEST_CASE("theta constants match the direct lattice sum") {
    const QExp trunc = q_int(25);
    for (ThetaKind kind : {ThetaKind::Theta2, ThetaKind::Theta3, ThetaKind::Theta4})
        CHECK(theta_series(kind, trunc) == theta_oracle(kind, trunc));
}

TEST_CASE("theta2^4 + theta4^4 = theta3^4") {
    ModformCache cache(q_int(32));
    const QSeries& t2 = cache.theta(ThetaKind::Theta2);
    const QSeries& t3 = cache.theta(ThetaKind::Theta3);
    const QSeries& t4 = cache.theta(ThetaKind::Theta4);
    CHECK(agree_to_shared_trunc(add(pow(t2, 4), pow(t4, 4)), pow(t3, 4)));
}

TEST_CASE("the two E4 routes agree and have the known low coefficients") {
    ModformCache cache(q_int(16));
    CHECK(cache.e4() == e4_divisor_series(cache.trunc()));
    CHECK(cache.e4().coeff(q_int(0)) == 1);
    CHECK(cache.e4().coeff(q_int(2)) == 240);
    CHECK(cache.e4().coeff(q_int(4)) == 2160);
    CHECK(cache.e4().coeff(q_int(6)) == 6720);
    CHECK(cache.e4().coeff(q_int(1)) == 0);
}

TEST_CASE("Delta24 leads with q^2 and has the expected coefficients") {
    ModformCache cache(q_int(16));
    const QSeries& d = cache.delta24();
    CHECK(d.min_exp() == q_int(2));
    CHECK(d.coeff(q_int(2)) == 1);
    CHECK(cache.tau(1) == 1);
    CHECK(cache.tau(2) == -24);
    CHECK(cache.tau(3) == 252);
    CHECK(cache.tau(4) == -1472);
    CHECK(cache.tau(5) == 4830);
    CHECK(cache.tau(6) == -6048);
    CHECK_THROWS_AS(cache.tau(8), beyond_truncation);
}

TEST_CASE("h_n series: boundary values and closed form") {
    ModformCache cache(q_int(20));
    CHECK(cache.h(0) == QSeries::monomial(Int(3), q_int(0), cache.trunc()));
    CHECK(cache.rho(-1).is_zero());
    CHECK(cache.rho(0) == QSeries::monomial(Int(3), q_int(0), cache.trunc()));
    for (long n = 1; n <= 8; ++n) CHECK(cache.h(n) == cache.h_closed(n));
    for (long n = 0; n <= 8; ++n) CHECK(cache.rho(n) == cache.rho_closed(n));
    CHECK(cache.h(1).trunc() == cache.trunc());
    CHECK(cache.rho(2).trunc() == cache.trunc());
}

TEST_CASE("series recurrences with the scaled discriminant") {
    ModformCache cache(q_int(20));
    const QSeries& e = cache.e4();
    const QSeries e2 = mul(e, e);
    const QSeries d256 = mul(cache.delta24(), Int(256));
    for (long n = 3; n <= 8; ++n) {
        const QSeries rhs = add(sub(mul(mul(e, cache.h(n - 1)), Int(2)), mul(e2, cache.h(n - 2))),
                                mul(d256, cache.h(n - 3)));
        CHECK(agree_to_shared_trunc(cache.h(n), rhs));
        const QSeries rrhs =
            add(sub(mul(mul(e, cache.rho(n - 1)), Int(2)), mul(e2, cache.rho(n - 2))),
                mul(d256, cache.rho(n - 3)));
        CHECK(agree_to_shared_trunc(cache.rho(n), rrhs));
    }
}

TEST_CASE("closed-form domain limits") {
    ModformCache cache(q_int(8));
    CHECK_THROWS_AS(cache.h_closed(0), std::invalid_argument);
    CHECK_THROWS_AS(cache.rho_closed(-1), std::invalid_argument);
}
