#include <doctest.h>

#include <thetaglue/bivar.hpp>
#include <thetaglue/errors.hpp>

using namespace thetaglue;

namespace {

/* the defining expressions, built from scratch */
BPoly h_direct(long n) {
    const BPoly a = BPoly::var_a(), b = BPoly::var_b();
    return bp_pow(a, 2 * n) + bp_pow(b, 2 * n) + bp_pow(a + b, 2 * n);
}

BPoly rho_direct(long n) {
    const BPoly a = BPoly::var_a(), b = BPoly::var_b();
    const BPoly num = bp_pow(a + b, 2 * n + 3) - bp_pow(a, 2 * n + 3) - bp_pow(b, 2 * n + 3);
    return bp_div_exact(num, a * b * (a + b));
}

}  // namespace

TEST_CASE("E and Delta are the symmetric building blocks") {
    const BPoly a = BPoly::var_a(), b = BPoly::var_b();
    CHECK(E_poly() == a * a + a * b + b * b);
    CHECK(Delta_poly() == bp_pow(a * b * (a + b), 2));
    CHECK(bp_swapped(E_poly()) == E_poly());
    CHECK(bp_swapped(Delta_poly()) == Delta_poly());
}

TEST_CASE("h_n and rho_n match their defining expressions") {
    for (long n = 0; n <= 12; ++n) {
        CHECK(h_poly(n) == h_direct(n));
        CHECK(rho_poly(n) == rho_direct(n));
    }
    CHECK(h_poly(0) == BPoly::constant(3));
    CHECK(rho_poly(0) == BPoly::constant(3));
    CHECK(h_poly(1) == Int(2) * E_poly());
}

TEST_CASE("closed forms reproduce h_n and rho_n") {
    for (long n = 1; n <= 16; ++n) CHECK(h_poly(n) == h_closed_poly(n));
    for (long n = 0; n <= 16; ++n) CHECK(rho_poly(n) == rho_closed_poly(n));
}

TEST_CASE("three-term recurrences hold") {
    for (long n = 3; n <= 16; ++n) {
        CHECK(check_recurrence_h(n));
        CHECK(check_recurrence_rho(n));
    }
}

TEST_CASE("both families stay symmetric in a and b") {
    for (long n = 0; n <= 10; ++n) {
        CHECK(bp_swapped(h_poly(n)) == h_poly(n));
        CHECK(bp_swapped(rho_poly(n)) == rho_poly(n));
    }
}

TEST_CASE("tabulated h_n in E and Delta") {
    CHECK(e_delta_string(h_poly(3)) == "2*E^3 + 3*Delta");
    CHECK(e_delta_string(h_poly(4)) == "2*E^4 + 8*Delta*E");
    CHECK(e_delta_string(h_poly(5)) == "2*E^5 + 15*Delta*E^2");
    CHECK(e_delta_string(h_poly(6)) == "2*E^6 + 24*Delta*E^3 + 3*Delta^2");
    CHECK(e_delta_string(h_poly(7)) == "2*E^7 + 35*Delta*E^4 + 14*Delta^2*E");
    CHECK(e_delta_string(h_poly(8)) == "2*E^8 + 48*Delta*E^5 + 40*Delta^2*E^2");
    CHECK(e_delta_string(h_poly(9)) == "2*E^9 + 63*Delta*E^6 + 90*Delta^2*E^3 + 3*Delta^3");
    CHECK(e_delta_string(h_poly(10)) == "2*E^10 + 80*Delta*E^7 + 175*Delta^2*E^4 + 20*Delta^3*E");
}

TEST_CASE("tabulated rho_n in E and Delta") {
    CHECK(e_delta_string(rho_poly(0)) == "3");
    CHECK(e_delta_string(rho_poly(1)) == "5*E");
    CHECK(e_delta_string(rho_poly(2)) == "7*E^2");
    CHECK(e_delta_string(rho_poly(3)) == "9*E^3 + 3*Delta");
    CHECK(e_delta_string(rho_poly(4)) == "11*E^4 + 11*Delta*E");
    CHECK(e_delta_string(rho_poly(5)) == "13*E^5 + 26*Delta*E^2");
    CHECK(e_delta_string(rho_poly(6)) == "15*E^6 + 50*Delta*E^3 + 3*Delta^2");
    CHECK(e_delta_string(rho_poly(7)) == "17*E^7 + 85*Delta*E^4 + 17*Delta^2*E");
    CHECK(e_delta_string(rho_poly(8)) == "19*E^8 + 133*Delta*E^5 + 57*Delta^2*E^2");
    CHECK(e_delta_string(rho_poly(9)) == "21*E^9 + 196*Delta*E^6 + 147*Delta^2*E^3 + 3*Delta^3");
    CHECK(e_delta_string(rho_poly(10)) ==
          "23*E^10 + 276*Delta*E^7 + 322*Delta^2*E^4 + 23*Delta^3*E");
}

TEST_CASE("e_delta_coeffs rejects polynomials outside Z[E, Delta]") {
    CHECK_THROWS_AS(e_delta_coeffs(BPoly::var_a()), not_divisible);
    const auto coeffs = e_delta_coeffs(h_poly(6));
    CHECK(coeffs.at({0, 6}) == 2);
    CHECK(coeffs.at({1, 3}) == 24);
    CHECK(coeffs.at({2, 0}) == 3);
}

TEST_CASE("polynomial printing") {
    const BPoly a = BPoly::var_a(), b = BPoly::var_b();
    CHECK(to_string(Int(2) * (a * a * a * b) - a * b * b + BPoly::constant(7)) ==
          "2*a^3*b - a*b^2 + 7");
    CHECK(to_string(BPoly{}) == "0");
}
