#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xi_ineq/xi_oracle.hpp"

using namespace xi_ineq;

// mpmath: s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s), 30 digits
TEST_CASE("xi against mpmath")
{
    CHECK(xi(0.5).real() == doctest::Approx(0.497120778188314109912773739685).epsilon(1e-14));
    const auto a = xi(ComplexPoint(0.3, 2.0));
    CHECK(a.real() == doctest::Approx(0.45344861882575758071).epsilon(1e-13));
    CHECK(a.imag() == doctest::Approx(-0.0084367380614749766432).epsilon(1e-11));
    const auto b = xi(ComplexPoint(0.75, -5.0));
    CHECK(b.real() == doctest::Approx(0.27550331000085392036).epsilon(1e-13));
    CHECK(b.imag() == doctest::Approx(-0.016641937554304070577).epsilon(1e-12));
    CHECK(xi_mod_sq(0.75, 10.0) == doctest::Approx(0.0014511506301265787).epsilon(1e-11));
    CHECK(xi_mod_sq(0.6, 14.2) == doctest::Approx(2.5288295101400347e-8).epsilon(1e-8));
}

TEST_CASE("functional equation and boundary values")
{
    CHECK(std::abs(xi(0.0) - 0.5) < 1e-12);
    CHECK(std::abs(xi(1.0) - 0.5) < 1e-12);
    for (ComplexPoint s : {ComplexPoint(0.2, 3.0), ComplexPoint(0.9, -7.0)})
        CHECK(std::abs(xi(s) - xi(1.0 - s)) < 1e-12);
}

TEST_CASE("characteristic function and densities")
{
    CHECK(std::abs(char_fn_Xi(0.75, 0.0) - 1.0) < 1e-15);
    // P_sigma integrates to one
    double s = 0.0;
    const double h = 0.01;
    for (int i = -1000; i <= 1000; ++i)
        s += h * density_P(0.75, i * h);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("U route and moments")
{
    for (double t : {0.0, 5.0, 12.0})
        CHECK(xi_mod_sq_via_U(0.75, t).value == doctest::Approx(xi_mod_sq(0.75, t)).epsilon(1e-10));
    CHECK(U_scaled_moment(0.75, 0).value == doctest::Approx(xi_mod_sq(0.75, 0.0)).epsilon(1e-12));
    CHECK(U_sigma(0.75, 0.4, UForm::three_term) == doctest::Approx(U_sigma(0.75, 0.4, UForm::two_term)).epsilon(1e-10));
}
