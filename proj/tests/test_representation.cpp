#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xi_ineq/representation.hpp"
#include "xi_ineq/xi_oracle.hpp"

using namespace xi_ineq;

namespace {
// converged constants at sigma = 3/4 and 0.6 (mpmath, 30 digits)
constexpr double S75 = 0.495669495621062878898661552562, T75 = -0.0232205210760196962257949939734;
constexpr double S60 = 0.494457014426475471521024114265, T60 = -0.0231156364025982181229169200231;
}

TEST_CASE("F against the Bessel closed form")
{
    // F_sigma(lambda) = 2^{-tau} lambda K_tau(2 lambda)
    for (double lam : {0.2, 1.3, 4.0}) {
        const double ref = std::pow(2.0, -0.25) * lam * std::cyl_bessel_k(0.25, 2 * lam);
        CHECK(F_sigma(0.75, lam, 0) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(F_sigma(0.75, lam, 0, FForm::eta) == doctest::Approx(ref).epsilon(1e-10));
    }
    CHECK(F_sigma(0.75, 1.3, 0) == doctest::Approx(std::pow(2.0, -0.25) * 1.3 * 0.0559731256926294134050709102266).epsilon(1e-13));
    // derivative by central difference
    const double h = 1e-4;
    const double fd = (F_sigma(0.75, 1.3 + h, 0) - F_sigma(0.75, 1.3 - h, 0)) / (2 * h);
    CHECK(F_sigma(0.75, 1.3, 1) == doctest::Approx(fd).epsilon(1e-7));
    CHECK_THROWS_AS(F_sigma(0.75, 1.3, 1, FForm::eta), unsupported_error);
}

TEST_CASE("W closed form vs convolution")
{
    for (double x : {0.0, 0.5, 1.0})
        CHECK(W_sigma(0.75, x, WForm::convolution) == doctest::Approx(W_sigma(0.75, x)).epsilon(1e-9));
    CHECK(W_sigma(0.75, 0.0) == doctest::Approx(0.003693316491831533).epsilon(1e-12));
    CHECK(W_sigma(0.75, 1.0) == doctest::Approx(1.61032684778e-7).epsilon(1e-10));
    CHECK(W_cosine_integral(0.75, 0.0).value == doctest::Approx(5.15152652084309e-4).epsilon(1e-12));
}

TEST_CASE("three routes to S and T")
{
    for (auto m : {STMethod::A_direct, STMethod::B_series, STMethod::C_inversion}) {
        const auto c = S_T_constants(0.75, m);
        CHECK(c.S_value == doctest::Approx(S75).epsilon(1e-12));
        CHECK(c.T_value == doctest::Approx(T75).epsilon(1e-12));
    }
    const auto c = S_T_constants(0.6, STMethod::A_direct);
    CHECK(c.S_value == doctest::Approx(S60).epsilon(1e-12));
    CHECK(c.T_value == doctest::Approx(T60).epsilon(1e-12));
    const auto j = S_T_via_J(0.25);
    CHECK(j.S_value == doctest::Approx(S75).epsilon(1e-12));
    CHECK(parse_method("B") == STMethod::B_series);
    CHECK_THROWS(parse_method("Z"));
}

TEST_CASE("published truncation recipes")
{
    // mpmath prototype of the B recipe: [0.001, 20], m, n <= 10
    const auto b = S_T_constants(0.75, STMethod::B_series, {}, RecipeTruncation::B);
    CHECK(b.S_value == doctest::Approx(0.473929111008).epsilon(1e-10));
    CHECK(b.T_value == doctest::Approx(-0.021844855516).epsilon(1e-9));
    const auto c = S_T_constants(0.75, STMethod::C_inversion, {}, RecipeTruncation::C);
    CHECK(c.truncation.published_S_formula);
    CHECK(c.T_value == doctest::Approx(T75).epsilon(1e-6));
}

TEST_CASE("modulus representation")
{
    const ModulusRepresentation mr(0.75);
    const double x0 = xi_mod_sq(0.75, 0.0);
    for (double t : {0.0, 1.0, 5.0, 14.2, 20.0})
        CHECK(std::abs(mr(t) - xi_mod_sq(0.75, t)) / x0 < 1e-12);
    CHECK(modulus_rhs(0.75, 0.0) == doctest::Approx(0.24784380322824386).epsilon(1e-12));
    const JRepresentation jr(0.1);
    CHECK(jr(1.0) == doctest::Approx(2 * xi_mod_sq(0.6, 1.0)).epsilon(1e-12));
}

TEST_CASE("power series coefficients")
{
    const auto ps = power_series_coeffs(0.75, 8);
    CHECK(ps.coeffs[0] == doctest::Approx(0.24784380322824386).epsilon(1e-12));
    for (double t : {0.25, 0.75, 1.0})
        CHECK(std::abs(ps(t) - xi_mod_sq(0.75, t)) < 1e-9);
    for (int k = 0; k <= 10; ++k)
        CHECK((k % 2 ? -1 : 1) * c_coeff(0.25, k) > 0.0);
    CHECK(coeff_magnitude_bound(0) == doctest::Approx(48 * std::pow(M_PI, 8) * (3 * std::exp(15.0) + 1)));
}
