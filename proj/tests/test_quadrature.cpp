#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xi_ineq/quadrature.hpp"

using namespace xi_ineq;

TEST_CASE("finite integrals against closed forms")
{
    EvalConfig cfg;
    auto r = integrate_finite([](double x) { return std::sin(x); }, 0.0, M_PI, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.err_est < 1e-10);

    // sqrt endpoint singularity, still converges under adaptivity
    r = integrate_finite([](double x) { return std::sqrt(x); }, 0.0, 1.0, cfg);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-11));

    r = integrate_breakpoints([](double x) { return std::abs(x - 0.3); }, {0.0, 0.3, 1.0}, cfg);
    CHECK(r.value == doctest::Approx(0.045 + 0.245).epsilon(1e-14));
}

TEST_CASE("semi-infinite and cutoff")
{
    EvalConfig cfg;
    Decay d{1.0, 1.0, std::nullopt};
    auto r = integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, d, cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
    REQUIRE(r.truncation_point);
    // the dropped tail e^{-X} must sit below the absolute tolerance
    CHECK(std::exp(-*r.truncation_point) <= cfg.quad_abs_tol);
    CHECK(tail_cutoff(2.0, d, cfg) >= 3.0);
}

TEST_CASE("eta-weighted integral")
{
    // int_1^inf e^{-y} 2cosh(tau acosh y)/sqrt(y^2-1) dy = 2 K_tau(1)
    EvalConfig cfg;
    const double tau = 0.25;
    Decay d{1.0, 1.0, std::nullopt};
    auto r = integrate_eta_weighted([](double y) { return std::exp(-y); }, tau, d, cfg);
    CHECK(r.value == doctest::Approx(2.0 * std::cyl_bessel_k(tau, 1.0)).epsilon(1e-12));
}

TEST_CASE("oscillatory cosine transform")
{
    // int_0^inf e^{-x} cos(tx) dx = 1/(1+t^2)
    EvalConfig cfg;
    Decay d{1.0, 1.0, std::nullopt};
    for (double t : {0.0, 0.5, 3.0, 40.0}) {
        auto r = integrate_oscillatory_cos([](double x) { return std::exp(-x); }, t, 0.0, d, cfg);
        CHECK(r.value == doctest::Approx(1.0 / (1.0 + t * t)).epsilon(1e-10));
    }
    // Gaussian: int_0^inf e^{-x^2} cos(tx) = sqrt(pi)/2 e^{-t^2/4}
    Decay g{1.0, 1.0, 7.0};
    auto r = integrate_oscillatory_cos([](double x) { return std::exp(-x * x); }, 6.0, 0.0, g, cfg);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI) / 2 * std::exp(-9.0)).epsilon(1e-9));
}

TEST_CASE("failures are exceptions")
{
    EvalConfig cfg;
    CHECK_THROWS_AS(integrate_finite([](double) { return NAN; }, 0.0, 1.0, cfg), evaluation_error);
    EvalConfig tight = cfg;
    tight.quad_max_depth = 2;
    tight.quad_rel_tol = 1e-15;
    tight.quad_abs_tol = 0.0;
    // 1/sqrt(x) singularity cannot reach 1e-15 in two bisections
    CHECK_THROWS_AS(integrate_finite([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight),
                    convergence_error);
}

TEST_CASE("compensated summation")
{
    CompensatedSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 2.0);
}
