#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xi_ineq/inequality_lab.hpp"
#include "xi_ineq/special_series.hpp"
#include "xi_ineq/xi_oracle.hpp"

using namespace xi_ineq;

TEST_CASE("scan routes agree and stay positive")
{
    const auto a = scan_inequality(0.75, 4.0, 1.0, ScanRoute::representation, {}, 1);
    const auto b = scan_inequality(0.75, 4.0, 1.0, ScanRoute::J_eta, {}, 2);
    const auto c = scan_inequality(0.75, 4.0, 1.0, ScanRoute::U_transform, {}, 1);
    REQUIRE(a.grid.size() == 5);
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-11));
        CHECK(a.values[i] == doctest::Approx(c.values[i]).epsilon(1e-11));
    }
    CHECK(a.violations.empty());
    CHECK(a.min_t == 4.0);
}

TEST_CASE("truncation levels: ceiling formulas")
{
    const auto L = truncation_levels(0.5, 0.75, 2);
    // C = 1: X = 8 * 25 / 0.375
    const double X = 8.0 * 25.0 / (0.75 * 0.5);
    CHECK(L.N1 == static_cast<long>(std::ceil(std::log(X) / 0.75)));
    CHECK(L.N2 == static_cast<std::uint64_t>(std::ceil(X * X)));
    CHECK(L.tail_passes);
    CHECK_THROWS_AS(truncation_levels(0.0, 0.75, 2), std::domain_error);
}

TEST_CASE("shrinking epsilon never lowers the levels")
{
    const auto a = truncation_levels(0.5, 0.75, 1), b = truncation_levels(0.1, 0.75, 1);
    CHECK(b.N1 >= a.N1);
    CHECK(b.N2 >= a.N2);
}

TEST_CASE("moment bound T^{2n} nu_n < (C_1 + C_{4T+3}) C_{2T+3} T^{2n} / (2(T+1))^{2n+1}")
{
    const int T = 2;
    const PolyApproxV V(0.75, 1e3, 2);
    const double lhs_c = (sup_constant_Cn(1).value + sup_constant_Cn(4 * T + 3).value) * sup_constant_Cn(2 * T + 3).value;
    for (int n = 0; n <= 2; ++n) {
        const double tn = std::pow(double(T), 2 * n);
        CHECK(tn * V.scaled_moment(n) < lhs_c * tn / std::pow(2.0 * (T + 1), 2 * n + 1));
    }
}

TEST_CASE("polynomial approximation converges to the representation")
{
    const PolyApproxV V(0.75, 10.0, 40);
    for (double t : {0.0, 1.0, 2.0})
        CHECK(V(t) == doctest::Approx(2 * xi_mod_sq(0.75, t)).epsilon(1e-9));
    const auto r = check_truncated_margin(0.75, 2, 0.5);
    CHECK(r.substituted);
    CHECK(r.passes_margin);
}

TEST_CASE("counter RNG is reproducible and uniform-ish")
{
    CounterRng a(1, 7), b(1, 7), c(1, 8);
    CHECK(a.next() == b.next());
    CHECK(a.next() != c.next());
    double s = 0;
    CounterRng u(3, 0);
    for (int i = 0; i < 100000; ++i) {
        const double x = u.uniform();
        REQUIRE((x > 0.0 && x < 1.0));
        s += x;
    }
    CHECK(s / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("sampler table, envelope and KS")
{
    const XSampler xs(0.75);
    CHECK(xs.certified_error() < 1e-9);
    CHECK(xs.envelope() <= 2.0);
    CHECK(xs.envelope() >= W_sigma(0.75, 0.0));
    CHECK(xs.cdf(0.0) == 0.0);
    CHECK(xs.cdf(xs.x_cut()) == 1.0);
    std::vector<double> x(20000);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = xs.sample(11, i);
    CHECK(xs.sample(11, 5) == x[5]);
    double m = 0, m2 = 0;
    for (double v : x) {
        REQUIRE(v >= 0.0);
        m += v;
        m2 += v * v;
    }
    m /= x.size();
    const double se = std::sqrt((m2 / x.size() - m * m) / x.size());
    CHECK(std::abs(m - xs.mean()) < 4 * se);
    CHECK(ks_statistic(x, [&](double v) { return xs.cdf(v); }) < ks_critical_1pct(20000));
}

TEST_CASE("Monte Carlo is thread-count independent")
{
    const XSampler xs(0.75);
    const auto a = mc_check(xs, 2.0, 140000, 5, {}, 1);
    const auto b = mc_check(xs, 2.0, 140000, 5, {}, 3);
    CHECK(a.estimate == b.estimate);
    CHECK(std::abs(a.estimate - a.deterministic_value) < 4 * a.std_error);
    CHECK(a.mm_holds);
}

TEST_CASE("kernel K and autocorrelation")
{
    const KernelK K(0.75);
    for (double x : {0.0, 1.0, 3.0, 8.0})
        CHECK(K(x) > 0.0);
    CHECK(K.autocorrelation(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    const double q = (25 + 0.0625) * (25 + 0.5625);
    CHECK(K.fourier(5.0) == doctest::Approx(4 * 0.75 * 0.25 * 0.5 * xi_mod_sq(0.75, 5.0) / q).epsilon(1e-9));
}

TEST_CASE("orthogonalization scan localizes a synthetic zero")
{
    // rectangular window on [0, L]: A(t) = sin(tL)/(tL), first zero pi/L
    const double L = 0.7;
    const auto r = orthogonalization_scan(
        [&](double t) { return Estimate{std::sin(t * L) / (t * L), 1e-15}; }, 10.0, 0.1);
    REQUIRE(r.iota_found);
    CHECK(std::abs(*r.iota_found - M_PI / L) < 1e-9);
}
