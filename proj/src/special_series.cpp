#include "xi_ineq/special_series.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace xi_ineq {

namespace {

void require_positive(double y, const char* who)
{
    if (!(y > 0.0) || !std::isfinite(y)) {
        std::ostringstream os;
        os << who << ": argument must be positive and finite, got " << y;
        throw std::domain_error(os.str());
    }
}

// sum_{n>=1} term(n), stopping on the first term below tol*|sum| after six terms
template <class Term>
double sum_terms(Term term, const EvalConfig& cfg, const char* who)
{
    double s = 0.0;
    for (long n = 1;; ++n) {
        if (n > cfg.series_max_terms)
            throw convergence_error(std::string(who) + ": series_max_terms exceeded", s);
        double t = term(n);
        s += t;
        if (n >= 6 && std::abs(t) <= cfg.series_tol * std::abs(s))
            return s;
    }
}

double R_direct(double y, const EvalConfig& cfg)
{
    const double q = M_PI * y * y;
    return 2.0 * sum_terms([q](long n) { return std::exp(-q * double(n) * double(n)); }, cfg,
                           "theta_R");
}

double Rp_direct(double y, const EvalConfig& cfg)
{
    const double q = M_PI * y * y;
    return -4.0 * M_PI * y *
           sum_terms(
               [q](long n) {
                   double n2 = double(n) * double(n);
                   return n2 * std::exp(-q * n2);
               },
               cfg, "theta_R_prime");
}

double H_direct(double y, const EvalConfig& cfg)
{
    return 4.0 * M_PI * sum_terms(
                            [y](long n) {
                                double ny2 = (n * y) * (n * y);
                                return (2.0 * M_PI * ny2 * ny2 - 3.0 * ny2) *
                                       std::exp(-M_PI * ny2);
                            },
                            cfg, "H_fn");
}

} // namespace

double theta_R(double y, const EvalConfig& cfg)
{
    require_positive(y, "theta_R");
    if (y >= 1.0)
        return R_direct(y, cfg);
    const double r = 1.0 / y;
    return r - 1.0 + r * R_direct(r, cfg);
}

double theta_R_prime(double y, const EvalConfig& cfg)
{
    require_positive(y, "theta_R_prime");
    if (y >= 1.0)
        return Rp_direct(y, cfg);
    // G'(y) = -y^{-2} G(1/y) - y^{-3} G'(1/y)
    const double r = 1.0 / y;
    return -r * r * (1.0 + R_direct(r, cfg)) - r * r * r * Rp_direct(r, cfg);
}

double H_fn(double y, const EvalConfig& cfg)
{
    require_positive(y, "H_fn");
    if (y >= 1.0)
        return H_direct(y, cfg);
    const double r = 1.0 / y;
    return r * H_direct(r, cfg);
}

double stable_combo_A(double y, const EvalConfig& cfg)
{
    require_positive(y, "stable_combo_A");
    if (y >= 1.0)
        return y * R_direct(y, cfg) + y - 1.0;
    return R_direct(1.0 / y, cfg);
}

double stable_combo_B(double y, const EvalConfig& cfg)
{
    require_positive(y, "stable_combo_B");
    if (y >= 1.0)
        return y * y * Rp_direct(y, cfg) + 1.0;
    const double r = 1.0 / y;
    return -r * Rp_direct(r, cfg) - R_direct(r, cfg);
}

double theta_R_truncated(double y, int n_max)
{
    double s = 0.0;
    for (int n = 1; n <= n_max; ++n)
        s += std::exp(-M_PI * n * n * y * y);
    return 2.0 * s;
}

double theta_R_prime_truncated(double y, int n_max)
{
    double s = 0.0;
    for (int n = 1; n <= n_max; ++n)
        s += double(n) * n * std::exp(-M_PI * n * n * y * y);
    return -4.0 * M_PI * y * s;
}

double divisor_sigma(long k, double a)
{
    if (k < 1)
        throw std::domain_error("divisor_sigma: k must be positive");
    double s = 0.0;
    for (long d = 1; d * d <= k; ++d) {
        if (k % d)
            continue;
        s += std::pow(double(d), a);
        long e = k / d;
        if (e != d)
            s += std::pow(double(e), a);
    }
    if (!std::isfinite(s))
        throw std::overflow_error("divisor_sigma: overflow");
    return s;
}

JTauSeries::JTauSeries(double tau, long k_cached) : tau_(tau), coef_(k_cached + 1, 0.0)
{
    if (!std::isfinite(tau))
        throw std::domain_error("J_tau: tau must be finite");
    for (long k = 1; k <= k_cached; ++k)
        coef_[k] = divisor_sigma(k, 2.0 * tau) * std::pow(double(k), -tau);
}

double JTauSeries::coef(long k) const
{
    if (k < static_cast<long>(coef_.size()))
        return coef_[k];
    return divisor_sigma(k, 2.0 * tau_) * std::pow(double(k), -tau_);
}

double JTauSeries::operator()(double y, int deriv, const EvalConfig& cfg) const
{
    require_positive(y, "J_tau");
    if (deriv < 0 || deriv > 3)
        throw std::domain_error("J_tau: deriv must be in 0..3");
    if (cfg.j_tau_naive) {
        double s = 0.0;
        for (long m = 1; m <= cfg.series_max_terms; ++m) {
            if (std::exp(-2.0 * M_PI * m * y) == 0.0)
                break;
            for (long n = 1; n <= cfg.series_max_terms; ++n) {
                const double k = double(m) * double(n);
                const double e = std::exp(-2.0 * M_PI * k * y);
                if (e == 0.0)
                    break;
                s += std::pow(double(n) / double(m), tau_) * std::pow(-2.0 * M_PI * k, deriv) * e;
            }
        }
        return s;
    }
    return sum_terms(
        [&](long k) {
            const double e = std::exp(-2.0 * M_PI * double(k) * y);
            if (e == 0.0)
                return 0.0;
            return coef(k) * std::pow(-2.0 * M_PI * double(k), deriv) * e;
        },
        cfg, "J_tau");
}

double J_tau(double tau, double y, int deriv, const EvalConfig& cfg)
{
    // only the first few coefficients matter for y >= 1
    return JTauSeries(tau, 16)(y, deriv, cfg);
}

double eta_tau(double tau, double y)
{
    if (!(y > 1.0) || !std::isfinite(y))
        throw std::domain_error("eta_tau: requires y > 1 (use the cosh substitution at y = 1)");
    const double s = std::sqrt((y - 1.0) * (y + 1.0));
    const double u = std::log(y + s);
    return 2.0 * std::cosh(tau * u) / s;
}

namespace {

// maximize f on (0, inf) given its y -> 0 limit; scan then golden section
SupConstant maximize(const std::function<double(double)>& f, double limit0)
{
    constexpr int npts = 256;
    const double lo = std::log(1e-4), hi = std::log(1e2);
    int best = 0;
    double best_v = -1.0;
    std::vector<double> ys(npts);
    for (int i = 0; i < npts; ++i) {
        ys[i] = std::exp(lo + (hi - lo) * i / (npts - 1));
        double v = f(ys[i]);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    double a = ys[std::max(best - 1, 0)], b = ys[std::min(best + 1, npts - 1)];
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    SupConstant r;
    const double ym = 0.5 * (a + b);
    r.value = std::max(f(ym), best_v);
    r.location = f(ym) >= best_v ? ym : ys[best];
    if (limit0 >= r.value) {
        r.value = limit0;
        r.location = 0.0;
        r.boundary_limit = true;
    }
    return r;
}

// y R(y), exact below 1 through 1 - y + R(1/y)
double yR(double y, const EvalConfig& cfg)
{
    if (y >= 1.0)
        return y * theta_R(y, cfg);
    return 1.0 - y + stable_combo_A(y, cfg);
}

} // namespace

SupConstant sup_constant_Cn(int n, const EvalConfig& cfg)
{
    if (n < 0)
        throw std::domain_error("sup_constant_Cn: n must be nonnegative");
    if (n == 0) {
        SupConstant r;
        r.value = std::numeric_limits<double>::infinity();
        r.divergent = true;
        r.boundary_limit = true;
        return r;
    }
    // y^n R(y) -> 1 as y -> 0 for n = 1, and -> 0 for n >= 2
    const double limit0 = n == 1 ? 1.0 : 0.0;
    return maximize([&](double y) { return std::pow(y, n - 1) * yR(y, cfg); }, limit0);
}

SupConstant sup_constant_C(const EvalConfig& cfg)
{
    return maximize([&](double y) { return (y * y + 1.0) * yR(y, cfg); }, 1.0);
}

} // namespace xi_ineq
