#include "xi_ineq/xi_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "xi_ineq/special_series.hpp"

namespace xi_ineq {

namespace {

EvalConfig oracle_cfg(const EvalConfig& cfg)
{
    return cfg.tightened(1e-15, 1e-18);
}

// H(e^z) underflows (times any modest power) once pi e^{2z} > 745
constexpr double kHzCut = 2.75;

} // namespace

ComplexPoint xi(ComplexPoint s, const EvalConfig& cfg)
{
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw std::domain_error("xi: s must be finite");
    const EvalConfig oc = oracle_cfg(cfg);
    const ComplexPoint p1 = 0.5 * s - 1.0, p2 = -0.5 * (s + 1.0);
    auto kernel = [&](double x) {
        const double psi = 0.5 * theta_R(std::sqrt(x), oc);
        const double lx = std::log(x);
        return (std::exp(p1 * lx) + std::exp(p2 * lx)) * psi;
    };
    // psi(x) <= 1.0001 e^{-pi x}; |x^p| absorbed with 0.1 of the rate
    const double pmax = std::max({0.0, p1.real(), p2.real()});
    Decay d{M_PI - 0.1, 2.1 * (pmax > 0.0 ? std::pow(pmax / (0.1 * M_E), pmax) : 1.0), std::nullopt};
    const auto re = integrate_semi_infinite([&](double x) { return kernel(x).real(); }, 1.0, d, oc);
    double im_val = 0.0;
    if (s.imag() != 0.0)
        im_val = integrate_semi_infinite([&](double x) { return kernel(x).imag(); }, 1.0, d, oc).value;
    const ComplexPoint integral(re.value, im_val);
    return 0.5 + 0.5 * s * (s - 1.0) * integral;
}

double xi_mod_sq(double sigma, double t, const EvalConfig& cfg)
{
    return std::norm(xi(ComplexPoint(sigma, -t), cfg));
}

ComplexPoint char_fn_Xi(double sigma, double t, const EvalConfig& cfg)
{
    const ComplexPoint x0 = xi(ComplexPoint(sigma, 0.0), cfg);
    if (x0 == 0.0)
        throw std::domain_error("char_fn_Xi: xi(sigma) vanishes");
    return xi(ComplexPoint(sigma, -t), cfg) / x0.real();
}

double density_P_unnormalized(double sigma, double y, const EvalConfig& cfg)
{
    if (y <= 0.0)
        return H_fn(std::exp(-y), cfg) * std::exp(-sigma * y);
    return H_fn(std::exp(y), cfg) * std::exp((1.0 - sigma) * y);
}

double density_P(double sigma, double y, const EvalConfig& cfg)
{
    const double x0 = xi(ComplexPoint(sigma, 0.0), cfg).real();
    return density_P_unnormalized(sigma, y, cfg) / (2.0 * x0);
}

double U_sigma(double sigma, double y, UForm form, const EvalConfig& cfg)
{
    if (!(y >= 0.0))
        throw std::domain_error("U_sigma: y must be nonnegative");
    if (form == UForm::three_term) {
        auto a = [&](double z) {
            return H_fn(std::exp(y + z), cfg) * H_fn(std::exp(z), cfg) *
                   std::exp(2.0 * (1.0 - sigma) * z);
        };
        auto c = [&](double z) {
            return H_fn(std::exp(y + z), cfg) * H_fn(std::exp(z), cfg) * std::exp(2.0 * sigma * z);
        };
        const double zc = std::max(kHzCut - y, 0.25);
        double s = std::exp((1.0 - sigma) * y) * integrate_finite(a, 0.0, zc, cfg).value +
                   std::exp(sigma * y) * integrate_finite(c, 0.0, zc, cfg).value;
        if (y > 0.0) {
            auto b = [&](double z) {
                return H_fn(std::exp(y - z), cfg) * H_fn(std::exp(z), cfg) *
                       std::exp((2.0 * sigma - 1.0) * z);
            };
            s += std::exp((1.0 - sigma) * y) * integrate_finite(b, 0.0, y, cfg).value;
        }
        return s;
    }
    // e^{sigma y} int_1^inf H(v)H(e^y v) v^{2sigma-1} + e^{(sigma-1)y} int_1^inf H(v)H(e^{-y}v) v^{1-2sigma}
    const double ey = std::exp(y);
    const double vc = std::exp(kHzCut);
    auto p = [&](double v) {
        return H_fn(v, cfg) * H_fn(ey * v, cfg) * std::pow(v, 2.0 * sigma - 1.0);
    };
    auto m = [&](double v) {
        return H_fn(v, cfg) * H_fn(v / ey, cfg) * std::pow(v, 1.0 - 2.0 * sigma);
    };
    std::vector<double> pts{1.0};
    if (ey > 1.0 && ey < vc)
        pts.push_back(ey);
    pts.push_back(vc);
    return std::exp(sigma * y) * integrate_finite(p, 1.0, vc, cfg).value +
           std::exp((sigma - 1.0) * y) * integrate_breakpoints(m, pts, cfg).value;
}

double U_tail_cutoff(double bound)
{
    const double k = 96.0 * std::pow(M_PI, 8);
    double y = 1.5;
    while (k * std::exp(5.0 * y - 2.0 * std::exp(y)) > bound)
        y += 0.01;
    return y;
}

QuadResult xi_mod_sq_via_U(double sigma, double t, const EvalConfig& cfg)
{
    Decay d;
    d.cutoff = U_tail_cutoff(cfg.cutoff_tail_fraction * cfg.quad_abs_tol);
    auto r = integrate_oscillatory_cos([&](double y) { return U_sigma(sigma, y, UForm::two_term, cfg); },
                                       t, 0.0, d, cfg);
    r.value *= 0.5;
    r.err_est *= 0.5;
    return r;
}

QuadResult U_scaled_moment(double sigma, int k, const EvalConfig& cfg)
{
    if (k < 0)
        throw std::domain_error("U_scaled_moment: k must be >= 0");
    Decay d;
    d.cutoff = U_tail_cutoff(cfg.cutoff_tail_fraction * cfg.quad_abs_tol);
    const double lg = std::lgamma(2.0 * k + 1.0) + std::log(2.0);
    auto f = [&](double y) {
        const double w = k == 0 ? std::exp(-lg) : std::exp(2.0 * k * std::log(y) - lg);
        return y == 0.0 && k > 0 ? 0.0 : w * U_sigma(sigma, y, UForm::two_term, cfg);
    };
    return integrate_breakpoints(f, {0.0, 1.0, 2.0, *d.cutoff}, cfg);
}

double density_Pbar(double sigma, double y, const EvalConfig& cfg)
{
    const double x0 = xi(ComplexPoint(sigma, 0.0), cfg).real();
    return U_sigma(sigma, std::abs(y), UForm::two_term, cfg) / (4.0 * x0 * x0);
}

} // namespace xi_ineq
