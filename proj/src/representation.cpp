#include "xi_ineq/representation.hpp"

#include <cmath>
#include <stdexcept>

#include "xi_ineq/special_series.hpp"

namespace xi_ineq {

std::string to_string(STMethod m)
{
    switch (m) {
    case STMethod::A_direct:
        return "A_direct";
    case STMethod::B_series:
        return "B_series";
    case STMethod::C_inversion:
        return "C_inversion";
    }
    return "?";
}

STMethod parse_method(const std::string& s)
{
    if (s == "A" || s == "A_direct")
        return STMethod::A_direct;
    if (s == "B" || s == "B_series")
        return STMethod::B_series;
    if (s == "C" || s == "C_inversion")
        return STMethod::C_inversion;
    throw std::invalid_argument("unknown method: " + s);
}

namespace {

// exp(-z) underflows past this, with room for polynomial prefactors
constexpr double kExpCut = 760.0;
// e^{-pi y^2} underflows past y = 15
constexpr double kThetaCut = 15.0;

double prefactor(double sigma) { return std::pow(2.0, sigma + 1.5) / M_PI; }

} // namespace

double F_sigma(double sigma, double lambda, int deriv, FForm form, const EvalConfig& cfg,
               const FWindow& win)
{
    if (!(lambda > 0.0))
        throw std::domain_error("F_sigma: lambda must be positive");
    if (deriv < 0 || deriv > 3)
        throw std::domain_error("F_sigma: deriv must be in 0..3");
    const double tau = sigma - 0.5;
    if (form == FForm::eta) {
        if (deriv != 0)
            throw unsupported_error("F_sigma: derivatives need the direct form");
        Decay d;
        d.cutoff = std::max(0.5 * kExpCut / lambda, 1.01);
        auto r = integrate_eta_weighted([lambda](double y) { return lambda * std::exp(-2.0 * lambda * y); },
                                        tau, d, cfg);
        return std::pow(2.0, -(sigma + 0.5)) * r.value;
    }
    auto p = [lambda, deriv](double c) {
        switch (deriv) {
        case 0:
            return lambda;
        case 1:
            return 1.0 - lambda * c;
        case 2:
            return -c * (2.0 - lambda * c);
        default:
            return c * c * (3.0 - lambda * c);
        }
    };
    auto f = [&](double u) {
        const double c = 2.0 * std::cosh(u);
        const double e = std::exp(-lambda * c);
        return e == 0.0 ? 0.0 : p(c) * e * std::cosh(tau * u);
    };
    const double u_lo = win.y_lo > 0.0 ? std::acosh(1.0 + 0.5 * win.y_lo) : 0.0;
    double u_hi;
    if (win.y_hi)
        u_hi = std::acosh(1.0 + 0.5 * *win.y_hi);
    else
        u_hi = std::acosh(std::max(0.5 * kExpCut / lambda, 1.5));
    if (!(u_hi > u_lo))
        return 0.0;
    return std::pow(2.0, -tau) * integrate_finite(f, u_lo, u_hi, cfg).value;
}

double calG(double sigma, double lambda, int deriv, const EvalConfig& cfg, const GOptions& opt)
{
    if (!(lambda > 0.0))
        throw std::domain_error("calG: lambda must be positive");
    if (opt.cap) {
        double s = 0.0;
        for (int m = 1; m <= *opt.cap; ++m)
            for (int n = 1; n <= *opt.cap; ++n) {
                const double k = double(m) * n;
                s += std::pow(double(m), -sigma - 0.5) * std::pow(double(n), sigma - 1.5) *
                     std::pow(M_PI * k, deriv) *
                     F_sigma(sigma, M_PI * k * lambda, deriv, FForm::direct, cfg, opt.window);
            }
        return s;
    }
    // k = mn grouping: sum_{m|k} m^{-sigma-1/2}(k/m)^{sigma-3/2} = k^{-sigma-1/2} sigma_{2sigma-1}(k)
    double s = 0.0;
    for (long k = 1;; ++k) {
        if (k > cfg.series_max_terms)
            throw convergence_error("calG: series_max_terms exceeded", s);
        const double lk = M_PI * double(k) * lambda;
        double term = 0.0;
        if (lk < 0.5 * kExpCut)
            term = std::pow(double(k), -sigma - 0.5) * divisor_sigma(k, 2.0 * sigma - 1.0) *
                   std::pow(M_PI * double(k), deriv) *
                   F_sigma(sigma, lk, deriv, FForm::direct, cfg, opt.window);
        s += term;
        if (k >= 6 && std::abs(term) <= cfg.series_tol * std::abs(s))
            return s;
    }
}

double calH(double sigma, double x, int deriv, const EvalConfig& cfg)
{
    if (deriv < 0 || deriv > 3)
        throw std::domain_error("calH: deriv must be in 0..3");
    const double l = std::exp(x);
    double G[4] = {};
    for (int d = 0; d <= deriv; ++d)
        G[d] = calG(sigma, l, d, cfg) * std::pow(l, d);
    // derivatives of g(x) = G(e^x)
    const double g0 = G[0], g1 = G[1], g2 = G[1] + G[2], g3 = G[1] + 3.0 * G[2] + G[3];
    double v = 0.0;
    switch (deriv) {
    case 0:
        v = g0;
        break;
    case 1:
        v = g1 - 0.5 * g0;
        break;
    case 2:
        v = g2 - g1 + 0.25 * g0;
        break;
    default:
        v = g3 - 1.5 * g2 + 0.75 * g1 - 0.125 * g0;
    }
    return v * std::exp(-0.5 * x);
}

HDerivs calH_derivs_at_0(double sigma, const EvalConfig& cfg, const GOptions& opt)
{
    double G[4];
    for (int d = 0; d < 4; ++d)
        G[d] = calG(sigma, 1.0, d, cfg, opt);
    HDerivs h;
    h.h0 = G[0];
    h.h1 = G[1] - 0.5 * G[0];
    h.h2 = G[2] + 0.25 * G[0];
    h.h3 = G[3] + 1.5 * G[2] + 0.25 * G[1] - 0.125 * G[0];
    return h;
}

double W_sigma(double sigma, double x, WForm form, const EvalConfig& cfg)
{
    if (!(x >= 0.0))
        throw std::domain_error("W_sigma: x must be nonnegative");
    if (form == WForm::closed)
        return prefactor(sigma) * calG(sigma, std::exp(x), 0, cfg) * std::exp((sigma - 0.5) * x);
    // R(e^y) and R(e^{x-y}) vanish to binary64 once |exponent| > 3
    const double lo = x - 3.0, hi = 3.0;
    if (!(lo < hi))
        return 0.0;
    auto f = [&](double y) {
        const double a = theta_R(std::exp(x - y), cfg);
        if (a == 0.0)
            return 0.0;
        return theta_R(std::exp(y), cfg) * a * std::exp(x + (2.0 * sigma - 1.0) * y);
    };
    std::vector<double> pts{lo};
    if (0.0 > lo && 0.0 < hi)
        pts.push_back(0.0);
    if (x > pts.back() && x < hi)
        pts.push_back(x);
    pts.push_back(hi);
    return integrate_breakpoints(f, pts, cfg).value;
}

namespace {

struct Accum {
    double value = 0.0, err = 0.0;
    void add(double coef, const QuadResult& r)
    {
        value += coef * r.value;
        err += std::abs(coef) * r.err_est;
    }
};

// theta routines used by the A/C formulas: converged or the n <= 5 recipe
struct Theta {
    std::optional<int> n_max;
    EvalConfig cfg;
    double R(double y) const { return n_max ? theta_R_truncated(y, *n_max) : theta_R(y, cfg); }
    double Rp(double y) const
    {
        return n_max ? theta_R_prime_truncated(y, *n_max) : theta_R_prime(y, cfg);
    }
    double A(double y) const { return n_max ? y * R(y) + y - 1.0 : stable_combo_A(y, cfg); }
    double B(double y) const { return n_max ? y * y * Rp(y) + 1.0 : stable_combo_B(y, cfg); }
};

struct Pair {
    Accum S, T;
};

// Pieces of the S expression shared by the published and corrected variants.
// upper: integration end on [1, upper]; tail integral on (0,1) used by A only.
Pair constants_AC(double s, const Theta& th, double upper, bool route_C, bool published,
                  const EvalConfig& cfg)
{
    const double R1 = th.R(1.0), Rp1 = th.Rp(1.0);
    auto I = [&](auto&& f) { return integrate_breakpoints(f, {1.0, 2.0, 4.0, upper}, cfg); };
    const double k = s * (1 - s) * (2 * s - 1);
    Pair p;
    Accum& S = p.S;
    if (published) {
        S.value = -(s - 2 * (1 - s) * (1 - s)) * R1 - s * Rp1 + (1 - s) * (1 + 2 * s) * R1 * R1 / 2 -
                  s * R1 * Rp1;
        S.add(2 * k, I([&](double y) { return std::pow(y, -2 * s) * th.R(y); }));
        S.add(-2 * k, I([&](double y) { return std::pow(y, 1 - 2 * s) * th.R(y); }));
        S.add(2 * (1 - s) * (1 - s) * (2 * s - 1),
              I([&](double y) { return std::pow(y, 2 * (s - 1)) * th.R(y); }));
        S.add(-k, I([&](double y) { return std::pow(y, 1 - 2 * s) * th.R(y) * th.R(y); }));
        S.add((2 * s + 1) / 2, I([&](double y) { return std::pow(y, 2 * s) * th.R(y) * th.R(y); }));
        S.add(1 - s, I([&](double y) {
                  double d = th.Rp(y);
                  return std::pow(y, 3 - 2 * s) * d * d;
              }));
        S.add(-(1 - s), I([&](double y) {
                  double d = y * th.Rp(y);
                  return std::pow(y, 1 - 2 * s) * d * d;
              }));
        S.add(s, I([&](double y) {
                  double d = y * th.Rp(y);
                  return std::pow(y, 2 * s - 1) * d * d;
              }));
    } else {
        S.value = -s * R1 - Rp1 + (1 - 2 * s) * R1 * R1 / 2 + (1 - 2 * s) * R1 * Rp1;
        S.add(2 * k, I([&](double y) { return std::pow(y, -2 * s) * th.R(y); }));
        S.add(-2 * k, I([&](double y) { return std::pow(y, 1 - 2 * s) * th.R(y); }));
        S.add(-k, I([&](double y) {
                  double r = th.R(y);
                  return (std::pow(y, 1 - 2 * s) + std::pow(y, 2 * s - 1)) * r * r;
              }));
    }
    // the int_0^inf y^{2(s-1)} R {c A + B} pieces, c = 1-s for S and s for T
    auto tail_1 = [&](double c) {
        return I([&, c](double y) { return std::pow(y, 2 * (s - 1)) * th.R(y) * (c * th.A(y) + th.B(y)); });
    };
    S.add(-s * (1 - s), tail_1(1 - s));
    p.T.add(-1.0, tail_1(s));
    if (route_C) {
        S.add(s * (1 - s), I([&](double y) {
                  return std::pow(y, -2 * s) * th.R(1.0 / y) * (s * th.R(y) + y * th.Rp(y));
              }));
        p.T.add(1.0, I([&](double y) {
                    return std::pow(y, -2 * s) * th.R(1.0 / y) * ((1 - s) * th.R(y) + y * th.Rp(y));
                }));
    } else {
        auto tail_0 = [&](double c) {
            return integrate_breakpoints(
                [&, c](double y) {
                    const double a = th.A(y), b = th.B(y);
                    if (a == 0.0 && b == 0.0)
                        return 0.0;
                    return std::pow(y, 2 * (s - 1)) * th.R(y) * (c * a + b);
                },
                {0.0, 0.25, 0.5, 1.0}, cfg);
        };
        S.add(-s * (1 - s), tail_0(1 - s));
        p.T.add(-1.0, tail_0(s));
    }
    return p;
}

ConstantsReport method_B(double sigma, const EvalConfig& cfg, const GOptions& opt)
{
    double G[4];
    for (int d = 0; d < 4; ++d)
        G[d] = calG(sigma, 1.0, d, cfg, opt);
    const double K = prefactor(sigma);
    const double c = sigma * sigma + (1 - sigma) * (1 - sigma) - 0.25;
    ConstantsReport r;
    r.sigma = sigma;
    r.method = STMethod::B_series;
    r.T_value = K * (G[1] - 0.5 * G[0]);
    r.S_value = K * (-G[3] - 1.5 * G[2] + c * (G[1] - 0.5 * G[0]));
    // each F integral carries relative error <= quad_rel_tol; sum magnitudes
    r.err_est = K * cfg.quad_rel_tol * (std::abs(G[3]) + 1.5 * std::abs(G[2]) + (std::abs(c) + 1) * (std::abs(G[1]) + std::abs(G[0])));
    return r;
}

} // namespace

ConstantsReport S_T_constants(double sigma, STMethod method, const EvalConfig& cfg,
                              RecipeTruncation trunc)
{
    if (!std::isfinite(sigma))
        throw std::domain_error("S_T_constants: sigma must be finite");
    ConstantsReport r;
    if (trunc == RecipeTruncation::B) {
        GOptions opt;
        opt.cap = 10;
        opt.window = FWindow{0.001, 20.0};
        r = method_B(sigma, cfg, opt);
        r.truncation = {"F integrals on [0.001, 20] in y, m,n <= 10", 0.001, 20.0, 10, false};
    } else if (trunc == RecipeTruncation::C) {
        Theta th{5, cfg};
        auto p = constants_AC(sigma, th, 10.0, true, true, cfg);
        r.method = STMethod::C_inversion;
        r.S_value = p.S.value;
        r.T_value = p.T.value;
        r.err_est = p.S.err + p.T.err;
        r.truncation = {"R summed to n <= 5, integrals on [1, 10], published S expression", 1.0, 10.0, 5,
                        true};
    } else if (method == STMethod::B_series) {
        r = method_B(sigma, cfg, {});
        r.truncation = {"converged", std::nullopt, std::nullopt, std::nullopt, false};
    } else {
        Theta th{std::nullopt, cfg};
        const bool C = method == STMethod::C_inversion;
        auto p = constants_AC(sigma, th, kThetaCut, C, false, cfg);
        r.method = method;
        r.S_value = p.S.value;
        r.T_value = p.T.value;
        r.err_est = p.S.err + p.T.err;
        r.truncation = {"converged", std::nullopt, std::nullopt, std::nullopt, false};
    }
    r.sigma = sigma;
    r.domain_warning = sigma_flagged(sigma);
    return r;
}

ConstantsReport S_T_constants_C_recipe_corrected(double sigma, const EvalConfig& cfg)
{
    Theta th{5, cfg};
    auto p = constants_AC(sigma, th, 10.0, true, false, cfg);
    ConstantsReport r;
    r.sigma = sigma;
    r.method = STMethod::C_inversion;
    r.S_value = p.S.value;
    r.T_value = p.T.value;
    r.err_est = p.S.err + p.T.err;
    r.truncation = {"R summed to n <= 5, integrals on [1, 10], corrected S expression", 1.0, 10.0, 5,
                    false};
    r.domain_warning = sigma_flagged(sigma);
    return r;
}

namespace {

// J^{(d)}(y) y^3 (2 pi)^3 e^{-2 pi y} stays below 1e4 e^{-0.9*2 pi y}
Decay j_decay() { return Decay{0.9 * 2.0 * M_PI, 1e4, std::nullopt}; }

EvalConfig inner_cfg(const EvalConfig& cfg) { return cfg.tightened(cfg.quad_rel_tol * 1e-2, 1e-22); }

// int_0^inf w(u) e^u J(e^{2u} y) du with J(e^{2u}y) ~ e^{-2 pi e^{2u} y}
template <class W>
QuadResult inner_u(const JTauSeries& J, double y, double t, W w, const EvalConfig& cfg)
{
    Decay d;
    d.cutoff = std::max(0.5 * std::log(kExpCut / (2.0 * M_PI * y)), 0.05);
    auto f = [&](double u) {
        const double v = J(std::exp(2.0 * u) * y, 0, cfg);
        return v == 0.0 ? 0.0 : w(u) * std::exp(u) * v;
    };
    return integrate_oscillatory_cos(f, t, 0.0, d, cfg);
}

} // namespace

ConstantsReport S_T_via_J(double tau, const EvalConfig& cfg)
{
    const JTauSeries J(tau);
    const double t2 = tau * tau;
    auto S = integrate_eta_weighted(
        [&](double y) {
            return -2 * y * y * y * J(y, 3, cfg) - 9 * y * y * J(y, 2, cfg) +
                   y * (4 * t2 - 5.5) * J(y, 1, cfg) + (2 * t2 + 0.25) * J(y, 0, cfg);
        },
        tau, j_decay(), cfg);
    auto T = integrate_eta_weighted([&](double y) { return 2 * y * J(y, 1, cfg) + J(y, 0, cfg); }, tau,
                                    j_decay(), cfg);
    ConstantsReport r;
    r.sigma = tau + 0.5;
    r.method = STMethod::A_direct;
    r.S_value = S.value;
    r.T_value = T.value;
    r.err_est = S.err_est + T.err_est;
    r.truncation = {"J/eta closed form", 1.0, S.truncation_point, std::nullopt, false};
    r.domain_warning = tau_flagged(tau);
    return r;
}

QuadResult W_cosine_integral(double sigma, double t, const EvalConfig& cfg)
{
    // H_sigma(x) ~ e^{-2 pi e^x} is zero in binary64 past this point
    Decay d;
    d.cutoff = std::log(kExpCut / (2.0 * M_PI));
    const EvalConfig ic = inner_cfg(cfg);
    auto r = integrate_oscillatory_cos([&](double x) { return calH(sigma, x, 0, ic); }, t, 0.0, d, cfg);
    const double K = prefactor(sigma);
    r.value *= K;
    r.err_est *= K;
    return r;
}

QuadResult J_cosine_integral(double tau, double t, const EvalConfig& cfg)
{
    const JTauSeries J(tau);
    const EvalConfig ic = inner_cfg(cfg);
    auto r = integrate_eta_weighted(
        [&](double y) { return inner_u(J, y, 2.0 * t, [](double) { return 1.0; }, ic).value; }, tau,
        j_decay(), cfg);
    r.value *= 4.0;
    r.err_est *= 4.0;
    return r;
}

ModulusRepresentation::ModulusRepresentation(double sigma, const EvalConfig& cfg, STMethod method)
    : sigma_(sigma), cfg_(cfg), st_(S_T_constants(sigma, method, cfg))
{
}

namespace {
double quartic(double s, double t) { return (t * t + (1 - s) * (1 - s)) * (t * t + s * s); }
} // namespace

std::pair<double, double> ModulusRepresentation::eval(double t) const
{
    const auto I = W_cosine_integral(sigma_, t, cfg_);
    const double q = quartic(sigma_, t);
    return {0.5 * (st_.S_value + st_.T_value * t * t + q * I.value),
            0.5 * (st_.err_est * (1 + t * t) + q * I.err_est)};
}

double ModulusRepresentation::operator()(double t) const { return eval(t).first; }

double ModulusRepresentation::err_est(double t) const { return eval(t).second; }

double modulus_rhs(double sigma, double t, const EvalConfig& cfg)
{
    return ModulusRepresentation(sigma, cfg)(t);
}

JRepresentation::JRepresentation(double tau, const EvalConfig& cfg)
    : tau_(tau), cfg_(cfg), st_(S_T_via_J(tau, cfg))
{
}

std::pair<double, double> JRepresentation::eval(double t) const
{
    const auto I = J_cosine_integral(tau_, t, cfg_);
    const double q = quartic(tau_ + 0.5, t);
    return {st_.S_value + st_.T_value * t * t + q * I.value,
            st_.err_est * (1 + t * t) + q * I.err_est};
}

double JRepresentation::operator()(double t) const { return eval(t).first; }

double JRepresentation::err_est(double t) const { return eval(t).second; }

double modulus_rhs_via_J(double tau, double t, const EvalConfig& cfg)
{
    return JRepresentation(tau, cfg)(t);
}

double a_coeff(double tau, int k, const EvalConfig& cfg)
{
    if (k < 0)
        throw std::domain_error("a_coeff: k must be nonnegative");
    const JTauSeries J(tau);
    const EvalConfig ic = inner_cfg(cfg);
    auto r = integrate_eta_weighted(
        [&](double y) {
            return inner_u(J, y, 0.0, [k](double u) { return std::pow(u, 2 * k); }, ic).value;
        },
        tau, j_decay(), cfg);
    return std::ldexp(r.value, 2 * k + 1);
}

namespace {

double c_from(double tau, int k, const std::vector<double>& a, double j0, double j1)
{
    const double t2 = tau * tau;
    const double q = (t2 - 0.25) * (t2 - 0.25);
    if (k == 0)
        return j0 + q * a[0];
    if (k == 1)
        return j1 - 0.5 * q * a[1] + 2 * (t2 + 0.25) * a[0];
    const double kk = k;
    const double br = q * a[k] - 4 * kk * (2 * kk - 1) * (t2 + 0.25) * a[k - 1] +
                      2 * kk * (2 * kk - 1) * (2 * kk - 2) * (2 * kk - 3) * a[k - 2];
    return (k % 2 ? -1.0 : 1.0) * br / std::tgamma(2.0 * kk + 1.0);
}

double j0_integral(double tau, const EvalConfig& cfg)
{
    const JTauSeries J(tau);
    const double t2 = tau * tau;
    return integrate_eta_weighted(
               [&](double y) {
                   return -y * y * y * J(y, 3, cfg) - 4.5 * y * y * J(y, 2, cfg) -
                          (11 - 8 * t2) / 4 * y * J(y, 1, cfg) + (1 + 8 * t2) / 8 * J(y, 0, cfg);
               },
               tau, j_decay(), cfg)
        .value;
}

double j1_integral(double tau, const EvalConfig& cfg)
{
    const JTauSeries J(tau);
    return integrate_eta_weighted([&](double y) { return y * J(y, 1, cfg) + 0.5 * J(y, 0, cfg); }, tau,
                                  j_decay(), cfg)
        .value;
}

} // namespace

double c_coeff(double tau, int k, const EvalConfig& cfg)
{
    if (k < 0)
        throw std::domain_error("c_coeff: k must be nonnegative");
    std::vector<double> a(k + 1, 0.0);
    for (int j = std::max(0, k - 2); j <= k; ++j)
        a[j] = a_coeff(tau, j, cfg);
    const double j0 = k == 0 ? j0_integral(tau, cfg) : 0.0;
    const double j1 = k == 1 ? j1_integral(tau, cfg) : 0.0;
    return c_from(tau, k, a, j0, j1);
}

PowerSeriesCoeffs power_series_coeffs(double sigma, int K, const EvalConfig& cfg)
{
    if (K < 0)
        throw std::domain_error("power_series_coeffs: K must be nonnegative");
    const double tau = sigma - 0.5;
    std::vector<double> a(K + 1);
    for (int j = 0; j <= K; ++j)
        a[j] = a_coeff(tau, j, cfg);
    const double j0 = j0_integral(tau, cfg);
    const double j1 = K >= 1 ? j1_integral(tau, cfg) : 0.0;
    PowerSeriesCoeffs p;
    p.sigma = sigma;
    p.K = K;
    for (int k = 0; k <= K; ++k)
        p.coeffs.push_back(c_from(tau, k, a, j0, j1));
    return p;
}

double PowerSeriesCoeffs::operator()(double t) const
{
    double s = 0.0, tp = 1.0;
    for (double c : coeffs) {
        s += c * tp;
        tp *= t * t;
    }
    return s;
}

double coeff_magnitude_bound(int k)
{
    const double kk = k;
    return 48.0 * std::pow(M_PI, 8) * (std::exp(15.0) * std::pow(3.0, 2 * kk + 1) + std::tgamma(kk + 1)) /
           std::tgamma(2 * kk + 1);
}

} // namespace xi_ineq
