#include "xi_ineq/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "xi_ineq/parallel.hpp"
#include "xi_ineq/special_series.hpp"
#include "xi_ineq/xi_oracle.hpp"

namespace xi_ineq {

namespace {

double quartic(double s, double t) { return (t * t + (1 - s) * (1 - s)) * (t * t + s * s); }

// W_sigma(x) e^{-sigma x} = 2^{sigma+3/2} pi^{-1} H_sigma(x) is zero in binary64 past this
const double kWCut = std::log(760.0 / (2.0 * M_PI));

std::vector<double> grid_of(double t_max, double step, double t0)
{
    if (!(step > 0.0) || !(t_max >= t0))
        throw std::invalid_argument("scan grid: need step > 0 and a nonempty range");
    const long n = static_cast<long>(std::floor((t_max - t0) / step + 1e-9));
    std::vector<double> g(n + 1);
    for (long i = 0; i <= n; ++i)
        g[i] = t0 + step * double(i);
    return g;
}

} // namespace

ScanReport scan_inequality(double sigma, double t_max, double step, ScanRoute route,
                           const EvalConfig& cfg, unsigned threads)
{
    ScanReport r;
    r.sigma = sigma;
    r.grid = grid_of(t_max, step, 0.0);
    r.values.resize(r.grid.size());
    r.errs.resize(r.grid.size());
    std::function<std::pair<double, double>(double)> f;
    std::optional<ModulusRepresentation> mr;
    std::optional<JRepresentation> jr;
    if (route == ScanRoute::representation) {
        mr.emplace(sigma, cfg);
        f = [&](double t) {
            auto [v, e] = mr->eval(t);
            return std::make_pair(2.0 * v, 2.0 * e);
        };
    } else if (route == ScanRoute::J_eta) {
        jr.emplace(sigma - 0.5, cfg);
        f = [&](double t) { return jr->eval(t); };
    } else {
        f = [&](double t) {
            const auto q = xi_mod_sq_via_U(sigma, t, cfg);
            return std::make_pair(2.0 * q.value, 2.0 * q.err_est);
        };
    }
    parallel_for(r.grid.size(), threads, [&](std::size_t i) {
        auto [v, e] = f(r.grid[i]);
        r.values[i] = v;
        r.errs[i] = e;
    });
    r.min_value = r.values[0];
    r.min_t = r.grid[0];
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        if (r.values[i] < r.min_value) {
            r.min_value = r.values[i];
            r.min_t = r.grid[i];
        }
        r.err_est = std::max(r.err_est, r.errs[i]);
        if (r.values[i] + r.errs[i] < 0.0)
            r.violations.push_back(r.grid[i]);
        else if (std::abs(r.values[i]) <= r.errs[i])
            r.indeterminate.push_back(r.grid[i]);
    }
    return r;
}

PolyApproxV::PolyApproxV(double sigma, double N1, long N2, const EvalConfig& cfg,
                         const ConstantsReport* st)
    : sigma_(sigma), st_(st ? *st : S_T_constants(sigma, STMethod::A_direct, cfg))
{
    if (!(N1 > 0.0) || N2 < 0)
        throw std::invalid_argument("PolyApproxV: need N1 > 0 and N2 >= 0");
    // one composite Gauss-Legendre grid for all moments (H_sigma is analytic)
    using GL = boost::math::quadrature::gauss<double, 20>;
    const double upper = std::min(N1, kWCut);
    const int panels = 128;
    const double hw = upper / panels;
    std::vector<double> xs, ws;
    for (int p = 0; p < panels; ++p) {
        const double c = (p + 0.5) * hw;
        const auto& ax = GL::abscissa();
        const auto& aw = GL::weights();
        for (std::size_t i = 0; i < ax.size(); ++i) {
            for (int sgn : {-1, 1}) {
                if (ax[i] == 0.0 && sgn > 0)
                    continue;
                xs.push_back(c + sgn * 0.5 * hw * ax[i]);
                ws.push_back(0.5 * hw * aw[i]);
            }
        }
    }
    std::vector<double> f(xs.size());
    const double K = std::pow(2.0, sigma + 1.5) / M_PI;
    for (std::size_t i = 0; i < xs.size(); ++i)
        f[i] = K * calH(sigma, xs[i], 0, cfg);
    nu_.resize(N2 + 1);
    for (long n = 0; n <= N2; ++n) {
        CompensatedSum s;
        const double lg = std::lgamma(2.0 * n + 1.0);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double xp = n == 0 ? 1.0 : std::exp(2.0 * n * std::log(xs[i]) - lg);
            s.add(ws[i] * f[i] * xp);
        }
        nu_[n] = s.value();
    }
}

double PolyApproxV::operator()(double t) const
{
    CompensatedSum s;
    for (std::size_t n = 0; n < nu_.size(); ++n) {
        if (nu_[n] == 0.0)
            break;
        const double tp = n == 0 ? 1.0 : std::pow(t, 2.0 * double(n));
        s.add((n % 2 ? -1.0 : 1.0) * tp * nu_[n]);
    }
    return st_.S_value + st_.T_value * t * t + quartic(sigma_, t) * s.value();
}

double poly_approx_V(double sigma, double N1, long N2, double t, const EvalConfig& cfg)
{
    return PolyApproxV(sigma, N1, N2, cfg)(t);
}

TruncationLevels truncation_levels(double epsilon, double sigma, int T, const EvalConfig& cfg)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("truncation_levels: epsilon must lie in (0, 1)");
    if (T < 1)
        throw std::domain_error("truncation_levels: T must be a positive integer");
    TruncationLevels L;
    L.epsilon = epsilon;
    L.sigma = sigma;
    L.T = T;
    L.C = sup_constant_C(cfg).value;
    const long double q = (long double)T * T + 1.0L;
    const long double X = 8.0L * L.C * L.C * q * q / ((long double)sigma * epsilon);
    L.N1 = static_cast<long>(std::ceil(std::log(X) / (long double)sigma));
    const long double N2 = std::ceil(X * X);
    if (N2 > 1.8e19L)
        throw std::overflow_error("truncation_levels: N2 exceeds 64 bits");
    L.N2 = static_cast<std::uint64_t>(N2);
    L.N1 = std::max(L.N1, 1L);
    L.N2 = std::max<std::uint64_t>(L.N2, 1);
    const double qd = static_cast<double>(q);
    if (L.N1 < kWCut) {
        const double K = std::pow(2.0, sigma + 1.5) / M_PI;
        L.tail_integral = qd * qd * K *
                      integrate_finite([&](double x) { return calH(sigma, x, 0, cfg); }, double(L.N1), kWCut, cfg)
                          .value;
    }
    L.tail_bound = 2.0 * L.C * L.C * qd * qd * std::exp(-sigma * double(L.N1)) / sigma;
    L.tail_passes = L.tail_integral < epsilon / 4 && L.tail_bound < epsilon / 4;
    return L;
}

MarginCheck check_truncated_margin(double sigma, int T, double epsilon, const EvalConfig& cfg, long n2_cap)
{
    MarginCheck r;
    r.levels = truncation_levels(epsilon, sigma, T, cfg);
    r.N2_used = static_cast<long>(std::min<std::uint64_t>(r.levels.N2, std::uint64_t(n2_cap)));
    r.substituted = r.levels.N2 > std::uint64_t(n2_cap);
    const PolyApproxV V(sigma, double(r.levels.N1), r.N2_used, cfg);
    const auto grid = grid_of(double(T), 0.01, 0.0);
    r.min_V = V(0.0);
    for (double t : grid) {
        const double v = V(t);
        if (v < r.min_V) {
            r.min_V = v;
            r.min_t = t;
        }
    }
    r.passes_margin = r.min_V >= epsilon / 2;
    return r;
}

std::optional<MarginCheck> margin_epsilon_ladder(double sigma, int T, const std::vector<double>& ladder,
                                                const EvalConfig& cfg, long n2_cap)
{
    for (double e : ladder) {
        auto r = check_truncated_margin(sigma, T, e, cfg, n2_cap);
        if (r.passes_margin)
            return r;
    }
    return std::nullopt;
}

namespace {

std::uint64_t splitmix(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index)
    : s_(splitmix(seed ^ splitmix(index ^ 0x5851F42D4C957F2Dull)))
{
}

std::uint64_t CounterRng::next()
{
    s_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double CounterRng::uniform() { return (double(next() >> 11) + 0.5) * 0x1.0p-53; }

XSampler::XSampler(double sigma, const EvalConfig& cfg) : sigma_(sigma), x_cut_(kWCut)
{
    if (!(sigma > 0.5 && sigma < 1.0))
        throw std::domain_error("XSampler: sigma must lie in (1/2, 1)");
    const int n = kNodes;
    h_ = x_cut_ / (n - 1);
    w_.resize(n);
    for (int i = 0; i < n; ++i)
        w_[i] = W_sigma(sigma, h_ * i, WForm::closed, cfg);
    // Fritsch-Carlson slopes on the uniform grid
    std::vector<double> del(n - 1);
    for (int i = 0; i + 1 < n; ++i)
        del[i] = (w_[i + 1] - w_[i]) / h_;
    d_.assign(n, 0.0);
    for (int i = 1; i + 1 < n; ++i)
        if (del[i - 1] * del[i] > 0.0)
            d_[i] = 2.0 / (1.0 / del[i - 1] + 1.0 / del[i]);
    auto end_slope = [](double d0, double d1) {
        double d = (3.0 * d0 - d1) / 2.0;
        if (d * d0 <= 0.0)
            return 0.0;
        if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0))
            return 3.0 * d0;
        return d;
    };
    d_[0] = end_slope(del[0], del[1]);
    d_[n - 1] = end_slope(del[n - 2], del[n - 3]);

    // certify at every midpoint; midpoint values double as Simpson nodes for the CDF
    cert_ = 0.0;
    double wmax = *std::max_element(w_.begin(), w_.end());
    F_.assign(n, 0.0);
    rho_.resize(n);
    CompensatedSum cum;
    for (int i = 0; i + 1 < n; ++i) {
        const double xm = h_ * (i + 0.5);
        const double wm = W_sigma(sigma, xm, WForm::closed, cfg);
        cert_ = std::max(cert_, std::abs(W_table(xm) - wm));
        wmax = std::max(wmax, wm);
        const double fa = w_[i] * std::exp(-sigma * h_ * i), fb = w_[i + 1] * std::exp(-sigma * h_ * (i + 1));
        cum.add(h_ / 6.0 * (fa + 4.0 * wm * std::exp(-sigma * xm) + fb));
        F_[i + 1] = cum.value();
    }
    M_ = wmax + cert_;
    const double C = sup_constant_C(cfg).value;
    if (!(M_ < 2.0 * C * C))
        throw std::runtime_error("XSampler: table maximum violates the 2C^2 bound");
    norm_ = W_cosine_integral(sigma, 0.0, cfg).value;
    for (int i = 0; i < n; ++i) {
        F_[i] /= F_[n - 1] > 0.0 ? F_[n - 1] : 1.0;
        rho_[i] = w_[i] * std::exp(-sigma * h_ * i) / norm_;
    }
    const double K = std::pow(2.0, sigma + 1.5) / M_PI;
    mean_ = K * integrate_finite([&](double x) { return x * calH(sigma, x, 0, cfg); }, 0.0, x_cut_, cfg).value /
            norm_;
}

double XSampler::W_table(double x) const
{
    if (x < 0.0 || x >= x_cut_)
        return 0.0;
    const int i = std::min(static_cast<int>(x / h_), kNodes - 2);
    const double s = (x - h_ * i) / h_;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * w_[i] + (s3 - 2 * s2 + s) * h_ * d_[i] + (-2 * s3 + 3 * s2) * w_[i + 1] +
           (s3 - s2) * h_ * d_[i + 1];
}

double XSampler::cdf(double x) const
{
    if (x <= 0.0)
        return 0.0;
    if (x >= x_cut_)
        return 1.0;
    // Hermite cubic with the exact density as slope
    const int i = std::min(static_cast<int>(x / h_), kNodes - 2);
    const double s = (x - h_ * i) / h_;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * F_[i] + (s3 - 2 * s2 + s) * h_ * rho_[i] + (-2 * s3 + 3 * s2) * F_[i + 1] +
           (s3 - s2) * h_ * rho_[i + 1];
}

double XSampler::mean() const { return mean_; }

double XSampler::sample(std::uint64_t seed, std::uint64_t index, std::uint64_t* proposals) const
{
    CounterRng rng(seed, index);
    for (std::uint64_t k = 1;; ++k) {
        const double x = -std::log(rng.uniform()) / sigma_;
        const double u = rng.uniform();
        if (x < x_cut_ && u * M_ < W_table(x)) {
            if (proposals)
                *proposals += k;
            return x;
        }
    }
}

MCReport mc_check(const XSampler& sampler, double t, long n_samples, std::uint64_t seed,
                  const EvalConfig& cfg, unsigned threads, const ConstantsReport* st)
{
    if (n_samples < 1000)
        throw std::invalid_argument("mc_check: need at least 1000 samples");
    const double sigma = sampler.sigma();
    const long chunk = 65536;
    const long nchunks = (n_samples + chunk - 1) / chunk;
    std::vector<double> s1(nchunks), s2(nchunks);
    std::vector<std::uint64_t> props(nchunks);
    parallel_for(nchunks, threads, [&](std::size_t c) {
        CompensatedSum a, b;
        std::uint64_t p = 0;
        const long lo = long(c) * chunk, hi = std::min(n_samples, lo + chunk);
        for (long i = lo; i < hi; ++i) {
            const double v = std::cos(t * sampler.sample(seed, std::uint64_t(i), &p));
            a.add(v);
            b.add(v * v);
        }
        s1[c] = a.value();
        s2[c] = b.value();
        props[c] = p;
    });
    CompensatedSum a, b;
    std::uint64_t p = 0;
    for (long c = 0; c < nchunks; ++c) {
        a.add(s1[c]);
        b.add(s2[c]);
        p += props[c];
    }
    MCReport r;
    r.sigma = sigma;
    r.t = t;
    r.n_samples = n_samples;
    r.seed = seed;
    const double n = double(n_samples);
    r.estimate = a.value() / n;
    const double var = std::max(0.0, (b.value() - a.value() * a.value() / n) / (n - 1.0));
    r.std_error = std::sqrt(var / n);
    r.acceptance_rate = n / double(p);
    const double den = W_cosine_integral(sigma, 0.0, cfg).value;
    r.deterministic_value = t == 0.0 ? 1.0 : W_cosine_integral(sigma, t, cfg).value / den;
    const ConstantsReport c = st ? *st : S_T_constants(sigma, STMethod::A_direct, cfg);
    r.mm_rhs = -(c.S_value + c.T_value * t * t) / (den * quartic(sigma, t));
        // judged on the quadrature value; the MC margin is reported in standard errors
    r.mm_holds = r.deterministic_value > r.mm_rhs;
    r.mm_margin_se = r.std_error > 0.0 ? (r.estimate - r.mm_rhs) / r.std_error : 0.0;
    return r;
}

MCReport mc_check(double sigma, double t, long n_samples, std::uint64_t seed, const EvalConfig& cfg,
                  unsigned threads)
{
    const XSampler s(sigma, cfg);
    return mc_check(s, t, n_samples, seed, cfg, threads);
}

double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf)
{
    std::sort(x.begin(), x.end());
    const double n = double(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double F = cdf(x[i]);
        d = std::max({d, F - double(i) / n, double(i + 1) / n - F});
    }
    return d;
}

double ks_critical_1pct(long n)
{
    const double r = std::sqrt(double(n));
    return 1.628 / (r + 0.12 + 0.11 / r);
}

KernelK::KernelK(double sigma, const EvalConfig& cfg)
    : sigma_(sigma), cfg_(cfg), st_(S_T_constants(sigma, STMethod::A_direct, cfg))
{
    if (!(sigma > 0.5 && sigma < 1.0))
        throw std::domain_error("KernelK: sigma must lie in (1/2, 1)");
    f0_ = fourier(0.0, &f0_err_);
}

double KernelK::operator()(double x) const
{
    const double s = sigma_, S = st_.S_value, T = st_.T_value;
    return std::pow(2.0, s + 1.5) / M_PI * s * (1 - s) * (2 * s - 1) * calH(s, x, 0, cfg_) +
           s * (S - T * (1 - s) * (1 - s)) * std::exp((s - 1) * x) - (1 - s) * (S - T * s * s) * std::exp(-s * x);
}

double KernelK::fourier(double t, double* err) const
{
    const double s = sigma_, S = st_.S_value, T = st_.T_value;
    const auto I = W_cosine_integral(s, t, cfg_);
    const double k = s * (1 - s) * (2 * s - 1);
    const double a = s * (S - T * (1 - s) * (1 - s)), b = (1 - s) * (S - T * s * s);
    const double v = 2.0 * (k * I.value + a * (1 - s) / ((1 - s) * (1 - s) + t * t) - b * s / (s * s + t * t));
    if (err)
        *err = 2.0 * (k * I.err_est + st_.err_est * (s + 1.0 / (1 - s)));
    return v;
}

double KernelK::autocorrelation(double t, double* err) const
{
    double e = 0.0;
    const double v = fourier(t, &e) / f0_;
    if (err)
        *err = (e + std::abs(v) * f0_err_) / std::abs(f0_);
    return v;
}

double K_sigma(double sigma, double x, const EvalConfig& cfg) { return KernelK(sigma, cfg)(x); }

double K_fourier(double sigma, double t, const EvalConfig& cfg) { return KernelK(sigma, cfg).fourier(t); }

double autocorrelation_A(double sigma, double t, const EvalConfig& cfg)
{
    return KernelK(sigma, cfg).autocorrelation(t);
}

OrthoResult orthogonalization_scan(const std::function<Estimate(double)>& A, double t_max, double step,
                                   double tol, unsigned threads)
{
    const auto grid = grid_of(t_max, step, step);
    std::vector<Estimate> v(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) { v[i] = A(grid[i]); });
    OrthoResult r;
    r.points = static_cast<long>(grid.size());
    r.min_A = v[0].value;
    r.min_t = grid[0];
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (v[i].value < r.min_A) {
            r.min_A = v[i].value;
            r.min_t = grid[i];
        }
    for (std::size_t i = 0; i < grid.size() && std::abs(v[i].value) > 10 * v[i].err; ++i)
        r.resolved_up_to = grid[i];
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const bool clear = std::abs(v[i].value) > 10 * v[i].err && std::abs(v[i + 1].value) > 10 * v[i + 1].err;
        if (!clear || (v[i].value > 0) == (v[i + 1].value > 0))
            continue;
        double a = grid[i], b = grid[i + 1];
        const bool pos_a = v[i].value > 0;
        while (b - a > tol) {
            const double m = 0.5 * (a + b);
            if ((A(m).value > 0) == pos_a)
                a = m;
            else
                b = m;
        }
        r.iota_found = 0.5 * (a + b);
        r.iota_err = 0.5 * (b - a);
        break;
    }
    return r;
}

OrthoResult orthogonalization_scan(double sigma, double t_max, double step, const EvalConfig& cfg,
                                   unsigned threads)
{
    const KernelK K(sigma, cfg);
    return orthogonalization_scan(
        [&](double t) {
            Estimate e;
            e.value = K.autocorrelation(t, &e.err);
            return e;
        },
        t_max, step, 1e-10, threads);
}

} // namespace xi_ineq
