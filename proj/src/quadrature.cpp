#include "xi_ineq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace xi_ineq {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double uflow = std::numeric_limits<double>::min();

struct Panel {
    double a, b;
    double value, err, resabs;
    int depth;
    bool operator<(const Panel& o) const { return err < o.err; }
};

double checked(const Integrand& f, double x)
{
    double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand value at x = " << x;
        throw evaluation_error(os.str(), x);
    }
    return v;
}

// 21-point Kronrod extension of the 10-point Gauss rule, QUADPACK error model.
Panel gk21(const Integrand& f, double a, double b, int depth, long& evals)
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();

    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[21];
    fv[0] = checked(f, c);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        fv[2 * i - 1] = checked(f, c - h * xk[i]);
        fv[2 * i] = checked(f, c + h * xk[i]);
    }
    evals += 21;

    double rk = wk[0] * fv[0], rg = 0.0, rabs = wk[0] * std::abs(fv[0]);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        double s = fv[2 * i - 1] + fv[2 * i];
        rk += wk[i] * s;
        rabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
        if (i % 2 == 1)
            rg += wg[i / 2] * s;
    }
    const double mean = 0.5 * rk;
    double rasc = wk[0] * std::abs(fv[0] - mean);
    for (std::size_t i = 1; i < xk.size(); ++i)
        rasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

    double value = rk * h;
    double err = std::abs((rk - rg) * h);
    rabs *= std::abs(h);
    rasc *= std::abs(h);
    if (rasc != 0.0 && err != 0.0)
        err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
    if (rabs > uflow / (50.0 * eps))
        err = std::max(50.0 * eps * rabs, err);
    return {a, b, value, err, rabs, depth};
}

} // namespace

void CompensatedSum::add(double x)
{
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        c_ += (sum_ - t) + x;
    else
        c_ += (x - t) + sum_;
    sum_ = t;
}

QuadResult integrate_breakpoints(const Integrand& f, const std::vector<double>& pts,
                                 const EvalConfig& cfg)
{
    if (pts.size() < 2)
        throw std::invalid_argument("integrate: need at least two breakpoints");
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i] > pts[i - 1]))
            throw std::invalid_argument("integrate: breakpoints must be strictly increasing");

    QuadResult r;
    std::priority_queue<Panel> live;
    std::vector<Panel> frozen;
    for (std::size_t i = 1; i < pts.size(); ++i)
        live.push(gk21(f, pts[i - 1], pts[i], 0, r.evals));

    const long max_panels = 200000;
    double run_v = 0.0, run_err = 0.0, run_abs = 0.0;
    {
        auto copy = live;
        for (; !copy.empty(); copy.pop()) {
            run_v += copy.top().value;
            run_err += copy.top().err;
            run_abs += copy.top().resabs;
        }
    }
    auto finish = [&]() {
        CompensatedSum v;
        double err = 0.0;
        for (; !live.empty(); live.pop()) {
            v.add(live.top().value);
            err += live.top().err;
        }
        for (const auto& p : frozen) {
            v.add(p.value);
            err += p.err;
        }
        r.value = v.value();
        r.err_est = err;
    };
    for (;;) {
        const double target = std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(run_v));
        if (run_err <= target) {
            finish();
            r.converged =
                r.err_est <= std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(r.value));
            r.roundoff_limited = !r.converged;
            return r;
        }
        if (run_err <= 100.0 * eps * run_abs) {
            finish();
            r.roundoff_limited = true;
            return r;
        }
        if (live.empty() || static_cast<long>(live.size() + frozen.size()) > max_panels) {
            finish();
            std::ostringstream os;
            os.precision(6);
            os << "quadrature depth exhausted on [" << pts.front() << ", " << pts.back()
               << "]: err_est " << r.err_est << " > target " << target;
            throw convergence_error(os.str(), r.value, r.err_est);
        }
        Panel worst = live.top();
        live.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= cfg.quad_max_depth || !(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);
            continue;
        }
        Panel l = gk21(f, worst.a, mid, worst.depth + 1, r.evals);
        Panel h = gk21(f, mid, worst.b, worst.depth + 1, r.evals);
        run_v += l.value + h.value - worst.value;
        run_err += l.err + h.err - worst.err;
        run_abs += l.resabs + h.resabs - worst.resabs;
        live.push(l);
        live.push(h);
    }
}

QuadResult integrate_finite(const Integrand& f, double a, double b, const EvalConfig& cfg)
{
    if (!(a < b))
        throw std::invalid_argument("integrate_finite: need a < b");
    return integrate_breakpoints(f, {a, b}, cfg);
}

double tail_cutoff(double a, const Decay& d, const EvalConfig& cfg)
{
    if (d.cutoff)
        return std::max(*d.cutoff, a);
    if (!(d.rate > 0.0) || !(d.scale > 0.0))
        throw std::invalid_argument("decay hint: rate and scale must be positive");
    const double tail = cfg.cutoff_tail_fraction * cfg.quad_abs_tol;
    double x = std::log(d.scale / (d.rate * tail)) / d.rate;
    return std::max(x, a + 1.0 / d.rate);
}

namespace {

// a few equal initial panels so features in long truncated ranges are seen
std::vector<double> initial_split(double a, double b, int n)
{
    std::vector<double> p(n + 1);
    for (int i = 0; i <= n; ++i)
        p[i] = a + (b - a) * i / n;
    p[n] = b;
    return p;
}

} // namespace

QuadResult integrate_semi_infinite(const Integrand& f, double a, const Decay& d,
                                   const EvalConfig& cfg)
{
    const double x = tail_cutoff(a, d, cfg);
    auto r = integrate_breakpoints(f, initial_split(a, x, 8), cfg);
    r.truncation_point = x;
    return r;
}

QuadResult integrate_eta_weighted(const Integrand& g, double tau, const Decay& d,
                                  const EvalConfig& cfg)
{
    // the tail in y is bounded by 2K e^{-rY}/r since eta_tau <= 2 well past y = 1
    Decay dy = d;
    if (!dy.cutoff)
        dy.scale *= 2.0;
    const double y_max = std::max(tail_cutoff(1.0, dy, cfg), 1.0 + 1e-3);
    const double u_max = std::acosh(y_max);
    auto h = [&](double u) {
        double v = g(std::cosh(u));
        return v == 0.0 ? 0.0 : v * 2.0 * std::cosh(tau * u);
    };
    auto r = integrate_breakpoints(h, initial_split(0.0, u_max, 8), cfg);
    r.truncation_point = y_max;
    return r;
}

QuadResult integrate_oscillatory_cos(const Integrand& f, double t, double a, const Decay& d,
                                     const EvalConfig& cfg)
{
    const double x_max = tail_cutoff(a, d, cfg);
    auto g = [&](double x) {
        double v = f(x);
        return v == 0.0 ? 0.0 : v * std::cos(t * x);
    };
    if (std::abs(t) <= 1.0) {
        auto r = integrate_breakpoints(g, initial_split(a, x_max, 8), cfg);
        r.truncation_point = x_max;
        return r;
    }
    const double half = M_PI / std::abs(t);
    std::vector<double> pts{a};
    for (double k = std::floor(a / half) + 1.0;; k += 1.0) {
        double x = k * half;
        if (x >= x_max)
            break;
        if (x > pts.back())
            pts.push_back(x);
    }
    pts.push_back(x_max);

    const long panels = static_cast<long>(pts.size()) - 1;
    EvalConfig pc = cfg;
    pc.quad_abs_tol = cfg.quad_abs_tol / static_cast<double>(panels);

    QuadResult r;
    CompensatedSum sum;
    bool all_conv = true;
    for (long i = 0; i < panels; ++i) {
        auto p = integrate_breakpoints(g, {pts[i], pts[i + 1]}, pc);
        sum.add(p.value);
        r.err_est += p.err_est;
        r.evals += p.evals;
        all_conv = all_conv && p.converged;
        r.roundoff_limited = r.roundoff_limited || p.roundoff_limited;
    }
    r.value = sum.value();
    r.truncation_point = x_max;
    r.converged =
        all_conv && r.err_est <= std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(r.value));
    return r;
}

} // namespace xi_ineq
