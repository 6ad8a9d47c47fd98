#include "xi_ineq/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "xi_ineq/inequality_lab.hpp"
#include "xi_ineq/parallel.hpp"
#include "xi_ineq/representation.hpp"
#include "xi_ineq/special_series.hpp"
#include "xi_ineq/xi_oracle.hpp"

namespace xi_ineq {

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long, bool, std::string>;

enum class Status { pass, fail, indeterminate };

const char* to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "indeterminate";
    }
}

// Published recipe values, compared against by reproduce-appendix.
constexpr double kPublishedB_S = 0.473929, kPublishedB_T = -0.0218449;
constexpr double kPublishedC_S = 0.38952, kPublishedC_T = -0.0232205;

struct Report {
    std::string command;
    json inputs = json::object();
    json outputs = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    Status status = Status::pass;
    std::vector<std::string> diagnostics;

    void row(std::vector<Cell> r) { rows.push_back(std::move(r)); }
    void fail(const std::string& why)
    {
        status = Status::fail;
        diagnostics.push_back(why);
    }
    void indeterminate(const std::string& why)
    {
        if (status == Status::pass)
            status = Status::indeterminate;
        diagnostics.push_back(why);
    }
};

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json cell_json(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> json {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>)
                return num(v);
            else
                return json(v);
        },
        c);
}

std::string cell_csv(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>)
                return format_double(v);
            else if constexpr (std::is_same_v<V, long>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<V, bool>)
                return v ? "true" : "false";
            else if (v.find_first_of(",\"\n") == std::string::npos)
                return v;
            else {
                std::string q = "\"";
                for (char ch : v)
                    q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                return q + "\"";
            }
        },
        c);
}

std::string utc_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_report(const Report& r, const RunConfig& rc, std::ostream& os)
{
    if (rc.format == "csv") {
        for (std::size_t i = 0; i < r.columns.size(); ++i)
            os << (i ? "," : "") << r.columns[i];
        os << '\n';
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << cell_csv(row[i]);
            os << '\n';
        }
        return;
    }
    json j;
    j["command"] = r.command;
    j["version"] = kVersion;
    if (rc.timestamp)
        j["timestamp"] = utc_now();
    j["status"] = to_string(r.status);
    j["inputs"] = r.inputs;
    j["outputs"] = r.outputs;
    j["diagnostics"] = r.diagnostics;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            o[r.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

json echo_inputs(const RunConfig& rc)
{
    json j;
    j["sigma"] = rc.sigma;
    j["tau"] = rc.tau;
    j["t"] = rc.t;
    j["t_max"] = rc.t_max ? num(*rc.t_max) : json(nullptr);
    j["step"] = rc.step ? num(*rc.step) : json(nullptr);
    j["method"] = rc.method;
    j["seed"] = rc.seed;
    j["samples"] = rc.samples;
    j["terms"] = rc.terms;
    j["paper_truncation"] = rc.paper_truncation;
    j["format"] = rc.format;
    json e;
    e["series_tol"] = rc.eval.series_tol;
    e["series_max_terms"] = rc.eval.series_max_terms;
    e["quad_rel_tol"] = rc.eval.quad_rel_tol;
    e["quad_abs_tol"] = rc.eval.quad_abs_tol;
    e["quad_max_depth"] = rc.eval.quad_max_depth;
    e["cutoff_tail_fraction"] = rc.eval.cutoff_tail_fraction;
    j["eval"] = std::move(e);
    return j;
}

std::vector<double> or_default(const std::vector<double>& v, std::vector<double> d) { return v.empty() ? d : v; }

std::vector<double> t_grid(const RunConfig& rc, std::vector<double> dflt, double dmax, double dstep)
{
    if (!rc.t.empty())
        return rc.t;
    if (!rc.t_max && !rc.step && !dflt.empty())
        return dflt;
    const double tm = rc.t_max.value_or(dmax), st = rc.step.value_or(dstep);
    if (!(st > 0.0) || !(tm >= 0.0))
        throw std::invalid_argument("need --step > 0 and --t-max >= 0");
    std::vector<double> g;
    const long n = static_cast<long>(std::floor(tm / st + 1e-9));
    for (long i = 0; i <= n; ++i)
        g.push_back(st * double(i));
    return g;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---- subcommands -------------------------------------------------------

void cmd_constants(const RunConfig& rc, Report& r)
{
    const auto sigmas = or_default(rc.sigma, {0.75});
    r.columns = {"sigma", "method", "truncation", "S", "T", "err_est", "S_positive", "T_negative", "S_plus_T_over_4_positive"};
    const auto trunc = rc.paper_truncation;
    std::vector<STMethod> methods;
    if (trunc == "B")
        methods = {STMethod::B_series};
    else if (trunc == "C")
        methods = {STMethod::C_inversion};
    else if (rc.method.empty() || rc.method == "all")
        methods = {STMethod::A_direct, STMethod::B_series, STMethod::C_inversion};
    else
        methods = {parse_method(rc.method)};
    const RecipeTruncation pt = trunc == "B" ? RecipeTruncation::B : trunc == "C" ? RecipeTruncation::C : RecipeTruncation::none;

    json spread = json::array();
    for (double s : sigmas) {
        std::vector<double> S, T;
        for (auto m : methods) {
            try {
                const auto c = S_T_constants(s, m, rc.eval, pt);
                const bool sp = c.S_value > 0, tn = c.T_value < 0, st4 = c.S_value + c.T_value / 4 > 0;
                r.row({s, to_string(m), c.truncation.description, c.S_value, c.T_value, c.err_est, sp, tn, st4});
                if (pt != RecipeTruncation::none)
                    continue;
                S.push_back(c.S_value);
                T.push_back(c.T_value);
                if (!(sp && tn && st4))
                    r.fail("sign fact violated at sigma=" + format_double(s) + " method " + to_string(m));
            } catch (const std::exception& e) {
                r.indeterminate("sigma=" + format_double(s) + " method " + to_string(m) + ": " + e.what());
            }
        }
        if (pt == RecipeTruncation::C) {
            const auto c = S_T_constants_C_recipe_corrected(s, rc.eval);
            r.row({s, std::string("C_corrected"), c.truncation.description, c.S_value, c.T_value, c.err_est,
                   c.S_value > 0, c.T_value < 0, c.S_value + c.T_value / 4 > 0});
        }
        if (S.size() > 1) {
            const auto [smin, smax] = std::minmax_element(S.begin(), S.end());
            const auto [tmin, tmax] = std::minmax_element(T.begin(), T.end());
            const double ds = (*smax - *smin) / std::abs(S[0]), dt = (*tmax - *tmin) / std::abs(T[0]);
            spread.push_back({{"sigma", s}, {"S_rel_spread", ds}, {"T_rel_spread", dt}});
            if (ds > 1e-6 || dt > 1e-6)
                r.fail("methods disagree beyond 1e-6 at sigma=" + format_double(s));
        }
    }
    r.outputs["agreement"] = spread;
    r.outputs["agreement_tolerance"] = 1e-6;
}

void cmd_verify_modulus(const RunConfig& rc, Report& r)
{
    const auto sigmas = or_default(rc.sigma, {0.55, 0.6, 0.75, 0.9});
    const auto ts = t_grid(rc, {0, 0.5, 1, 2, 5, 10, 14.2, 20}, 20, 0.5);
    const double tol = 1e-6;
    r.columns = {"sigma", "t", "oracle", "representation", "J_eta_route", "rel_err", "pointwise_rel_err"};
    struct Row {
        double o, m, j, e, pe;
    };
    double worst = 0.0;
    for (double s : sigmas) {
        const ModulusRepresentation mr(s, rc.eval);
        std::optional<JRepresentation> jr;
        if (!tau_flagged(s - 0.5))
            jr.emplace(s - 0.5, rc.eval);
        const double scale0 = xi_mod_sq(s, 0.0, rc.eval);
        std::vector<Row> out(ts.size());
        parallel_for(ts.size(), rc.threads, [&](std::size_t i) {
            const double t = ts[i];
            Row w{};
            w.o = xi_mod_sq(s, t, rc.eval);
            w.m = mr(t);
            w.j = jr ? 0.5 * (*jr)(t) : NAN;
            // deviations measured on the scale of |xi(sigma)|^2 (the values span 9 decades)
            const double scale = std::max(scale0, std::abs(w.o));
            w.e = std::abs(w.m - w.o) / scale;
            if (jr)
                w.e = std::max(w.e, std::abs(w.j - w.o) / scale);
            w.pe = std::abs(w.m - w.o) / std::abs(w.o);
            out[i] = w;
        });
        for (std::size_t i = 0; i < ts.size(); ++i) {
            r.row({s, ts[i], out[i].o, out[i].m, out[i].j, out[i].e, out[i].pe});
            worst = std::max(worst, out[i].e);
            if (!(out[i].e <= tol))
                r.fail("representation deviates at sigma=" + format_double(s) + " t=" + format_double(ts[i]) +
                       ": rel_err " + format_double(out[i].e));
        }
    }
    r.outputs["max_rel_err"] = worst;
    r.outputs["tolerance"] = tol;
}

void cmd_scan(const RunConfig& rc, Report& r)
{
    const auto sigmas = or_default(rc.sigma, {0.75});
    ScanRoute route = ScanRoute::representation;
    if (rc.method == "J" || rc.method == "J_eta")
        route = ScanRoute::J_eta;
    else if (rc.method == "U")
        route = ScanRoute::U_transform;
    else if (!(rc.method.empty() || rc.method == "representation"))
        throw std::invalid_argument("scan --method must be representation, J or U");
    r.columns = {"sigma", "t", "value", "err_est", "state"};
    json summary = json::array();
    for (double s : sigmas) {
        const auto sr = scan_inequality(s, rc.t_max.value_or(20.0), rc.step.value_or(0.1), route, rc.eval, rc.threads);
        for (std::size_t i = 0; i < sr.grid.size(); ++i) {
            const double v = sr.values[i], e = sr.errs[i];
            r.row({s, sr.grid[i], v, e, std::string(v + e < 0 ? "violation" : std::abs(v) <= e ? "indeterminate" : "positive")});
        }
        summary.push_back({{"sigma", s}, {"min_value", sr.min_value}, {"min_t", sr.min_t},
                           {"violations", sr.violations.size()}, {"indeterminate", sr.indeterminate.size()},
                           {"max_err_est", sr.err_est}});
        if (!sr.violations.empty())
            r.fail("inequality violated at sigma=" + format_double(s) + " t=" + format_double(sr.violations[0]));
        else if (!sr.indeterminate.empty())
            r.indeterminate("sign unresolved at " + std::to_string(sr.indeterminate.size()) + " points, sigma=" +
                            format_double(s));
    }
    r.outputs["summary"] = summary;
}

void cmd_coeffs(const RunConfig& rc, Report& r)
{
    const auto sigmas = or_default(rc.sigma, {0.75});
    const int K = rc.terms;
    if (K < 0 || K > 40)
        throw std::invalid_argument("--terms must lie in [0, 40]");
    r.columns = {"sigma", "k", "c", "sign_ok", "bound", "bound_ok", "moment", "moment_rel_err"};
    json partial = json::array();
    for (double s : sigmas) {
        const auto ps = power_series_coeffs(s, K, rc.eval);
        for (int k = 0; k <= K; ++k) {
            const double c = ps.coeffs[k];
            const double b = coeff_magnitude_bound(k);
            const double m = (k % 2 ? -1.0 : 1.0) * U_scaled_moment(s, k, rc.eval).value;
            const bool sign_ok = (k % 2 ? -c : c) > 0, bound_ok = std::abs(c) <= b;
            const double me = rel(c, m);
            r.row({s, long(k), c, sign_ok, b, bound_ok, m, me});
            if (!sign_ok)
                r.fail("(-1)^k c(k) <= 0 at k=" + std::to_string(k));
            if (!bound_ok)
                r.fail("coefficient bound fails at k=" + std::to_string(k));
            if (k <= 4 && me > 1e-5)
                r.fail("moment identity off at k=" + std::to_string(k) + ": " + format_double(me));
        }
        for (double t : {0.0, 0.5, 1.0}) {
            const double o = xi_mod_sq(s, t, rc.eval), p = ps(t);
            partial.push_back({{"sigma", s}, {"t", t}, {"partial_sum", p}, {"oracle", o}, {"abs_err", std::abs(p - o)}});
            if (std::abs(p - o) > 1e-5)
                r.fail("partial sum off at t=" + format_double(t));
        }
    }
    r.outputs["partial_sums"] = partial;
    r.outputs["terms"] = K;
}

void cmd_montecarlo(const RunConfig& rc, Report& r)
{
    const auto sigmas = or_default(rc.sigma, {0.75});
    const auto ts = rc.t.empty() ? std::vector<double>{1, 5, 10} : rc.t;
    r.columns = {"sigma", "t", "estimate", "std_error", "deterministic", "z", "mm_rhs", "mm_holds", "mm_margin_se"};
    json samplers = json::array();
    for (double s : sigmas) {
        const XSampler xs(s, rc.eval);
        const auto st = S_T_constants(s, STMethod::A_direct, rc.eval);
        for (double t : ts) {
            const auto m = mc_check(xs, t, rc.samples, rc.seed, rc.eval, rc.threads, &st);
            const double z = m.std_error > 0 ? (m.estimate - m.deterministic_value) / m.std_error : 0.0;
            r.row({s, t, m.estimate, m.std_error, m.deterministic_value, z, m.mm_rhs, m.mm_holds, m.mm_margin_se});
            if (std::abs(z) > 4)
                r.fail("Monte Carlo misses quadrature by " + format_double(z) + " SE at t=" + format_double(t));
            if (!m.mm_holds)
                r.fail("moment inequality fails at t=" + format_double(t));
        }
        std::vector<double> x(static_cast<std::size_t>(rc.samples));
        parallel_for(x.size(), rc.threads, [&](std::size_t i) { x[i] = xs.sample(rc.seed, i); });
        const double D = ks_statistic(std::move(x), [&](double v) { return xs.cdf(v); });
        const double crit = ks_critical_1pct(rc.samples);
        samplers.push_back({{"sigma", s}, {"envelope", xs.envelope()}, {"certified_error", xs.certified_error()},
                            {"x_cut", xs.x_cut()}, {"normalization", xs.normalization()}, {"mean", xs.mean()},
                            {"ks_statistic", D}, {"ks_critical_1pct", crit}});
        if (D > crit)
            r.fail("KS test rejects the sampler at 1%, sigma=" + format_double(s));
    }
    r.outputs["seed"] = rc.seed;
    r.outputs["samplers"] = samplers;
}

void cmd_autocorr(const RunConfig& rc, Report& r)
{
    const auto sigmas = or_default(rc.sigma, {0.6, 0.75, 0.9});
    const double tm = rc.t_max.value_or(30.0), st = rc.step.value_or(0.05);
    r.columns = {"sigma", "t", "A", "err_est"};
    json scans = json::array();
    for (double s : sigmas) {
        const KernelK K(s, rc.eval);
        const long n = static_cast<long>(std::floor(tm / st + 1e-9));
        std::vector<Estimate> tab(n + 1);
        parallel_for(tab.size(), rc.threads, [&](std::size_t i) {
            tab[i].value = K.autocorrelation(st * double(i), &tab[i].err);
        });
        for (long i = 0; i <= n; ++i)
            r.row({s, st * double(i), tab[i].value, tab[i].err});
        // grid points come from the table, bisection points are fresh
        const auto o = orthogonalization_scan(
            [&](double t) {
                const long i = std::lround(t / st);
                if (i >= 0 && i <= n && st * double(i) == t)
                    return tab[i];
                Estimate e;
                e.value = K.autocorrelation(t, &e.err);
                return e;
            },
            tm, st, 1e-10, rc.threads);
        json jo = {{"sigma", s}, {"iota_found", o.iota_found ? num(*o.iota_found) : json(nullptr)},
                   {"min_A", o.min_A}, {"min_t", o.min_t}, {"sign_resolved_up_to", o.resolved_up_to}};
        scans.push_back(jo);
        if (o.iota_found)
            r.fail("autocorrelation changes sign near t=" + format_double(*o.iota_found) + " at sigma=" +
                   format_double(s));
    }
    r.outputs["scans"] = scans;
}

void cmd_reproduce_appendix(const RunConfig& rc, Report& r)
{
    const double s = rc.sigma.empty() ? 0.75 : rc.sigma[0];
    r.columns = {"recipe", "S", "T", "published_S", "published_T", "S_rel_dev", "T_rel_dev", "within_1e-4"};
    auto add = [&](const std::string& name, const ConstantsReport& c, double ps, double pt, bool judged) {
        const double ds = rel(c.S_value, ps), dt = rel(c.T_value, pt);
        const bool ok = ds <= 1e-4 && dt <= 1e-4;
        r.row({name, c.S_value, c.T_value, ps, pt, ds, dt, ok});
        if (judged && !ok)
            r.fail(name + " recipe does not reproduce the published pair (S dev " + format_double(ds) + ", T dev " +
                   format_double(dt) + ")");
    };
    add("B", S_T_constants(s, STMethod::B_series, rc.eval, RecipeTruncation::B), kPublishedB_S, kPublishedB_T, true);
    add("C", S_T_constants(s, STMethod::C_inversion, rc.eval, RecipeTruncation::C), kPublishedC_S, kPublishedC_T, true);
    add("C_corrected", S_T_constants_C_recipe_corrected(s, rc.eval), kPublishedC_S, kPublishedC_T, false);
    const auto conv = S_T_constants(s, STMethod::A_direct, rc.eval);
    r.outputs["converged"] = {{"S", conv.S_value}, {"T", conv.T_value}, {"err_est", conv.err_est}};
    r.outputs["sigma"] = s;
}

void cmd_selftest(const RunConfig& rc, Report& r)
{
    r.columns = {"check", "value", "reference", "tolerance", "pass"};
    auto check = [&](const std::string& name, double v, double ref, double tol, bool relative) {
        const double d = relative ? rel(v, ref) : std::abs(v - ref);
        const bool ok = d <= tol;
        r.row({name, v, ref, tol, ok});
        if (!ok)
            r.fail(name + " off by " + format_double(d));
    };
    const auto& c = rc.eval;
    check("xi(0)", xi(0.0, c).real(), 0.5, 1e-12, false);
    check("xi(1)", xi(1.0, c).real(), 0.5, 1e-12, false);
    const ComplexPoint s(0.3, 2.0);
    check("xi symmetry at 0.3+2i", std::abs(xi(s, c) - xi(1.0 - s, c)), 0.0, 1e-12, false);
    const auto A = S_T_constants(0.75, STMethod::A_direct, c);
    const auto B = S_T_constants(0.75, STMethod::B_series, c);
    const auto C = S_T_constants(0.75, STMethod::C_inversion, c);
    check("S method B vs A", B.S_value, A.S_value, 1e-6, true);
    check("S method C vs A", C.S_value, A.S_value, 1e-6, true);
    check("T method B vs A", B.T_value, A.T_value, 1e-6, true);
    const ModulusRepresentation mr(0.75, c);
    const double x0 = xi_mod_sq(0.75, 0.0, c);
    for (double t : {0.0, 5.0})
        check("modulus t=" + format_double(t), mr(t) / x0, xi_mod_sq(0.75, t, c) / x0, 1e-6, false);
    check("J route tau=0.25 t=1", modulus_rhs_via_J(0.25, 1.0, c), 2 * xi_mod_sq(0.75, 1.0, c), 1e-5, true);
    check("U route t=5", xi_mod_sq_via_U(0.75, 5.0, c).value, xi_mod_sq(0.75, 5.0, c), 1e-6, true);
    const KernelK K(0.75, c);
    check("A(0)", K.autocorrelation(0.0), 1.0, 1e-12, false);
    const double q = (1 + 0.0625) * (1 + 0.5625);
    check("K Fourier t=1", K.fourier(1.0), 4 * 0.75 * 0.25 * 0.5 * xi_mod_sq(0.75, 1.0, c) / q, 1e-6, true);
    const auto ps = power_series_coeffs(0.75, 8, c);
    check("power series t=1", ps(1.0), xi_mod_sq(0.75, 1.0, c), 1e-5, false);
}

using Handler = std::function<void(const RunConfig&, Report&)>;

const std::map<std::string, std::pair<Handler, std::string>>& commands()
{
    static const std::map<std::string, std::pair<Handler, std::string>> m = {
        {"constants", {cmd_constants, "S and T per method, with sign facts and cross-method agreement"}},
        {"verify-modulus", {cmd_verify_modulus, "modulus representation and J/eta route against the xi oracle"}},
        {"scan", {cmd_scan, "scan 2|xi(sigma - it)|^2 >= 0 through a chosen representation"}},
        {"coeffs", {cmd_coeffs, "power-series coefficients with sign, bound and moment checks"}},
        {"montecarlo", {cmd_montecarlo, "Monte Carlo cosine moments of the W density, KS test of the sampler"}},
        {"autocorr", {cmd_autocorr, "autocorrelation A_sigma(t) table and orthogonalization scan"}},
        {"reproduce-appendix", {cmd_reproduce_appendix, "both published truncation recipes for S and T"}},
        {"selftest", {cmd_selftest, "invariant suite on reduced grids"}},
    };
    return m;
}

} // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    RunConfig rc;
    CLI::App app{"xi-ineq: numerical checks of an RH-equivalent inequality program", "xi-ineq"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key = value file (# comments); XI_INEQ_CONFIG is the fallback")
        ->envname("XI_INEQ_CONFIG");

    double t_max = NAN, step = NAN;
    app.add_option("--sigma", rc.sigma, "line(s) Re s = sigma")->delimiter(',');
    app.add_option("--tau", rc.tau, "tau = sigma - 1/2 (converted to sigma)")->delimiter(',');
    app.add_option("--t", rc.t, "explicit t points")->delimiter(',');
    app.add_option("--t-max", t_max, "upper end of the t grid");
    app.add_option("--step", step, "t grid step");
    app.add_option("--method", rc.method, "constants: A|B|C|all; scan: representation|J|U");
    app.add_option("--seed", rc.seed, "RNG seed");
    app.add_option("--samples", rc.samples, "Monte Carlo sample count")->check(CLI::Range(1000L, 1000000000L));
    app.add_option("--terms", rc.terms, "power-series terms");
    app.add_option("--out", rc.out, "output path (default stdout)");
    app.add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--paper-truncation", rc.paper_truncation, "none, B or C")->check(CLI::IsMember({"none", "B", "C"}));
    app.add_option("--threads", rc.threads, "worker threads (0 = all cores)");
    app.add_flag("!--no-timestamp", rc.timestamp, "omit the timestamp field");
    app.add_option("--series-tol", rc.eval.series_tol);
    app.add_option("--series-max-terms", rc.eval.series_max_terms);
    app.add_option("--quad-rel-tol", rc.eval.quad_rel_tol);
    app.add_option("--quad-abs-tol", rc.eval.quad_abs_tol);
    app.add_option("--quad-max-depth", rc.eval.quad_max_depth);
    app.add_option("--cutoff-tail-fraction", rc.eval.cutoff_tail_fraction);

    for (const auto& [name, h] : commands())
        app.add_subcommand(name, h.second);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return int(ExitCode::pass);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return int(ExitCode::usage);
    }
    rc.command = app.get_subcommands().front()->get_name();
    if (!std::isnan(t_max))
        rc.t_max = t_max;
    if (!std::isnan(step))
        rc.step = step;
    for (double tau : rc.tau)
        rc.sigma.push_back(tau + 0.5);

    Report r;
    r.command = rc.command;
    try {
        rc.eval.validate();
        r.inputs = echo_inputs(rc);
        commands().at(rc.command).first(rc, r);
    } catch (const convergence_error& e) {
        err << "xi-ineq: numerical failure: " << e.what() << '\n';
        return int(ExitCode::numerical);
    } catch (const evaluation_error& e) {
        err << "xi-ineq: numerical failure: " << e.what() << " at x=" << format_double(e.abscissa) << '\n';
        return int(ExitCode::numerical);
    } catch (const std::logic_error& e) {
        // domain_error / invalid_argument / unsupported_error: bad input
        err << "xi-ineq: " << e.what() << '\n';
        return int(ExitCode::usage);
    } catch (const std::exception& e) {
        err << "xi-ineq: " << e.what() << '\n';
        return int(ExitCode::numerical);
    }

    if (rc.out.empty()) {
        write_report(r, rc, out);
    } else {
        std::ofstream f(rc.out, std::ios::binary);
        if (!f) {
            err << "xi-ineq: cannot open " << rc.out << '\n';
            return int(ExitCode::usage);
        }
        write_report(r, rc, f);
    }
    for (const auto& d : r.diagnostics)
        err << "xi-ineq: " << d << '\n';
    switch (r.status) {
    case Status::pass: return int(ExitCode::pass);
    case Status::fail: return int(ExitCode::check_failed);
    default: return int(ExitCode::numerical);
    }
}

} // namespace xi_ineq
