#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "xi_ineq/config.hpp"
#include "xi_ineq/representation.hpp"

namespace xi_ineq {

// representation: S + T t^2 + quartic * W cosine transform; J_eta: the J/eta
// double integral form; U_transform: cosine transform of U_sigma
enum class ScanRoute { representation, J_eta, U_transform };

struct ScanReport {
    double sigma = 0.0;
    std::vector<double> grid, values, errs;
    double min_value = 0.0;
    double min_t = 0.0;
    std::vector<double> violations;     // value + err < 0
    std::vector<double> indeterminate;  // |value| <= err
    double err_est = 0.0;               // max pointwise error estimate
};

// 2|xi(sigma - it)|^2 through the chosen route on t = 0, step, ..., t_max
ScanReport scan_inequality(double sigma, double t_max, double step, ScanRoute route,
                           const EvalConfig& cfg = {}, unsigned threads = 0);

// V^N_sigma(t) with the truncated moments computed once.
class PolyApproxV {
public:
    PolyApproxV(double sigma, double N1, long N2, const EvalConfig& cfg = {},
                const ConstantsReport* st = nullptr);
    double operator()(double t) const;
    // int_0^{N1} W e^{-sigma x} x^{2n} dx / (2n)!
    double scaled_moment(long n) const { return nu_.at(n); }
    long N2() const { return static_cast<long>(nu_.size()) - 1; }
    const ConstantsReport& constants() const { return st_; }

private:
    double sigma_;
    ConstantsReport st_;
    std::vector<double> nu_;
};

double poly_approx_V(double sigma, double N1, long N2, double t, const EvalConfig& cfg = {});

struct TruncationLevels {
    long N1 = 0;
    std::uint64_t N2 = 0;
    double epsilon = 0.0;
    double sigma = 0.0;
    int T = 0;
    double C = 0.0;            // the sup constant used
    double tail_integral = 0.0;    // (T^2+1)^2 int_{N1}^inf W e^{-sigma x}
    double tail_bound = 0.0;   // 2 C^2 (T^2+1)^2 e^{-sigma N1} / sigma
    bool tail_passes = false;
};

TruncationLevels truncation_levels(double epsilon, double sigma, int T, const EvalConfig& cfg = {});

struct MarginCheck {
    TruncationLevels levels;
    long N2_used = 0;
    bool substituted = false;
    double min_V = 0.0;
    double min_t = 0.0;
    bool passes_margin = false;
};

MarginCheck check_truncated_margin(double sigma, int T, double epsilon, const EvalConfig& cfg = {},
                             long n2_cap = 64);

// first epsilon of the ladder whose cell clears the eps/2 margin
std::optional<MarginCheck> margin_epsilon_ladder(double sigma, int T, const std::vector<double>& ladder,
                                                const EvalConfig& cfg = {}, long n2_cap = 64);

// counter-based generator: the stream for (seed, index) is fixed
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next();
    double uniform();   // in (0, 1)

private:
    std::uint64_t s_;
};

// Rejection sampler for rho_sigma ~ W_sigma(x) e^{-sigma x} on x >= 0.
class XSampler {
public:
    static constexpr int kNodes = 4096;
    explicit XSampler(double sigma, const EvalConfig& cfg = {});

    double sample(std::uint64_t seed, std::uint64_t index, std::uint64_t* proposals = nullptr) const;
    double W_table(double x) const;
    double envelope() const { return M_; }
    double certified_error() const { return cert_; }
    double x_cut() const { return x_cut_; }
    double normalization() const { return norm_; }   // int_0^inf W e^{-sigma x}
    double cdf(double x) const;
    double mean() const;   // int x rho dx by quadrature
    double sigma() const { return sigma_; }

private:
    double sigma_, x_cut_, h_, M_, cert_, norm_, mean_;
    std::vector<double> w_, d_;        // node values and PCHIP slopes
    std::vector<double> F_, rho_;      // CDF and density at nodes
};

struct MCReport {
    double sigma = 0.0;
    double t = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
    double acceptance_rate = 0.0;
    std::uint64_t seed = 0;
    double deterministic_value = 0.0;
    double mm_rhs = 0.0;   // right side of the moment inequality
    bool mm_holds = false;
    double mm_margin_se = 0.0;   // (estimate - mm_rhs) / std_error
};

MCReport mc_check(const XSampler& sampler, double t, long n_samples, std::uint64_t seed,
                  const EvalConfig& cfg = {}, unsigned threads = 0,
                  const ConstantsReport* st = nullptr);
MCReport mc_check(double sigma, double t, long n_samples, std::uint64_t seed,
                  const EvalConfig& cfg = {}, unsigned threads = 0);

// Kolmogorov-Smirnov statistic of samples against a CDF; critical value at 1%
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_critical_1pct(long n);

// K_sigma kernel with S and T cached.
class KernelK {
public:
    explicit KernelK(double sigma, const EvalConfig& cfg = {});
    double operator()(double x) const;
    // 2 int_0^inf K cos(tx) dx (exponential parts in closed form)
    double fourier(double t, double* err = nullptr) const;
    double autocorrelation(double t, double* err = nullptr) const;
    const ConstantsReport& constants() const { return st_; }

private:
    double sigma_;
    EvalConfig cfg_;
    ConstantsReport st_;
    double f0_, f0_err_;
};

double K_sigma(double sigma, double x, const EvalConfig& cfg = {});
double K_fourier(double sigma, double t, const EvalConfig& cfg = {});
double autocorrelation_A(double sigma, double t, const EvalConfig& cfg = {});

struct Estimate {
    double value = 0.0;
    double err = 0.0;
};

struct OrthoResult {
    std::optional<double> iota_found;
    double iota_err = 0.0;
    double min_A = 0.0;
    double min_t = 0.0;
    long points = 0;
    // last grid point before which every |A| exceeds 10 err (sign resolved)
    double resolved_up_to = 0.0;
};

OrthoResult orthogonalization_scan(const std::function<Estimate(double)>& A, double t_max,
                                   double step, double tol = 1e-10, unsigned threads = 0);
OrthoResult orthogonalization_scan(double sigma, double t_max, double step,
                                   const EvalConfig& cfg = {}, unsigned threads = 0);

} // namespace xi_ineq
