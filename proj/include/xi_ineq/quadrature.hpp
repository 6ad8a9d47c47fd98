#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "xi_ineq/config.hpp"

namespace xi_ineq {

using Integrand = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    long evals = 0;
    std::optional<double> truncation_point;
    bool converged = false;
    // error estimate is at the rounding floor of the rule, tolerance unreachable
    bool roundoff_limited = false;
};

// |f(x)| <= scale * exp(-rate * x) eventually.  An explicit cutoff overrides
// the tail-bound rule (used for super-exponential decay).
struct Decay {
    double rate = 1.0;
    double scale = 1.0;
    std::optional<double> cutoff;
};

QuadResult integrate_finite(const Integrand& f, double a, double b, const EvalConfig& cfg);

// Same, with the initial partition given explicitly (sorted breakpoints incl. ends).
QuadResult integrate_breakpoints(const Integrand& f, const std::vector<double>& pts,
                                 const EvalConfig& cfg);

double tail_cutoff(double a, const Decay& d, const EvalConfig& cfg);

QuadResult integrate_semi_infinite(const Integrand& f, double a, const Decay& d,
                                   const EvalConfig& cfg);

// int_1^inf g(y) eta_tau(y) dy through y = cosh u.  The decay hint is in y.
QuadResult integrate_eta_weighted(const Integrand& g, double tau, const Decay& d,
                                  const EvalConfig& cfg);

// int_a^inf f(x) cos(tx) dx; half-period panels for |t| > 1.
QuadResult integrate_oscillatory_cos(const Integrand& f, double t, double a, const Decay& d,
                                     const EvalConfig& cfg);

// Neumaier summation.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

} // namespace xi_ineq
