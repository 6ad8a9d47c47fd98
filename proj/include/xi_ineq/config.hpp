#pragma once

#include <stdexcept>
#include <string>

namespace xi_ineq {

// Tolerances and caps shared by every series and quadrature in the library.
struct EvalConfig {
    double series_tol = 1e-14;
    long series_max_terms = 100000;
    double quad_rel_tol = 1e-11;
    double quad_abs_tol = 1e-15;
    int quad_max_depth = 40;
    // Upper cutoff policy: a decay bound K e^{-rx} is truncated where the
    // tail K e^{-rX}/r equals cutoff_tail_fraction * quad_abs_tol.
    double cutoff_tail_fraction = 0.1;
    // J_tau via the naive double sum (test oracle only).
    bool j_tau_naive = false;

    void validate() const;
    EvalConfig tightened(double rel, double abs) const;
};

// Convergence failure: a series hit its cap or a quadrature ran out of depth.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double partial = 0.0, double err = 0.0)
        : std::runtime_error(what), partial_value(partial), partial_err(err) {}
    double partial_value;
    double partial_err;
};

// Non-finite integrand value.
class evaluation_error : public std::runtime_error {
public:
    evaluation_error(const std::string& what, double x)
        : std::runtime_error(what), abscissa(x) {}
    double abscissa;
};

class unsupported_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline bool sigma_flagged(double sigma) { return !(sigma > 0.0 && sigma < 1.0); }
inline bool tau_flagged(double tau) { return !(tau > 0.0 && tau < 0.5); }

} // namespace xi_ineq
