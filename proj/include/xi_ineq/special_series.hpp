#pragma once

#include <vector>

#include "xi_ineq/config.hpp"

namespace xi_ineq {

// R(y) = 2 sum_{n>=1} exp(-pi n^2 y^2) and relatives.  Arguments below 1 go
// through the theta inversion G(y) = G(1/y)/y with G = 1 + R.
double theta_R(double y, const EvalConfig& cfg = {});
double theta_R_prime(double y, const EvalConfig& cfg = {});
double H_fn(double y, const EvalConfig& cfg = {});

// y R(y) + y - 1, equal to R(1/y) below 1
double stable_combo_A(double y, const EvalConfig& cfg = {});
// y^2 R'(y) + 1, equal to -R'(1/y)/y - R(1/y) below 1
double stable_combo_B(double y, const EvalConfig& cfg = {});

// R and R' truncated to n <= n_max, summed directly at any y (no inversion).
double theta_R_truncated(double y, int n_max);
double theta_R_prime_truncated(double y, int n_max);

double divisor_sigma(long k, double a);

// d-th derivative of J_tau(y) = sum_{m,n} (n/m)^tau exp(-2 pi m n y).
double J_tau(double tau, double y, int deriv, const EvalConfig& cfg = {});

// Divisor-sum coefficients sigma_{2tau}(k) k^{-tau} cached for one tau.
class JTauSeries {
public:
    explicit JTauSeries(double tau, long k_cached = 128);
    double operator()(double y, int deriv, const EvalConfig& cfg) const;
    double tau() const { return tau_; }

private:
    double coef(long k) const;
    double tau_;
    std::vector<double> coef_;
};

double eta_tau(double tau, double y);

struct SupConstant {
    double value = 0.0;
    double location = 0.0;   // 0 when the sup is the y -> 0 limit
    bool divergent = false;
    bool boundary_limit = false;
};

// sup_{y>0} y^n R(y)
SupConstant sup_constant_Cn(int n, const EvalConfig& cfg = {});
// sup_{y>0} (y^3 + y) R(y)
SupConstant sup_constant_C(const EvalConfig& cfg = {});

} // namespace xi_ineq
