#pragma once

#include <complex>

#include "xi_ineq/config.hpp"
#include "xi_ineq/quadrature.hpp"

namespace xi_ineq {

using ComplexPoint = std::complex<double>;

// xi(s) = 1/2 + s(s-1)/2 int_1^inf (x^{s/2-1} + x^{-(s+1)/2}) psi(x) dx,
// psi(x) = R(sqrt x)/2.  Runs at tightened tolerance (the integral is
// multiplied by |s(s-1)| and cancels against 1/2 at large |t|).
ComplexPoint xi(ComplexPoint s, const EvalConfig& cfg = {});

// |xi(sigma - i t)|^2
double xi_mod_sq(double sigma, double t, const EvalConfig& cfg = {});

// Xi_sigma(t) = xi(sigma - i t) / xi(sigma)
ComplexPoint char_fn_Xi(double sigma, double t, const EvalConfig& cfg = {});

// P_sigma(y): H(e^{-y}) e^{-sigma y} for y <= 0, H(e^y) e^{(1-sigma) y} for y > 0,
// both over 2 xi(sigma)
double density_P(double sigma, double y, const EvalConfig& cfg = {});
// same with xi(sigma) supplied
double density_P_unnormalized(double sigma, double y, const EvalConfig& cfg = {});

enum class UForm { three_term, two_term };

double U_sigma(double sigma, double y, UForm form = UForm::two_term, const EvalConfig& cfg = {});

// (1/2) int_0^inf U_sigma(y) cos(ty) dy
QuadResult xi_mod_sq_via_U(double sigma, double t, const EvalConfig& cfg = {});

// int_0^inf U_sigma(y) y^{2k} dy / (2 (2k)!), the k-th Taylor coefficient of
// |xi(sigma - it)|^2 in t^2 up to the sign (-1)^k
QuadResult U_scaled_moment(double sigma, int k, const EvalConfig& cfg = {});

// U_sigma(|y|) / (4 xi(sigma)^2)
double density_Pbar(double sigma, double y, const EvalConfig& cfg = {});

// y where 96 pi^8 e^{5y - 2e^y} drops below `bound`
double U_tail_cutoff(double bound);

} // namespace xi_ineq
