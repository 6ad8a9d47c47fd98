#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xi_ineq/config.hpp"
#include "xi_ineq/quadrature.hpp"

namespace xi_ineq {

enum class WForm { convolution, closed };
enum class FForm { direct, eta };
enum class STMethod { A_direct, B_series, C_inversion };
// Published truncation recipes: none = converged.
enum class RecipeTruncation { none, B, C };

std::string to_string(STMethod m);
STMethod parse_method(const std::string& s);

// Integration window in the original y variable of the F integrals.
struct FWindow {
    double y_lo = 0.0;
    std::optional<double> y_hi;
};

// F_sigma^{(d)}(lambda).  Direct form uses y = 2(cosh u - 1), which turns the
// kernel into 2^{-tau} p_d(2cosh u) e^{-2 lambda cosh u} cosh(tau u) du.
double F_sigma(double sigma, double lambda, int deriv, FForm form = FForm::direct,
               const EvalConfig& cfg = {}, const FWindow& win = {});

struct GOptions {
    std::optional<int> cap;   // m, n <= cap double sum (published recipe)
    FWindow window;
};

// G_sigma^{(d)}(lambda) = sum_{m,n} m^{-sigma-1/2} n^{sigma-3/2} (pi m n)^d F^{(d)}(pi m n lambda)
double calG(double sigma, double lambda, int deriv, const EvalConfig& cfg = {},
            const GOptions& opt = {});

// d-th derivative of H_sigma(x) = G_sigma(e^x) e^{-x/2}, d in 0..3
double calH(double sigma, double x, int deriv, const EvalConfig& cfg = {});

struct HDerivs {
    double h0, h1, h2, h3;
};
HDerivs calH_derivs_at_0(double sigma, const EvalConfig& cfg = {}, const GOptions& opt = {});

double W_sigma(double sigma, double x, WForm form = WForm::closed, const EvalConfig& cfg = {});

struct Truncation {
    std::string description;
    std::optional<double> lower, upper;   // integration bounds
    std::optional<int> sum_cap;           // summation cap
    bool published_S_formula = false;
};

struct ConstantsReport {
    double sigma = 0.0;
    double S_value = 0.0;
    double T_value = 0.0;
    STMethod method = STMethod::A_direct;
    Truncation truncation;
    double err_est = 0.0;
    bool domain_warning = false;
};

// Converged constants by any route, or a published recipe when trunc != none
// (B recipe -> method B, C recipe -> method C with the published S expression).
ConstantsReport S_T_constants(double sigma, STMethod method, const EvalConfig& cfg = {},
                              RecipeTruncation trunc = RecipeTruncation::none);

// Method C recipe with the corrected S expression (n <= 5, [1, 10]).
ConstantsReport S_T_constants_C_recipe_corrected(double sigma, const EvalConfig& cfg = {});

// S and T from the J/eta integrals (closed J-form of the constants).
ConstantsReport S_T_via_J(double tau, const EvalConfig& cfg = {});

// int_0^inf W_sigma(x) e^{-sigma x} cos(tx) dx, closed W form
QuadResult W_cosine_integral(double sigma, double t, const EvalConfig& cfg = {});
// 4 int_1^inf int_1^inf cos(2t ln x) J_{sigma-1/2}(x^2 y) eta(y) dx dy
QuadResult J_cosine_integral(double tau, double t, const EvalConfig& cfg = {});

// |xi(sigma - it)|^2 through the modulus representation; S, T cached per sigma.
class ModulusRepresentation {
public:
    ModulusRepresentation(double sigma, const EvalConfig& cfg = {},
                          STMethod method = STMethod::A_direct);
    double operator()(double t) const;
    double err_est(double t) const;
    // value and error estimate from one evaluation
    std::pair<double, double> eval(double t) const;
    const ConstantsReport& constants() const { return st_; }
    double sigma() const { return sigma_; }

private:
    double sigma_;
    EvalConfig cfg_;
    ConstantsReport st_;
};

double modulus_rhs(double sigma, double t, const EvalConfig& cfg = {});

// The full right side of the J/eta inequality expression; equals 2|xi|^2.
class JRepresentation {
public:
    explicit JRepresentation(double tau, const EvalConfig& cfg = {});
    double operator()(double t) const;
    double err_est(double t) const;
    std::pair<double, double> eval(double t) const;
    const ConstantsReport& constants() const { return st_; }

private:
    double tau_;
    EvalConfig cfg_;
    ConstantsReport st_;
};

double modulus_rhs_via_J(double tau, double t, const EvalConfig& cfg = {});

double a_coeff(double tau, int k, const EvalConfig& cfg = {});
double c_coeff(double tau, int k, const EvalConfig& cfg = {});

struct PowerSeriesCoeffs {
    double sigma = 0.0;
    std::vector<double> coeffs;
    int K = 0;
    double operator()(double t) const;
};

PowerSeriesCoeffs power_series_coeffs(double sigma, int K, const EvalConfig& cfg = {});

// 48 pi^8 (e^15 3^{2k+1} + k!) / (2k)!
double coeff_magnitude_bound(int k);

} // namespace xi_ineq
