#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xi_ineq/inequality_lab.hpp"
#include "xi_ineq/representation.hpp"
#include "xi_ineq/special_series.hpp"
#include "xi_ineq/xi_oracle.hpp"

namespace py = pybind11;
using namespace xi_ineq;

namespace {

py::dict constants_dict(const ConstantsReport& c)
{
    py::dict d;
    d["sigma"] = c.sigma;
    d["S"] = c.S_value;
    d["T"] = c.T_value;
    d["err_est"] = c.err_est;
    d["method"] = to_string(c.method);
    d["truncation"] = c.truncation.description;
    return d;
}

RecipeTruncation parse_trunc(const std::string& s)
{
    if (s == "none")
        return RecipeTruncation::none;
    if (s == "B")
        return RecipeTruncation::B;
    if (s == "C")
        return RecipeTruncation::C;
    throw std::invalid_argument("paper_truncation must be none, B or C");
}

}

PYBIND11_MODULE(xi_ineq, m)
{
    m.doc() = "Riemann xi oracle, theta-series representations of |xi|^2 and inequality checks";

    py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<evaluation_error>(m, "EvaluationError", PyExc_FloatingPointError);

    m.def("theta_R", [](double y) { return theta_R(y); }, py::arg("y"));
    m.def("theta_R_prime", [](double y) { return theta_R_prime(y); }, py::arg("y"));
    m.def("J_tau", [](double tau, double y, int d) { return J_tau(tau, y, d); }, py::arg("tau"), py::arg("y"),
          py::arg("deriv") = 0);
    m.def("sup_constant_C", [] { return sup_constant_C().value; });

    m.def("xi", [](std::complex<double> s) { return xi(s); }, py::arg("s"));
    m.def("xi_mod_sq", [](double s, double t) { return xi_mod_sq(s, t); }, py::arg("sigma"), py::arg("t"));
    m.def("xi_mod_sq_via_U", [](double s, double t) { return xi_mod_sq_via_U(s, t).value; }, py::arg("sigma"),
          py::arg("t"));

    m.def("S_T_constants",
          [](double s, const std::string& method, const std::string& trunc) {
              return constants_dict(S_T_constants(s, parse_method(method), {}, parse_trunc(trunc)));
          },
          py::arg("sigma"), py::arg("method") = "A", py::arg("paper_truncation") = "none");
    m.def("modulus_rhs", [](double s, double t) { return modulus_rhs(s, t); }, py::arg("sigma"), py::arg("t"));
    m.def("modulus_rhs_via_J", [](double tau, double t) { return modulus_rhs_via_J(tau, t); }, py::arg("tau"),
          py::arg("t"));
    m.def("W_sigma", [](double s, double x) { return W_sigma(s, x); }, py::arg("sigma"), py::arg("x"));
    m.def("power_series_coeffs", [](double s, int K) { return power_series_coeffs(s, K).coeffs; },
          py::arg("sigma"), py::arg("K"));

    m.def("autocorrelation_A", [](double s, double t) { return autocorrelation_A(s, t); }, py::arg("sigma"),
          py::arg("t"));
    m.def("mc_check",
          [](double s, double t, long n, std::uint64_t seed) {
              const auto r = mc_check(s, t, n, seed);
              py::dict d;
              d["estimate"] = r.estimate;
              d["std_error"] = r.std_error;
              d["deterministic_value"] = r.deterministic_value;
              d["acceptance_rate"] = r.acceptance_rate;
              d["mm_rhs"] = r.mm_rhs;
              d["mm_holds"] = r.mm_holds;
              return d;
          },
          py::arg("sigma"), py::arg("t"), py::arg("n_samples"), py::arg("seed"));
}
