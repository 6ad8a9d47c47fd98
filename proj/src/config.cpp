#include "xi_ineq/config.hpp"

#include <algorithm>
#include <cmath>

namespace xi_ineq {

void EvalConfig::validate() const
{
    auto pos = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!pos(series_tol) || !pos(quad_rel_tol) || !pos(quad_abs_tol) || !pos(cutoff_tail_fraction))
        throw std::invalid_argument("EvalConfig: tolerances must be positive and finite");
    if (series_max_terms < 1 || quad_max_depth < 1)
        throw std::invalid_argument("EvalConfig: caps must be >= 1");
}

EvalConfig EvalConfig::tightened(double rel, double abs) const
{
    EvalConfig c = *this;
    c.quad_rel_tol = std::min(quad_rel_tol, rel);
    c.quad_abs_tol = std::min(quad_abs_tol, abs);
    c.series_tol = std::min(series_tol, 1e-16);
    return c;
}

} // namespace xi_ineq
