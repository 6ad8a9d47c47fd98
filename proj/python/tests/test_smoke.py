import math

import pytest

xi_ineq = pytest.importorskip("xi_ineq")


def test_xi_half():
    # mpmath: 0.497120778188314109912773739685
    assert xi_ineq.xi(0.5).real == pytest.approx(0.4971207781883141, rel=1e-14)
    assert abs(xi_ineq.xi(0.3 + 2j) - xi_ineq.xi(0.7 - 2j)) < 1e-12


def test_constants_routes_agree():
    a = xi_ineq.S_T_constants(0.75, "A")
    b = xi_ineq.S_T_constants(0.75, "B")
    assert a["S"] == pytest.approx(0.4956694956210629, rel=1e-12)
    assert b["T"] == pytest.approx(a["T"], rel=1e-10)
    rb = xi_ineq.S_T_constants(0.75, "B", "B")
    assert rb["S"] == pytest.approx(0.473929, rel=1e-4)


def test_modulus_and_J_route():
    for t in (0.0, 2.0, 10.0):
        ref = xi_ineq.xi_mod_sq(0.6, t)
        assert xi_ineq.modulus_rhs(0.6, t) == pytest.approx(ref, rel=1e-9)
        assert xi_ineq.modulus_rhs_via_J(0.1, t) == pytest.approx(2 * ref, rel=1e-9)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        xi_ineq.S_T_constants(0.75, "Z")
    with pytest.raises(ValueError):
        xi_ineq.mc_check(0.3, 1.0, 1000, 1)


def test_monte_carlo_seeded():
    a = xi_ineq.mc_check(0.75, 5.0, 20000, 9)
    b = xi_ineq.mc_check(0.75, 5.0, 20000, 9)
    assert a == b
    assert abs(a["estimate"] - a["deterministic_value"]) < 4 * a["std_error"]
    assert math.isclose(xi_ineq.autocorrelation_A(0.75, 0.0), 1.0, abs_tol=1e-12)
