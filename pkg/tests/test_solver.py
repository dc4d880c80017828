"""The implicit solver against printed expansions and internal identities."""

import pytest

from forestmaps.exact import Q
from forestmaps.series import ZSeries
from forestmaps.solver import (
    compose_biv,
    mu_expansion,
    quartic_h_via_lambda,
    residual_rs,
    series_f,
    series_f_explicit_quartic,
    series_g,
    series_h,
    solve,
    solve_rs,
    solve_s_tilde,
)
from forestmaps.trees import phi_theta_tables
from forestmaps.upoly import UPoly


def upoly(*coeffs):
    return UPoly([Q(c) for c in coeffs])


def test_quartic_r_expansion():
    R, S = solve_rs(4, 3)
    assert R.coeff(1) == upoly(1)
    assert R.coeff(2) == upoly(0, 3)          # 3u
    assert R.coeff(3) == upoly(0, 30, 18)     # 6u(3u+5)
    assert S.is_zero()


def test_cubic_r_expansion():
    R, _ = solve_rs(3, 3)
    assert R.coeff(2) == upoly(0, 6, 4)                 # 2u(2u+3)
    assert R.coeff(3) == upoly(0, 140, 252, 168, 40)    # 4u(35+63u+42u^2+10u^3)


def test_u_zero_collapse():
    for p in (3, 4, 5):
        R, S = solve_rs(p, 6, 0)
        assert R == ZSeries.z(6)
        assert S.is_zero()


def test_even_p_bivariate_route_agrees():
    for p in (4, 6):
        R1, S1 = solve_rs(p, 8)
        R2, S2 = solve_rs(p, 8, force_bivariate=True)
        assert R1 == R2 and S2.is_zero()


def test_system_residuals_vanish():
    for p in (3, 4, 5, 6):
        R, S = solve_rs(p, 12)
        r1, r2 = residual_rs(p, R, S)
        assert r1.is_zero() and r2.is_zero(), p


def test_specialize_before_equals_after():
    u0 = Q(5, 7)
    for p in (3, 4):
        out = solve(p, 12)
        spec = solve(p, 12, u0)
        for a, b in (
            (out.R, spec.R), (out.S, spec.S), (out.S_tilde, spec.S_tilde),
            (out.F, spec.F), (out.H, spec.H),
        ):
            assert a.specialize_u(u0) == b
        if p == 3:
            assert out.G.specialize_u(u0) == spec.G


def test_forest_series_printed_coefficients():
    f, _ = series_f(3, 4)
    assert f.coeff(3) == upoly(6, 4)
    assert f.coeff(4) == upoly(140, 234, 144, 32)
    assert f.coeff(0).is_zero()  # F(0, u) = 0


def test_quartic_explicit_form_matches():
    assert series_f_explicit_quartic(6) == series_f(4, 6)[0]
    assert series_f_explicit_quartic(10, Q(1)) == series_f(4, 10, Q(1))[0]
    assert series_f_explicit_quartic(8, Q(0)) == series_f(4, 8, Q(0))[0]


def test_quasi_cubic_series():
    g = series_g(5)
    assert g.coeff(0).is_zero() and g.coeff(1).is_zero()
    assert g.coeff(2) == upoly(1, 1)  # the unique 2-face map, forests {} / {bridge}
    gp = g.differentiate()
    # [z] G'(z, 0) = 2 (the u -> 0 limit of (1 + 1/u) S)
    assert gp.coeff(1).coeff(0) == 2


def test_root_edge_outside_series():
    h3 = series_h(3, 4)
    assert h3.coeff(3) == upoly(4, 4)
    h4 = series_h(4, 4)
    assert h4.coeff(3) == upoly(2)
    assert quartic_h_via_lambda(4) == h4
    assert h4.coeff(0).is_zero()


def test_even_h_prime_shortcut():
    # checked internally by series_h; do it explicitly once more at p=6
    out = solve(6, 8)
    z = ZSeries.z(8, UPoly(), UPoly((1,)))
    hp = (out.R - z).scale(Q(2)).divide_by_u()
    assert hp.integrate().truncate(8) == out.H


def test_s_tilde_is_s_with_r_replaced_by_z():
    # run the sweep with the first equation's table emptied: R stays z and
    # the second unknown becomes S~ by construction
    order = 8
    tabs = phi_theta_tables(3, order)
    z = ZSeries.z(order, UPoly(), UPoly((1,)))
    st = ZSeries.zero(order, UPoly())
    for k in range(1, order + 1):
        stk = compose_biv(tabs["phi2"], z.truncate(k), st.truncate(k), k) \
            .scale(UPoly.u())
        st = ZSeries(list(stk.coeffs), order, UPoly())
    assert st == solve_s_tilde(3, order)


def test_s_tilde_even_p_vanishes():
    assert solve_s_tilde(4, 6).is_zero()


def test_mu_expansion_printed_terms():
    out = solve(3, 4)
    z = ZSeries.z(4, UPoly(), UPoly((1,)))
    r_mu = mu_expansion((out.R - z).divide_by_u())
    assert r_mu.coeff(2) == upoly(2, 4)          # 2(2mu+1)
    assert r_mu.coeff(3) == upoly(16, 36, 48, 40)
    s_mu = mu_expansion(out.S.divide_by_u())
    assert s_mu.coeff(1) == upoly(2)
    assert s_mu.coeff(2) == upoly(6, 12, 12)     # 6(2mu^2+2mu+1)
    st_mu = mu_expansion(out.S_tilde.divide_by_u())
    assert st_mu.coeff(2) == upoly(10, 16, 4)    # 2(2mu^2+8mu+5)
    const = ZSeries.const(UPoly((7,)), 3, UPoly())
    assert mu_expansion(const) == const  # u-free series unchanged


def test_mu_divisibility_guard():
    out = solve(3, 4)
    with pytest.raises(ValueError):
        out.R.divide_by_u()  # R itself is not divisible by u (R = z + ...)


def test_symbolic_order_guard():
    with pytest.raises(ValueError):
        solve_rs(3, 61)
