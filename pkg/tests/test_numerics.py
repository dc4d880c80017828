"""Hypergeometric evaluators, radii and critical constants."""

import mpmath
import pytest
from mpmath import mpf

from forestmaps.critical import (
    cubic_a1_residual,
    cubic_beta,
    cubic_expansion_data,
    cubic_rho_at_minus_one,
    cubic_rho_closed,
    quartic_rho_exact,
    quartic_tau,
    radius,
    s_tilde_characteristic,
    s_tilde_radius_cubic,
)
from forestmaps.hyp import (
    Precision,
    phi_at_boundary,
    phi_numeric,
    phi_prime_singular_expansion,
    phi_singular_expansion,
    psi1_at_boundary,
    psi2_at_boundary,
    psi_numeric,
    self_check,
    theta_at_boundary,
    theta_singular_expansion,
)

PREC = Precision(50, 1e-20)


def test_precision_invariant():
    with pytest.raises(ValueError):
        Precision(20, 1e-20)  # needs >= 2x the implied digits


def test_boundary_values():
    with PREC.ctx():
        assert abs(phi_numeric("phi", mpf(1) / 27, PREC) - phi_at_boundary(PREC)) < mpf("1e-40")
        assert abs(phi_numeric("theta", mpf(1) / 27, PREC) - theta_at_boundary(PREC)) < mpf("1e-40")
        assert abs(psi_numeric("psi1", mpf(1) / 64, PREC) - psi1_at_boundary(PREC)) < mpf("1e-40")
        assert abs(psi_numeric("psi2", mpf(1) / 64, PREC) - psi2_at_boundary(PREC)) < mpf("1e-40")
        assert float(phi_at_boundary(PREC)) == pytest.approx(0.0089070, abs=1e-6)
        assert float(psi1_at_boundary(PREC)) == pytest.approx(0.0187566, abs=2e-6)
        assert float(psi2_at_boundary(PREC)) == pytest.approx(0.0498418, abs=2e-6)


def test_domain_guards():
    from forestmaps.exact import Q

    with pytest.raises(ValueError):
        phi_numeric("phi", 0.05, PREC)  # beyond 1/27
    with pytest.raises(ValueError):
        phi_numeric("phi_prime", Q(1, 27), PREC)  # divergent at boundary
    with pytest.raises(ValueError):
        psi_numeric("psi2_prime", Q(1, 64), PREC)


def test_series_and_boundary_methods_agree():
    assert self_check(PREC, tol=1e-12) < 1e-12


def test_singular_expansions_are_leading_order():
    # the displayed expansions carry O(eps^2 ln eps) / O(eps ln eps) errors
    with PREC.ctx():
        for eps in (1e-6, 1e-8):
            e = mpf(eps)
            a = phi_numeric("phi", mpf(1) / 27 - e, PREC, "boundary")
            assert abs(a - phi_singular_expansion(e, PREC)) < 40 * e ** 2 * abs(mpmath.log(e))
            b = phi_numeric("phi_prime", mpf(1) / 27 - e, PREC, "boundary")
            assert abs(b - phi_prime_singular_expansion(e, PREC)) < 40 * e * abs(mpmath.log(e))
            c = phi_numeric("theta", mpf(1) / 27 - e, PREC, "boundary")
            assert abs(c - theta_singular_expansion(e, PREC)) < 160 * e ** 2 * abs(mpmath.log(e))


def test_quartic_radius_values():
    with PREC.ctx():
        assert abs(quartic_rho_exact(mpf(-1), PREC)
                   - mpmath.sqrt(3) / (12 * mpmath.pi)) < mpf("1e-45")
        assert abs(quartic_rho_exact(mpf(0), PREC) - mpf(1) / 27) < mpf("1e-45")
    prof = radius(4, 1, PREC)
    assert prof.residuals["char"] < 1e-12
    assert 0 < prof.tau < 1 / 27 and prof.rho < prof.tau
    assert prof.subexp_class == "n^{-5/2}"
    assert radius(4, -0.25, PREC).subexp_class == "n^{-3}ln^{-2}n"


def test_quartic_tau_approach_rate():
    # 1/27 - tau_u ~ exp(-2 pi (1 + 1/u)/sqrt(3)) as u -> 0+
    prec = Precision(120, 1e-50)
    with prec.ctx():
        tau, _ = quartic_tau(mpf("0.1"), prec)
        gap = mpf(1) / 27 - tau
        pred = mpmath.exp(-2 * mpmath.pi * 11 / mpmath.sqrt(3))
        assert 0.5 < float(gap / pred) < 2.0


def test_cubic_radius_values():
    with PREC.ctx():
        assert abs(cubic_rho_closed(0, PREC) - mpf(1) / 64) < mpf("1e-45")
        assert abs(cubic_rho_at_minus_one(PREC) - mpmath.pi ** 2 / 384) < mpf("1e-12")
    prof = radius(3, -0.5, PREC)
    assert prof.residuals["rho_vs_phi1"] < 1e-30
    assert prof.residuals["parabola"] < 1e-30


def test_cubic_positive_u_against_coefficient_ratios():
    from forestmaps.exact import Q
    from forestmaps.fast import cubic_rs_coeffs

    prof = radius(3, 1, PREC)
    R, _ = cubic_rs_coeffs(Q(1), 260)
    r1, r2 = float(R[129] / R[130]), float(R[258] / R[259])
    assert abs(prof.rho / (2 * r2 - r1) - 1) < 0.01
    assert prof.residuals["char"] < 1e-12
    assert prof.residuals["char_via_stilde_prime"] < 1e-12


def test_radius_decreasing_grids():
    for p in (3, 4):
        rho = [radius(p, u, PREC).rho for u in (-1, -0.5, 0, 0.5, 1, 2)]
        assert all(a > b for a, b in zip(rho, rho[1:]))


def test_s_tilde_characteristic_and_continuation():
    rho_t, s_val, t_c, delta, res = s_tilde_characteristic(1, PREC)
    assert float(rho_t) == pytest.approx(0.010320, abs=2e-5)
    assert res < 1e-12
    cont = s_tilde_radius_cubic(1, PREC, series_order=60)
    assert 0.0098 <= cont["rho_tilde"] <= 0.0108
    assert cont["residual"] < 1e-12
    # truncation bias of the continuation against the closed solve
    assert cont["closed_vs_series"] < 5e-4


def test_s_tilde_radius_tends_to_1_over_64():
    vals = [float(s_tilde_characteristic(u, PREC)[0]) for u in (1, 0.5, 0.3)]
    assert vals[0] < vals[1] < vals[2] < 1 / 64


def test_cubic_delta_annihilates_a1():
    for u in (-0.25, -0.5, -0.9, -1):
        assert float(cubic_a1_residual(u, PREC)) < 1e-30


def test_cubic_beta_and_expansion_consistency():
    with PREC.ctx():
        b = cubic_beta(-0.5, PREC)
        assert float(b) == pytest.approx(-30.0184288, abs=1e-6)
        data = cubic_expansion_data(-0.5, PREC)
        assert abs(data["beta"] - data["beta_from_rs"]) < mpf("1e-30")
    with pytest.raises(ValueError):
        cubic_beta(0.5)


def test_asymptotic_constant_guards():
    from forestmaps.critical import asymptotic_constant

    with pytest.raises(ValueError):
        asymptotic_constant(3, -0.5, PREC)
    with PREC.ctx():
        c = asymptotic_constant(4, -1, PREC)
        assert float(c) == pytest.approx(0.0379954, abs=1e-6)
        c0 = asymptotic_constant(4, 0, PREC)
        assert float(c0) == pytest.approx(2 / (243 * 3 ** 0.5 * 3.14159265), rel=1e-6)
