"""High-order engines against the sweep solver and each other."""

import numpy as np
import pytest

from forestmaps.exact import Q
from forestmaps.fast import (
    cubic_fprime_coeffs,
    cubic_fprime_float,
    cubic_rs_coeffs,
    cubic_rs_float,
    quartic_fseries_float,
    quartic_r_coeffs,
    quartic_r_float,
    quartic_series,
)
from forestmaps.solver import series_f, solve_rs
from forestmaps.upoly import UPoly


@pytest.mark.parametrize("u", [Q(1), Q(-1, 2), Q(7, 5)])
def test_quartic_recurrence_matches_sweep(u):
    R = quartic_r_coeffs(u, 14)
    Rs, _ = solve_rs(4, 14, u)
    assert all(R[i] == Rs.coeff(i) for i in range(15))


@pytest.mark.parametrize("u", [Q(1), Q(-1, 2), Q(3)])
def test_cubic_recurrence_matches_sweep(u):
    R, S = cubic_rs_coeffs(u, 12)
    Rs, Ss = solve_rs(3, 12, u)
    assert all(R[i] == Rs.coeff(i) for i in range(13))
    assert all(S[i] == Ss.coeff(i) for i in range(13))


def test_quartic_bundle_matches_solver():
    u = Q(-1, 2)
    ser = quartic_series(u, 12)
    f, fp = series_f(4, 12, u)
    assert all(ser["f"][i] == f.coeff(i) for i in range(13))
    assert all(ser["fprime"][i] == fp.coeff(i) for i in range(12))


def test_quartic_fzu_matches_symbolic_derivative():
    # d/du of the symbolic coefficients, specialized, is the second route
    fp = series_f(4, 10)[1]
    dudiff = fp.map_coeffs(
        lambda c: UPoly([c.coeffs[k] * k for k in range(1, len(c.coeffs))])
        if c.coeffs else c
    )
    for u in (Q(1), Q(2, 3)):
        fzu = quartic_series(u, 11)["fzu"]
        spec = dudiff.specialize_u(u)
        assert all(spec.coeff(i) == fzu[i] for i in range(10))


def test_cubic_fprime_matches_solver():
    u = Q(1)
    fpl = cubic_fprime_coeffs(u, 12)
    _, fp = series_f(3, 12, u)
    assert all(fpl[i] == fp.coeff(i) for i in range(12))


def test_u_zero_paths():
    R = quartic_r_coeffs(Q(0), 8)
    assert R[1] == 1 and all(R[i] == 0 for i in (0, 2, 3, 4))
    ser = quartic_series(Q(0), 8)
    f0, _ = series_f(4, 8, 0)
    assert all(ser["f"][i] == f0.coeff(i) for i in range(9))
    fpl = cubic_fprime_coeffs(Q(0), 8)
    _, fp0 = series_f(3, 8, 0)
    assert all(fpl[i] == fp0.coeff(i) for i in range(9))


def _spectral_compare(float_arr, exact_list, scale, lo, hi):
    worst = 0.0
    for i in range(lo, hi):
        ex = float(Q(exact_list[i])) * scale ** i
        if ex:
            worst = max(worst, abs(float_arr[i] - ex) / abs(ex))
    return worst


def test_float_engines_track_exact_prefix():
    s = 0.0414
    assert _spectral_compare(
        quartic_r_float(-0.5, 80, s), quartic_r_coeffs(Q(-1, 2), 80), s, 1, 81
    ) < 1e-11
    bun = quartic_fseries_float(-0.5, 80, s)
    fe = quartic_series(Q(-1, 2), 80)
    assert _spectral_compare(bun["fprime"], fe["fprime"], s, 3, 79) < 1e-10
    s3 = 0.02
    Rf, Sf = cubic_rs_float(-0.5, 60, s3)
    Re, Se = cubic_rs_coeffs(Q(-1, 2), 60)
    assert _spectral_compare(Rf, Re, s3, 1, 61) < 1e-11
    assert _spectral_compare(Sf, Se, s3, 1, 61) < 1e-11
    fpf = cubic_fprime_float(-0.5, 60, s3)
    fpe = cubic_fprime_coeffs(Q(-1, 2), 60)
    assert _spectral_compare(fpf, fpe, s3, 2, 61) < 1e-10
