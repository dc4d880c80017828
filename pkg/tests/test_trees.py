"""Tree counts and the series built from them."""

import pytest

from forestmaps.exact import Q
from forestmaps.trees import (
    biv_add,
    biv_mul,
    biv_scale,
    enumerate_tree_count,
    lambda_series,
    phi_from_psi,
    phi_theta_tables,
    psi_series,
    quartic_mullin_coeff,
    tree_count,
)


def test_closed_counts_match_exhaustive_enumeration():
    for p in (3, 4, 5):
        for k in range(1, 9):
            for kind in ("leaf_rooted", "corner_rooted"):
                assert tree_count(p, k, kind) == enumerate_tree_count(p, k, kind), (
                    p, k, kind)


def test_small_values():
    assert tree_count(3, 3) == 1  # the claw
    assert tree_count(3, 4) == 2
    assert tree_count(4, 3) == 0  # parity: k must be even for p=4
    with pytest.raises(ValueError):
        tree_count(2, 3)


def test_quartic_univariate_series():
    tabs = phi_theta_tables(4, 4)
    assert tabs["phi_x"][2:5] == [3, 30, 420]
    assert tabs["theta_x"][2:4] == [6, 80]


def test_even_p_phi2_carries_y():
    for p in (4, 6):
        tabs = phi_theta_tables(p, 8)
        assert all(j >= 1 for (_i, j) in tabs["phi2"])


def test_cubic_theta_decomposition():
    order = 10
    tabs = phi_theta_tables(3, order)
    rhs = biv_add(
        biv_scale(tabs["phi1"], Q(-2)),
        biv_mul({(0, 0): Q(1), (0, 1): Q(-1)}, tabs["phi2"], order),
    )
    rhs = biv_add(rhs, {(1, 0): Q(-2), (0, 2): Q(-1)})
    assert biv_add(tabs["theta"], biv_scale(rhs, Q(-1))) == {}


def test_psi_reductions_match_raw_tables():
    order = 6
    tabs = phi_theta_tables(3, order)
    for which, key in ((1, "phi1"), (2, "phi2")):
        red = phi_from_psi(which, order)
        assert biv_add(red, biv_scale(tabs[key], Q(-1))) == {}


def test_psi_leading_coefficients():
    ps = psi_series(3)
    assert ps["psi1"][1] == 1 and ps["psi1"][2] == 6
    assert ps["psi2"][1] == 2 and ps["psi2"][2] == 30


def test_lambda_series_start():
    lam = lambda_series(5)
    assert lam[:6] == [0, 0, 0, 1, 15, 252]


def test_mullin_coefficients():
    assert quartic_mullin_coeff(4, 3) == 2
    assert quartic_mullin_coeff(4, 4) == 20
    assert quartic_mullin_coeff(3, 3) == 6
    assert quartic_mullin_coeff(3, 4) == 140
    # p=6 comes in steps of 2 in n; n=4 is one vertex with three loops,
    # i.e. the 5 rooted planar one-vertex maps with 3 edges
    assert quartic_mullin_coeff(6, 4) == 5
    assert quartic_mullin_coeff(6, 5) == 0
