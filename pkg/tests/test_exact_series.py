"""Exact arithmetic layer: polynomials in u and truncated series in z."""

import random

import pytest

from forestmaps.exact import Q, rat_from_str, rat_to_str
from forestmaps.series import ZSeries, series_arith, series_calculus, series_compose
from forestmaps.upoly import UP_U, UPoly


def rand_upoly(rng, deg=3):
    return UPoly([Q(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(deg + 1)])


def rand_series(rng, order=5, zero_const=False):
    coeffs = [rand_upoly(rng) for _ in range(order + 1)]
    if zero_const:
        coeffs[0] = UPoly()
    return ZSeries(coeffs, order)


def test_rational_serialization_roundtrip():
    for s in ("3", "-7/3", "0", "1/2"):
        assert rat_to_str(rat_from_str(s)) == s
    assert rat_to_str(Q(10, 4)) == "5/2"


def test_upoly_canonical_and_degree():
    assert UPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert UPoly().degree is None
    assert UPoly((0,)).degree is None
    assert UPoly((5,)).degree == 0
    assert UP_U.degree == 1


def test_upoly_mu_roundtrip_and_division():
    rng = random.Random(7)
    for _ in range(30):
        p = rand_upoly(rng, 5)
        assert p.to_mu().from_mu() == p
    assert UPoly((0, 0, 3)).divide_by_u(2) == UPoly((3,))
    with pytest.raises(ValueError):
        UPoly((1, 2)).divide_by_u()


def test_ring_axioms_on_random_series():
    rng = random.Random(42)
    for _ in range(10):
        a, b, c = (rand_series(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a - a == ZSeries.zero(a.order, UPoly())


def test_monomial_products():
    z = ZSeries.z(4)
    assert (z * z).coeff(2) == 1 and (z * z).coeff(3) == 0
    one_plus = ZSeries([Q(1), Q(1)], 4)
    one_minus = ZSeries([Q(1), Q(-1)], 4)
    prod = series_arith(one_plus, one_minus, "mul")
    assert prod.coeff(0) == 1 and prod.coeff(1) == 0 and prod.coeff(2) == -1


def test_truncation_is_min_of_operands():
    a = ZSeries([Q(1)] * 7, 6)
    b = ZSeries([Q(1)] * 4, 3)
    assert (a * b).order == 3
    assert (a + b).order == 3
    with pytest.raises(ValueError):
        b.truncate(5)


def test_compose_basics():
    inner = ZSeries([Q(0), Q(1), Q(1)], 4)  # z + z^2
    sq = series_compose([Q(0), Q(0), Q(1)], inner)  # x^2
    assert [sq.coeff(i) for i in range(5)] == [0, 0, 1, 2, 1]
    ident = series_compose([Q(0), Q(1)], inner)
    assert ident == inner
    const = ZSeries([Q(1), Q(1)], 3)
    with pytest.raises(ValueError):
        series_compose([Q(0), Q(1)], const)


def test_compose_associativity():
    # compose(f, compose(g, h)) == compose(compose(f, g) as coefficients, h)
    rng = random.Random(3)
    for _ in range(6):
        f = rand_series(rng, 5)
        g = rand_series(rng, 5, zero_const=True)
        h = rand_series(rng, 5, zero_const=True)
        gh = h.compose_outer(list(g.coeffs))
        left = gh.compose_outer(list(f.coeffs))
        fg = g.compose_outer(list(f.coeffs))
        right = h.compose_outer(list(fg.coeffs))
        assert left == right


def test_phi_self_product_against_termwise_expansion():
    # (3x^2 + 30x^3 + 420x^4)^2 starts 9x^4 + 180x^5 + ... ; compare the
    # generic convolution against an independent term-by-term expansion
    from forestmaps.trees import phi_theta_tables

    phi = ZSeries(phi_theta_tables(4, 8)["phi_x"], 8)
    prod = phi * phi
    coeffs = phi_theta_tables(4, 8)["phi_x"]
    for n in range(9):
        direct = sum(coeffs[i] * coeffs[n - i] for i in range(n + 1))
        assert prod.coeff(n) == direct
    assert prod.coeff(4) == 9


def test_phi_composed_with_r():
    # [z^2] Phi(R) = 3, [z^3] Phi(R) = 18u + 30 for the quartic system
    from forestmaps.solver import solve_rs
    from forestmaps.trees import phi_theta_tables

    R, _ = solve_rs(4, 3)
    comp = R.compose_outer(
        [UPoly((c,)) for c in phi_theta_tables(4, 3)["phi_x"]]
    )
    assert comp.coeff(2) == UPoly((3,))
    assert comp.coeff(3) == UPoly((30, 18))


def test_calculus_shift_and_scale():
    z = ZSeries.z(5)
    z3 = z * z * z
    assert series_calculus(z3, "differentiate").coeff(2) == 3
    six_z2 = ZSeries([Q(0), Q(0), Q(6)], 5)
    assert series_calculus(six_z2, "integrate").coeff(3) == 2
    s = ZSeries([Q(0), Q(2), Q(-5), Q(7)], 3)
    assert series_calculus(series_calculus(s, "integrate"), "differentiate") == s


def test_integrate_differentiate_order_bookkeeping():
    s = ZSeries([Q(1)] * 5, 4)
    assert s.differentiate().order == 3
    assert s.integrate().order == 5


def test_series_json_shapes():
    s = ZSeries([UPoly((1, 2)), UPoly()], 1)
    doc = s.to_json()
    assert doc["order"] == 1
    assert doc["coeffs"][0] == ["1", "2"]
    t = ZSeries([Q(1, 3), Q(2)], 1)
    assert t.to_json()["coeffs"] == ["1/3", "2"]


def test_specialize_commutes_with_arithmetic():
    rng = random.Random(11)
    u0 = Q(5, 7)
    for _ in range(8):
        a, b = rand_series(rng), rand_series(rng)
        assert (a * b).specialize_u(u0) == a.specialize_u(u0) * b.specialize_u(u0)
        assert (a + b).specialize_u(u0) == a.specialize_u(u0) + b.specialize_u(u0)


def test_divide_by_u_detects_remainder():
    s = ZSeries([UPoly(), UPoly((0, 2)), UPoly((1,))], 2)
    with pytest.raises(ValueError):
        s.divide_by_u()
    ok = ZSeries([UPoly(), UPoly((0, 2)), UPoly((0, 0, 3))], 2)
    assert ok.divide_by_u().coeff(2) == UPoly((0, 3))
