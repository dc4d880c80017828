"""The brute-force map oracle: enumeration, Tutte data, activities."""

import random

import pytest

from forestmaps.maps import (
    CombMap,
    ScaleGuardError,
    activity_poly,
    bernardi_activities,
    enumerate_maps,
    forest_poly,
    oracle_f,
    spanning_trees,
    tutte_at_mu_1,
    tutte_poly,
)
from forestmaps.upoly import UPoly


def single_edge():
    return CombMap(2, (0, 1), (1, 0), 0)


def single_loop():
    return CombMap(2, (1, 0), (1, 0), 0)


def theta_graph():
    # two vertices joined by three parallel edges, planar
    sigma = (2, 5, 4, 1, 0, 3)
    alpha = (1, 0, 3, 2, 5, 4)
    return CombMap(6, sigma, alpha, 0)


def test_map_validation():
    with pytest.raises(ValueError):
        CombMap(2, (0, 1), (0, 1), 0)  # alpha with fixed points
    with pytest.raises(ValueError):
        CombMap(4, (1, 0, 3, 2), (1, 0, 3, 2), 0)  # two components


def test_euler_infeasible_is_empty():
    assert enumerate_maps(3, 2) == []


def test_enumerate_counts():
    assert len(enumerate_maps(3, 3)) == 4
    assert len(enumerate_maps(4, 3)) == 2


def test_scale_guard():
    with pytest.raises(ScaleGuardError):
        enumerate_maps(3, 5)
    with pytest.raises(ScaleGuardError):
        oracle_f(5, 3)


def test_forest_poly_basics():
    assert forest_poly(single_edge()) == UPoly((1, 1))  # {} and {e}
    assert forest_poly(single_loop()) == UPoly((1,))    # loops never in forests
    assert forest_poly(theta_graph()) == UPoly((3, 1))


def test_tutte_values():
    assert tutte_poly(single_edge()) == {(1, 0): 1}          # mu
    assert tutte_poly(single_loop()) == {(0, 1): 1}          # nu
    assert tutte_poly(theta_graph()) == {(1, 0): 1, (0, 1): 1, (0, 2): 1}


def test_forest_poly_is_tutte_at_nu_1():
    for m in enumerate_maps(3, 3) + enumerate_maps(4, 3):
        assert forest_poly(m) == tutte_at_mu_1(m)


def test_bernardi_small_cases():
    assert bernardi_activities(single_edge(), frozenset({0})) == (1, 0)
    assert bernardi_activities(single_loop(), frozenset()) == (0, 1)
    with pytest.raises(ValueError):
        bernardi_activities(single_edge(), frozenset())  # not spanning


def test_bernardi_sums_to_tutte():
    assert activity_poly(theta_graph()) == tutte_poly(theta_graph())
    for m in enumerate_maps(3, 3) + enumerate_maps(4, 3) + enumerate_maps(4, 4):
        assert activity_poly(m) == tutte_poly(m)


def test_theta_graph_has_three_spanning_trees():
    assert len(spanning_trees(theta_graph())) == 3


def test_canonical_dedup_is_labeling_invariant():
    # relabel darts of every enumerated map by a random permutation and
    # check the canonical form is unchanged
    rng = random.Random(5)
    for m in enumerate_maps(4, 3) + enumerate_maps(3, 3):
        perm = list(range(m.n_darts))
        rng.shuffle(perm)
        sigma = [0] * m.n_darts
        alpha = [0] * m.n_darts
        for d in range(m.n_darts):
            sigma[perm[d]] = perm[m.sigma[d]]
            alpha[perm[d]] = perm[m.alpha[d]]
        relabeled = CombMap(m.n_darts, tuple(sigma), tuple(alpha), perm[m.root_dart])
        c1, c2 = m.canonical(), relabeled.canonical()
        assert (c1.sigma, c1.alpha) == (c2.sigma, c2.alpha)


def test_oracle_values():
    assert oracle_f(3, 3) == UPoly((6, 4))
    assert oracle_f(3, 3, "tree_rooted_activity") == UPoly((6, 4))
    assert oracle_f(3, 3, "root_edge_outside") == UPoly((4, 4))
    assert oracle_f(4, 3) == UPoly((2,))
    assert oracle_f(4, 4) == UPoly((20, 9))
    assert oracle_f(4, 4, "root_edge_outside") == UPoly((15, 9))


def test_map_json_roundtrip():
    m = theta_graph()
    again = CombMap.from_json(m.to_json())
    assert (again.sigma, again.alpha, again.root_dart) == (m.sigma, m.alpha, 0)


def test_genus_and_faces():
    m = theta_graph()
    assert m.genus() == 0
    assert m.n_faces() == 3
