"""Counts of p-valent plane trees and the series built from them.

The closed-form counts (leaf-rooted and corner-rooted trees by number of
leaves) feed three families of truncated series:

* the bivariate tables theta, Phi1, Phi2 consumed by the implicit solver,
* their univariate specializations theta(x), Phi(x) when p is even,
* the univariate cubic-case reductions Psi1, Psi2 and the quartic-case
  integral Lambda.

Everything here is exact integer/rational arithmetic; no floating point.
Bivariate tables are plain dicts {(i, j): coefficient} truncated by total
degree i + j <= order, which is what an order-correct substitution of two
valuation->=1 series requires.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Tuple

from .exact import Q, QZERO, binomial_q, factorial_q, trinomial_q

Biv = Dict[Tuple[int, int], object]


# ---------------------------------------------------------------------------
# closed-form tree counts
# ---------------------------------------------------------------------------

def tree_count(p: int, k: int, kind: str = "leaf_rooted"):
    """Number of p-valent trees with k leaves, rooted at a leaf or a corner.

    Returns 0 unless k = (p-2)*l + 2 for some l >= 1 (parity/size constraint
    of p-valent trees).  Corner-rooted means a marked corner at an internal
    (p-valent) vertex.
    """
    if p < 3:
        raise ValueError("need p >= 3")
    if k < 1:
        raise ValueError("need k >= 1")
    if (k - 2) % (p - 2) != 0:
        return QZERO
    ell = (k - 2) // (p - 2)
    if ell < 1:
        return QZERO
    if kind == "leaf_rooted":
        return factorial_q((p - 1) * ell) / (
            factorial_q(ell) * factorial_q((p - 2) * ell + 1)
        )
    if kind == "corner_rooted":
        return (
            p
            * factorial_q((p - 1) * ell)
            / (factorial_q(ell - 1) * factorial_q((p - 2) * ell + 2))
        )
    raise ValueError("kind must be leaf_rooted or corner_rooted")


class TreeCountTable:
    """Tabulated t_k / t^c_k for one valency p."""

    def __init__(self, p: int, k_max: int):
        self.p = p
        self.t = {k: tree_count(p, k, "leaf_rooted") for k in range(1, k_max + 1)}
        self.tc = {k: tree_count(p, k, "corner_rooted") for k in range(1, k_max + 1)}


# ---------------------------------------------------------------------------
# independent oracle: exhaustive plane-tree counting
# ---------------------------------------------------------------------------

def enumerate_tree_count(p: int, k: int, kind: str = "leaf_rooted") -> int:
    """Count p-valent plane trees with k leaves by direct recursion.

    A hanging subtree is a bare leaf or an internal vertex carrying p-1
    ordered hanging subtrees.  A leaf-rooted tree is a root leaf over one
    internal vertex (p-1 ordered children); a corner-rooted tree is an
    internal vertex with p ordered children (the marked corner linearizes
    the cyclic order).  This recursion is the ground truth for
    :func:`tree_count`.
    """

    @lru_cache(maxsize=None)
    def hanging(m: int) -> int:
        # number of hanging subtrees with m leaves
        if m < 1:
            return 0
        base = 1 if m == 1 else 0
        return base + ordered(p - 1, m)

    @lru_cache(maxsize=None)
    def ordered(r: int, m: int) -> int:
        # ordered r-tuples of hanging subtrees with m leaves in total
        if r == 0:
            return 1 if m == 0 else 0
        total = 0
        for first in range(1, m - r + 2):
            total += hanging(first) * ordered(r - 1, m - first)
        return total

    if kind == "leaf_rooted":
        return ordered(p - 1, k - 1)
    if kind == "corner_rooted":
        return ordered(p, k)
    raise ValueError("kind must be leaf_rooted or corner_rooted")


# ---------------------------------------------------------------------------
# bivariate tables
# ---------------------------------------------------------------------------

def phi_theta_tables(p: int, order: int) -> dict:
    """Truncated tables for theta, Phi1, Phi2 (total degree <= order).

    theta(x,y) = sum t^c_{2i+j} * trinomial(i,i,j) x^i y^j
    Phi1(x,y)  = sum_{i>=1} t_{2i+j} * trinomial(i-1,i,j) x^i y^j
    Phi2(x,y)  = sum t_{2i+j+1} * trinomial(i,i,j) x^i y^j

    For even p every Phi2 entry carries a positive y-power (t_odd = 0), so
    the solver's second unknown vanishes; the univariate specializations
    theta(x) = theta(x,0), Phi(x) = Phi1(x,0) are returned as coefficient
    lists as well.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    theta: Biv = {}
    phi1: Biv = {}
    phi2: Biv = {}
    for i in range(order + 1):
        for j in range(order + 1 - i):
            c = tree_count(p, 2 * i + j, "corner_rooted") if 2 * i + j >= 1 else QZERO
            if c:
                theta[(i, j)] = c * trinomial_q(i, i, j)
            if i >= 1:
                c = tree_count(p, 2 * i + j, "leaf_rooted")
                if c:
                    phi1[(i, j)] = c * trinomial_q(i - 1, i, j)
            c = tree_count(p, 2 * i + j + 1, "leaf_rooted")
            if c:
                phi2[(i, j)] = c * trinomial_q(i, i, j)
    out = {"p": p, "order": order, "theta": theta, "phi1": phi1, "phi2": phi2}
    if p % 2 == 0:
        out["theta_x"] = [theta.get((i, 0), QZERO) for i in range(order + 1)]
        out["phi_x"] = [phi1.get((i, 0), QZERO) for i in range(order + 1)]
    return out


def g_inner_table(p: int, order: int) -> Biv:
    """Table sum_{i>=2} t_{2i+j-1} * trinomial(i-2,i,j) x^i y^j.

    This is the double sum in the closed expression of the leaf-rooted map
    series G; it also enters H.
    """
    out: Biv = {}
    for i in range(2, order + 1):
        for j in range(order + 1 - i):
            c = tree_count(p, 2 * i + j - 1, "leaf_rooted")
            if c:
                out[(i, j)] = c * trinomial_q(i - 2, i, j)
    return out


def h_inner_table(p: int, order: int) -> Biv:
    """Table sum_{i>=3} t_{2i+j-2} * trinomial(i-3,i,j) x^i y^j (enters H)."""
    out: Biv = {}
    for i in range(3, order + 1):
        for j in range(order + 1 - i):
            c = tree_count(p, 2 * i + j - 2, "leaf_rooted")
            if c:
                out[(i, j)] = c * trinomial_q(i - 3, i, j)
    return out


# ---------------------------------------------------------------------------
# univariate series for the cubic and quartic reductions
# ---------------------------------------------------------------------------

def psi_series(order: int) -> dict:
    """Coefficient lists of Psi1 and Psi2 (cubic case) through z^order.

    Psi1(z) = sum_{i>=1} (4i-4)! / ((2i-2)! i! (i-1)!) z^i
    Psi2(z) = sum_{i>=1} (4i-2)! / ((2i-1)! i!^2)      z^i
    """
    psi1 = [QZERO] * (order + 1)
    psi2 = [QZERO] * (order + 1)
    for i in range(1, order + 1):
        psi1[i] = factorial_q(4 * i - 4) / (
            factorial_q(2 * i - 2) * factorial_q(i) * factorial_q(i - 1)
        )
        psi2[i] = factorial_q(4 * i - 2) / (factorial_q(2 * i - 1) * factorial_q(i) ** 2)
    return {"psi1": psi1, "psi2": psi2}


def lambda_series(order: int):
    """Lambda(x) = sum_{i>=3} (3i-6)! / ((i-3)! (i-2)! i!) x^i (quartic case)."""
    lam = [QZERO] * (order + 1)
    for i in range(3, order + 1):
        lam[i] = factorial_q(3 * i - 6) / (
            factorial_q(i - 3) * factorial_q(i - 2) * factorial_q(i)
        )
    return lam


def quartic_mullin_coeff(p: int, n: int):
    """[z^n] of the spanning-tree specialization F(z, 0), any p >= 3.

    F(z,0) = sum_l p ((p-1)l)! / ((l-1)! (1+(p-2)l/2)! (2+(p-2)l/2)!)
             z^{2+(p-2)l/2},  l even when p is odd.
    """
    if n < 3:
        return QZERO
    # n = 2 + (p-2) l / 2  =>  l = 2 (n-2) / (p-2)
    num = 2 * (n - 2)
    if num % (p - 2) != 0:
        return QZERO
    ell = num // (p - 2)
    if ell < 1 or (p % 2 == 1 and ell % 2 == 1):
        return QZERO
    half = (p - 2) * ell // 2
    return (
        p
        * factorial_q((p - 1) * ell)
        / (factorial_q(ell - 1) * factorial_q(1 + half) * factorial_q(2 + half))
    )


# ---------------------------------------------------------------------------
# bivariate dict helpers (exact, truncated by total degree)
# ---------------------------------------------------------------------------

def biv_add(a: Biv, b: Biv) -> Biv:
    out = dict(a)
    for key, c in b.items():
        out[key] = out.get(key, QZERO) + c
        if out[key] == 0:
            del out[key]
    return out


def biv_scale(a: Biv, s) -> Biv:
    return {key: c * s for key, c in a.items() if c * s != 0}


def biv_mul(a: Biv, b: Biv, order: int) -> Biv:
    out: Biv = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            i, j = i1 + i2, j1 + j2
            if i + j <= order:
                key = (i, j)
                out[key] = out.get(key, QZERO) + c1 * c2
    return {k: c for k, c in out.items() if c != 0}


def sqrt_one_minus_4y(order: int, power: int = 1):
    """Coefficient list in y of (1-4y)^(power/2), exact binomial expansion."""
    # (1-4y)^(1/2): c_0 = 1, c_{n} = c_{n-1} * (-4) * (1/2 - (n-1)) / n
    half = [Q(1)]
    for n in range(1, order + 1):
        half.append(half[-1] * Q(-4) * (Q(1, 2) - (n - 1)) / n)
    if power % 2 == 0:
        # integer powers handled exactly via binomial theorem
        out = [QZERO] * (order + 1)
        m = power // 2
        if m >= 0:
            for n in range(min(order, m) + 1):
                out[n] = binomial_q(m, n) * Q(-4) ** n
        else:
            for n in range(order + 1):
                out[n] = binomial_q(-m + n - 1, n) * Q(4) ** n
        return out
    # odd power: (1-4y)^(k + 1/2) = (1-4y)^k * (1-4y)^(1/2)
    k = (power - 1) // 2
    base = sqrt_one_minus_4y(order, 2 * k)
    out = [QZERO] * (order + 1)
    for a, ca in enumerate(base):
        if ca == 0:
            continue
        for b in range(order + 1 - a):
            out[a + b] += ca * half[b]
    return out


def phi_from_psi(which: int, order: int) -> Biv:
    """Bivariate expansion of the Psi-reductions of Phi1 / Phi2.

    which=1:  (1-4y)^(3/2) Psi1(t) - x,          t = x/(1-4y)^2
    which=2:  (1-4y)^(1/2) Psi2(t) + ((1-sqrt(1-4y))/2)^2

    Used to confirm that the reductions agree with the raw doubly
    hypergeometric tables through the truncation order.
    """
    psis = psi_series(order)
    psi = psis["psi1"] if which == 1 else psis["psi2"]
    pref = sqrt_one_minus_4y(order, 3 if which == 1 else 1)
    out: Biv = {}
    # prefactor(y) * sum_k psi_k x^k (1-4y)^{-2k}
    for k in range(1, order + 1):
        ck = psi[k]
        if ck == 0:
            continue
        inv = sqrt_one_minus_4y(order - k, -4 * k)  # (1-4y)^{-2k}
        for a, ca in enumerate(inv):
            for b, cb in enumerate(pref):
                j = a + b
                if k + j <= order and ca != 0 and cb != 0:
                    key = (k, j)
                    out[key] = out.get(key, QZERO) + ck * ca * cb
    if which == 1:
        out[(1, 0)] = out.get((1, 0), QZERO) - 1
    else:
        # ((1 - sqrt(1-4y)) / 2)^2 = (1 - 2 sqrt(1-4y) + (1-4y)) / 4
        half = sqrt_one_minus_4y(order, 1)
        quarter = [(Q(1) if n == 0 else QZERO) - 2 * half[n] for n in range(order + 1)]
        quarter[0] += Q(1)
        if order >= 1:
            quarter[1] += Q(-4)
        for n in range(order + 1):
            c = quarter[n] / 4
            if c != 0:
                key = (0, n)
                out[key] = out.get(key, QZERO) + c
    return {k: c for k, c in out.items() if c != 0}
