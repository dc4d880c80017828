"""Truncated power series in z with exact coefficients.

A :class:`ZSeries` is a tuple of coefficients for z^0 .. z^order together
with the truncation order.  Coefficients are either exact rationals
(specialized-u mode) or :class:`~forestmaps.upoly.UPoly` values (symbolic-u
mode); the two modes share this one implementation.  Truncation bookkeeping
is explicit: every binary operation returns a series truncated at the
minimum of the operand orders, and nothing ever silently extends an order.

All values are immutable after construction and operations are pure, so
series can be shared freely across threads.
"""

from __future__ import annotations

from typing import Callable, Iterable, List, Optional, Sequence

from .exact import Q, QZERO, rat_to_str
from .upoly import UPoly


class ZSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: Optional[int] = None, zero=QZERO):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if len(coeffs) < order + 1:
            coeffs.extend([zero] * (order + 1 - len(coeffs)))
        elif len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        self.coeffs = tuple(coeffs)
        self.order = order

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(order: int, zero=QZERO) -> "ZSeries":
        return ZSeries([zero] * (order + 1), order, zero)

    @staticmethod
    def const(value, order: int, zero=QZERO) -> "ZSeries":
        s = ZSeries.zero(order, zero)
        return ZSeries([value] + list(s.coeffs[1:]), order, zero)

    @staticmethod
    def z(order: int, zero=QZERO, one=None) -> "ZSeries":
        """The series z, truncated at `order` (requires order >= 1)."""
        if order < 1:
            raise ValueError("order must be >= 1 to represent z")
        s = [zero] * (order + 1)
        s[1] = one if one is not None else zero + 1
        return ZSeries(s, order, zero)

    # -- bookkeeping -------------------------------------------------------

    @property
    def zero_coeff(self):
        return self.coeffs[0] * 0

    def coeff(self, n: int):
        """Coefficient of z^n; raises beyond the valid truncation order."""
        if n < 0:
            raise IndexError("negative z-power")
        if n > self.order:
            raise IndexError(
                "coefficient %d requested beyond truncation order %d" % (n, self.order)
            )
        return self.coeffs[n]

    def truncate(self, order: int) -> "ZSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series (|%d| > |%d|)" % (order, self.order))
        return ZSeries(self.coeffs[: order + 1], order)

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero coefficient, or None if all vanish."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __eq__(self, other) -> bool:
        """Exact equality through the shorter of the two orders."""
        if not isinstance(other, ZSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(_eq(self.coeffs[i], other.coeffs[i]) for i in range(n + 1))

    def __hash__(self):  # pragma: no cover
        return hash((self.coeffs, self.order))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "ZSeries") -> "ZSeries":
        n = min(self.order, other.order)
        return ZSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        n = min(self.order, other.order)
        return ZSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __neg__(self) -> "ZSeries":
        return ZSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other: "ZSeries") -> "ZSeries":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        va = self.valuation()
        vb = other.valuation()
        if va is None or vb is None:
            return ZSeries.zero(n, self.zero_coeff)
        out = [self.zero_coeff] * (n + 1)
        for i in range(va, min(len(a), n + 1)):
            ca = a[i]
            if _is_zero(ca):
                continue
            for j in range(vb, n - i + 1):
                cb = b[j]
                if not _is_zero(cb):
                    out[i + j] = out[i + j] + ca * cb
        return ZSeries(out, n)

    def scale(self, scalar) -> "ZSeries":
        """Multiply every coefficient by a scalar (rational or UPoly)."""
        return ZSeries([c * scalar for c in self.coeffs], self.order)

    def shift_z(self, k: int) -> "ZSeries":
        """Multiply by z^k; the order bookkeeping keeps the same window."""
        if k < 0:
            v = self.valuation()
            if v is not None and v < -k:
                raise ValueError("series is not divisible by z^%d" % (-k))
            return ZSeries(list(self.coeffs[-k:]), self.order + k)
        return ZSeries([self.zero_coeff] * k + list(self.coeffs), self.order)

    # -- calculus ----------------------------------------------------------

    def differentiate(self) -> "ZSeries":
        """d/dz; the result is valid one order lower."""
        if self.order == 0:
            raise ValueError("cannot differentiate a series known only at order 0")
        return ZSeries(
            [self.coeffs[i] * i for i in range(1, self.order + 1)], self.order - 1
        )

    def integrate(self) -> "ZSeries":
        """Antiderivative with zero constant term, valid one order higher."""
        out = [self.zero_coeff]
        for i, c in enumerate(self.coeffs):
            out.append(c * Q(1, i + 1))
        return ZSeries(out, self.order + 1)

    # -- composition and inversion ------------------------------------------

    def compose_outer(self, outer_coeffs: Sequence) -> "ZSeries":
        """Evaluate sum_k outer_coeffs[k] * self**k by Horner.

        `self` must have zero constant term, otherwise the composition is
        not well defined on truncations.
        """
        v = self.valuation()
        if v == 0:
            raise ValueError("composition requires a series with zero constant term")
        n = self.order
        top = min(len(outer_coeffs) - 1, n if v else len(outer_coeffs) - 1)
        acc = ZSeries.zero(n, self.zero_coeff)
        for k in range(top, -1, -1):
            acc = acc * self
            ck = outer_coeffs[k]
            if not _is_zero_scalar(ck):
                acc = acc + ZSeries.const(_promote(ck, self.zero_coeff), n, self.zero_coeff)
        return acc

    def reciprocal(self) -> "ZSeries":
        """1/self for a series with invertible (unit) constant term."""
        c0 = self.coeffs[0]
        if _is_zero(c0):
            raise ValueError("series with zero constant term has no reciprocal")
        if isinstance(c0, UPoly):
            if c0.degree != 0:
                raise ValueError("constant term must be a unit (degree-0) to invert")
            inv0 = UPoly((Q(1) / c0.coeffs[0],))
        else:
            inv0 = Q(1) / c0
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = self.zero_coeff
            for k in range(1, n + 1):
                ck = self.coeffs[k]
                if not _is_zero(ck):
                    acc = acc + ck * out[n - k]
            out.append(-(acc * inv0))
        return ZSeries(out, self.order)

    def pow_int(self, n: int) -> "ZSeries":
        if n < 0:
            raise ValueError("negative series power")
        acc = ZSeries.const(self.zero_coeff + 1, self.order, self.zero_coeff)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def divide(self, other: "ZSeries") -> "ZSeries":
        """self/other, allowing a common z-valuation to cancel exactly."""
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by the zero series")
        if v == 0:
            return self * other.reciprocal()
        num = self.shift_z(-v)
        den = other.shift_z(-v)
        return num * den.reciprocal()

    # -- u-specific operations (symbolic mode) -------------------------------

    def divide_by_u(self, power: int = 1) -> "ZSeries":
        """Exact coefficient-wise division by u**power; error on remainder."""
        out = []
        for i, c in enumerate(self.coeffs):
            if not isinstance(c, UPoly):
                raise TypeError("divide_by_u needs symbolic (UPoly) coefficients")
            try:
                out.append(c.divide_by_u(power))
            except ValueError as exc:
                raise ValueError("coefficient of z^%d: %s" % (i, exc)) from None
        return ZSeries(out, self.order)

    def mul_u(self, power: int = 1) -> "ZSeries":
        up = UPoly.u(power)
        return ZSeries([_as_upoly(c) * up for c in self.coeffs], self.order)

    def specialize_u(self, value) -> "ZSeries":
        """Evaluate every UPoly coefficient at an exact rational u."""
        out = []
        for c in self.coeffs:
            out.append(c.eval_at(value) if isinstance(c, UPoly) else c)
        return ZSeries(out, self.order)

    def to_mu(self) -> "ZSeries":
        """Re-express u-polynomial coefficients in mu = u + 1."""
        return ZSeries([_as_upoly(c).to_mu() for c in self.coeffs], self.order)

    def map_coeffs(self, fn: Callable) -> "ZSeries":
        return ZSeries([fn(c) for c in self.coeffs], self.order)

    def as_symbolic(self) -> "ZSeries":
        return ZSeries([_as_upoly(c) for c in self.coeffs], self.order, UPoly())

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        """{"order": N, "coeffs": [[...u-poly strings...] or "p/q", ...]}."""
        coeffs = []
        for c in self.coeffs:
            if isinstance(c, UPoly):
                coeffs.append(c.to_strs())
            else:
                coeffs.append(rat_to_str(c))
        return {"order": self.order, "coeffs": coeffs}

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            cs = str(c)
            if isinstance(c, UPoly) and c.degree not in (None, 0):
                cs = "(%s)" % cs
            parts.append("%s*z^%d" % (cs, i))
        body = " + ".join(parts) if parts else "0"
        return "%s + O(z^%d)" % (body, self.order + 1)

    __repr__ = __str__


def _is_zero(c) -> bool:
    if isinstance(c, UPoly):
        return c.is_zero()
    return c == 0


def _is_zero_scalar(c) -> bool:
    return _is_zero(c)


def _eq(a, b) -> bool:
    if isinstance(a, UPoly) or isinstance(b, UPoly):
        ua = a if isinstance(a, UPoly) else UPoly((a,))
        return ua == (b if isinstance(b, UPoly) else UPoly((b,)))
    return a == b


def _as_upoly(c) -> UPoly:
    return c if isinstance(c, UPoly) else UPoly((c,))


def _promote(scalar, zero):
    """Lift a rational scalar into the coefficient domain of `zero`."""
    if isinstance(zero, UPoly) and not isinstance(scalar, UPoly):
        return UPoly((scalar,))
    return scalar


def series_arith(a: ZSeries, b: ZSeries, op: str) -> ZSeries:
    """Named entry point for the ring operations (add, sub, mul)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown series operation %r" % op)


def series_compose(outer_coeffs: Sequence, inner: ZSeries) -> ZSeries:
    """Compose a univariate coefficient list with an inner series."""
    return inner.compose_outer(outer_coeffs)


def series_calculus(s: ZSeries, op: str) -> ZSeries:
    if op == "differentiate":
        return s.differentiate()
    if op == "integrate":
        return s.integrate()
    raise ValueError("unknown calculus operation %r" % op)
