"""Exact rational scalars.

All symbolic computation in this package runs over arbitrary-precision
rationals.  We use ``gmpy2.mpq`` when it is installed (it is several times
faster on the large numerators that show up in high-order series) and fall
back to ``fractions.Fraction`` otherwise.  Both types are registered as
``numbers.Rational``, compare equal across implementations, and print as
``"p/q"`` (or ``"p"`` when the denominator is one), which is the exchange
format used by the JSON emitters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

try:
    from gmpy2 import mpq as _mpq

    def Q(numerator=0, denominator=1):
        return _mpq(numerator, denominator)

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    def Q(numerator=0, denominator=1):
        return Fraction(numerator, denominator)

    HAVE_GMPY2 = False

Rat = Union[Fraction, int]  # any numbers.Rational value is accepted

QZERO = Q(0)
QONE = Q(1)


def as_rat(x) -> "Rat":
    """Coerce ints, Fractions, mpqs or 'p/q' strings to the working type."""
    if isinstance(x, str):
        return rat_from_str(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a rational or a string")
    return Q(x)


def rat_to_str(x) -> str:
    """Serialize as 'numerator/denominator', omitting a unit denominator."""
    s = str(Q(x))
    return s


def rat_from_str(s: str) -> "Rat":
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return Q(int(num), int(den))
    return Q(int(s))


def factorial_q(n: int) -> "Rat":
    """n! as an exact rational (memoized)."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    while len(_FACTORIALS) <= n:
        _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return Q(_FACTORIALS[n])


_FACTORIALS = [1]


def binomial_q(n: int, k: int) -> "Rat":
    if k < 0 or k > n:
        return QZERO
    return factorial_q(n) / (factorial_q(k) * factorial_q(n - k))


def trinomial_q(a: int, b: int, c: int) -> "Rat":
    """(a+b+c)! / (a! b! c!)."""
    if a < 0 or b < 0 or c < 0:
        return QZERO
    return factorial_q(a + b + c) / (factorial_q(a) * factorial_q(b) * factorial_q(c))
