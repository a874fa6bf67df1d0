"""Helpers treating the exact real coefficient types uniformly.

Coefficients are either ``Fraction`` (rationals) or ``RealAlgebraic`` (an
element of a totally real number field pinned to one real place).  The latter
provides ``sign()``, ``to_iv()``, ``coords()`` and ``is_rational()``; the
functions here give ``Fraction`` the same surface.
"""

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv

Rational = (int, Fraction)


@contextmanager
def ivprec(prec: int):
    """Temporarily set the working precision (bits) of the interval context."""
    old = iv.prec
    iv.prec = max(prec, old)
    try:
        yield
    finally:
        iv.prec = old


def as_exact(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction) or hasattr(x, "sign"):
        return x
    raise TypeError(f"exact real required, got {type(x).__name__}")


def sign(x) -> int:
    """Certified sign of an exact real."""
    if isinstance(x, Rational):
        return (x > 0) - (x < 0)
    return x.sign()


def is_zero(x) -> bool:
    if isinstance(x, Rational):
        return x == 0
    return x.is_zero()


def is_rational(x) -> bool:
    if isinstance(x, Rational):
        return True
    return x.is_rational()


def rational_coords(x) -> list[Fraction]:
    """Coordinates over Q: a single entry for rationals, a power-basis vector otherwise."""
    if isinstance(x, Rational):
        return [Fraction(x)]
    return list(x.coords)


def to_iv(x, prec: int = 113):
    """Interval enclosure (``mpmath.iv.mpf``) of an exact real."""
    if isinstance(x, Rational):
        x = Fraction(x)
        with ivprec(prec):
            return iv.mpf(x.numerator) / x.denominator
    return x.to_iv(prec)


def to_float(x) -> float:
    if isinstance(x, Rational):
        return float(x)
    return float(x)
