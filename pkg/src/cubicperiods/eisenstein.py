"""Exact arithmetic in Q(ω), Eisenstein lattice vectors and hexaflections.

Scalars are stored on the basis {1, ω} with ω² + ω + 1 = 0.  Coefficients are
exact reals: rationals for Q(ω) proper, or elements of a real number field at
a fixed real place when a period vector lives in a CM field (see
``numberfield.RealAlgebraic``).  θ = 1 + 2ω is the square root of −3 on the
positive imaginary axis.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from fractions import Fraction
from typing import Iterable, Sequence

from mpmath import iv, mpc, mpf, sqrt

from . import _reals
from .errors import ContractViolation


class EisensteinScalar:
    """The number ``re + om·ω``."""

    __slots__ = ("re", "om")

    def __init__(self, re=0, om=0):
        self.re = _reals.as_exact(re)
        self.om = _reals.as_exact(om)

    @classmethod
    def coerce(cls, x) -> EisensteinScalar:
        if isinstance(x, EisensteinScalar):
            return x
        return cls(x, 0)

    @classmethod
    def parse(cls, text: str) -> EisensteinScalar:
        """Parse ``p/q``, ``p/q*w``, ``p/q+r/s*w`` and friends (``w`` is ω)."""
        s = text.replace(" ", "").replace("ω", "w")
        if not s:
            raise ValueError("empty scalar")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse scalar {text!r}")
        re_part, om_part = Fraction(0), Fraction(0)
        try:
            for t in terms:
                if t.endswith("w"):
                    coef = t[:-1].rstrip("*")
                    if coef in ("", "+", "-"):
                        coef += "1"
                    om_part += Fraction(coef)
                else:
                    re_part += Fraction(t)
        except ZeroDivisionError as e:
            raise ValueError(f"zero denominator in {text!r}") from e
        return cls(re_part, om_part)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, EisensteinScalar):
            try:
                other = EisensteinScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return EisensteinScalar(self.re + other.re, self.om + other.om)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinScalar(-self.re, -self.om)

    def __sub__(self, other):
        if not isinstance(other, EisensteinScalar):
            try:
                other = EisensteinScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return EisensteinScalar(self.re - other.re, self.om - other.om)

    def __rsub__(self, other):
        return EisensteinScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, EisensteinScalar):
            try:
                other = _reals.as_exact(other)
            except TypeError:
                return NotImplemented
            return EisensteinScalar(self.re * other, self.om * other)
        a, b, c, d = self.re, self.om, other.re, other.om
        # (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        bd = b * d
        return EisensteinScalar(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = EisensteinScalar.coerce(other)
        n = other.norm()
        if _reals.is_zero(n):
            raise ZeroDivisionError("division by zero in Q(ω)")
        p = self * other.conj()
        return EisensteinScalar(p.re / n, p.om / n)

    def __rtruediv__(self, other):
        return EisensteinScalar.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (ONE / self) ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> EisensteinScalar:
        # ω̄ = −1 − ω; valid because the coefficients are real
        return EisensteinScalar(self.re - self.om, -self.om)

    def norm(self):
        """|x|² = a² − ab + b², an exact real."""
        a, b = self.re, self.om
        return a * a - a * b + b * b

    # predicates ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, EisensteinScalar):
            try:
                other = EisensteinScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.om == other.om

    def __hash__(self):
        return hash((self.re, self.om))

    def is_zero(self) -> bool:
        return _reals.is_zero(self.re) and _reals.is_zero(self.om)

    def is_real(self) -> bool:
        return _reals.is_zero(self.om)

    def is_integral(self) -> bool:
        return all(
            isinstance(c, Fraction) and c.denominator == 1 for c in (self.re, self.om)
        )

    def is_rational(self) -> bool:
        """True when the value lies in Q(ω) (always, for rational coefficients)."""
        return _reals.is_rational(self.re) and _reals.is_rational(self.om)

    def height(self) -> int:
        h = 0
        for c in (self.re, self.om):
            for q in _reals.rational_coords(c):
                h = max(h, abs(q.numerator), q.denominator)
        return h

    # numerics -----------------------------------------------------------

    def to_complex(self) -> complex:
        x, y = _reals.to_float(self.re), _reals.to_float(self.om)
        return complex(x - y / 2, y * 3**0.5 / 2)

    def to_mpc(self) -> mpc:
        x, y = mpf(_reals.to_float(self.re)), mpf(_reals.to_float(self.om))
        return mpc(x - y / 2, y * sqrt(3) / 2)

    def to_iv(self, prec: int = 113):
        """Complex interval enclosure."""
        with _reals.ivprec(prec):
            x, y = _reals.to_iv(self.re, prec), _reals.to_iv(self.om, prec)
            return iv.mpc(x - y / 2, y * iv.sqrt(3) / 2)

    def __repr__(self):
        return f"EisensteinScalar({self.re!s}, {self.om!s})"

    def __str__(self):
        if self.is_real():
            return _fmt(self.re)
        if _reals.is_zero(self.re):
            return f"{_fmt(self.om)}*w"
        om = _fmt(self.om)
        if not om.startswith("-"):
            om = "+" + om
        return f"{_fmt(self.re)}{om}*w"


def _fmt(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return f"({c})"


ZERO = EisensteinScalar(0, 0)
ONE = EisensteinScalar(1, 0)
OMEGA = EisensteinScalar(0, 1)
OMEGA_BAR = OMEGA.conj()
THETA = ONE + 2 * OMEGA
UNITS = (ONE, -OMEGA_BAR, OMEGA, -ONE, OMEGA_BAR, -OMEGA)  # powers of −ω̄ = e^{iπ/3}
ORDER6_UNITS = (-OMEGA, -OMEGA_BAR)


class Signature(enum.Enum):
    """Which standard form a vector carries: h₀ is (4,1), h₀* = −h̄₀ is (1,4)."""

    S41 = (4, 1)
    S14 = (1, 4)

    def signs(self, n: int) -> tuple[int, ...]:
        first = 1 if self is Signature.S14 else -1
        return (first,) + (-first,) * (n - 1)


class EisensteinVector:
    __slots__ = ("coords", "tag")

    def __init__(self, coords: Iterable, tag: Signature = Signature.S14):
        self.coords = tuple(EisensteinScalar.coerce(c) for c in coords)
        self.tag = tag

    @classmethod
    def parse(cls, text: str, tag: Signature = Signature.S14) -> EisensteinVector:
        return cls([EisensteinScalar.parse(t) for t in text.split(",")], tag)

    @classmethod
    def basis(cls, i: int, n: int = 5, tag: Signature = Signature.S14):
        return cls([ONE if j == i else ZERO for j in range(n)], tag)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: EisensteinVector):
        _same_tag(self, other)
        return EisensteinVector([a + b for a, b in zip(self, other)], self.tag)

    def __sub__(self, other: EisensteinVector):
        _same_tag(self, other)
        return EisensteinVector([a - b for a, b in zip(self, other)], self.tag)

    def __neg__(self):
        return EisensteinVector([-a for a in self], self.tag)

    def scale(self, s) -> EisensteinVector:
        s = EisensteinScalar.coerce(s)
        return EisensteinVector([s * a for a in self], self.tag)

    def __eq__(self, other):
        if not isinstance(other, EisensteinVector):
            return NotImplemented
        return self.tag == other.tag and self.coords == other.coords

    def __hash__(self):
        return hash((self.coords, self.tag))

    def norm(self) -> EisensteinScalar:
        return hermitian_form(self, self)

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self)

    def height(self) -> int:
        return max(c.height() for c in self)

    def sort_key(self):
        return tuple((c.re, c.om) for c in self)

    def __repr__(self):
        return f"EisensteinVector(({', '.join(map(str, self))}), {self.tag.value})"

    def __str__(self):
        return "(" + ", ".join(map(str, self)) + ")"


def _same_tag(x: EisensteinVector, y: EisensteinVector):
    if x.tag is not y.tag:
        raise ContractViolation(message=f"signature tags differ: {x.tag.value} vs {y.tag.value}")
    if len(x) != len(y):
        raise ContractViolation(message="vector lengths differ")


def hermitian_form(x: EisensteinVector, y: EisensteinVector, tag: Signature | None = None):
    """h(x, y) = Σ sᵢ xᵢ ȳᵢ with s = (+,−,−,−,−) for (1,4) and (−,+,+,+,+) for (4,1)."""
    _same_tag(x, y)
    if tag is not None and tag is not x.tag:
        raise ContractViolation(message=f"vectors carry {x.tag.value}, form requested {tag.value}")
    total = ZERO
    for s, a, b in zip(x.tag.signs(len(x)), x, y):
        term = a * b.conj()
        total = total + term if s > 0 else total - term
    return total


class LatticeMap:
    """A square matrix over Q(ω) acting on column vectors."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(EisensteinScalar.coerce(c) for c in row) for row in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("lattice map must be square")

    @classmethod
    def identity(cls, n: int = 5) -> LatticeMap:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, s, n: int = 5) -> LatticeMap:
        s = EisensteinScalar.coerce(s)
        return cls([[s if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def size(self) -> int:
        return len(self.rows)

    def __call__(self, v: EisensteinVector) -> EisensteinVector:
        out = []
        for row in self.rows:
            acc = ZERO
            for a, x in zip(row, v):
                acc = acc + a * x
            out.append(acc)
        return EisensteinVector(out, v.tag)

    def __matmul__(self, other: LatticeMap) -> LatticeMap:
        n = self.size
        cols = list(zip(*other.rows))
        return LatticeMap(
            [[sum((self.rows[i][k] * cols[j][k] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
        )

    def __pow__(self, k: int) -> LatticeMap:
        if k < 0:
            raise ValueError("negative powers are not supported")
        result, base = LatticeMap.identity(self.size), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, LatticeMap):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_identity(self) -> bool:
        return self == LatticeMap.identity(self.size)

    def is_integral(self) -> bool:
        return all(c.is_integral() for row in self.rows for c in row)

    def preserves_form(self, tag: Signature = Signature.S14) -> bool:
        """Exact check of g*·D·g = D for the diagonal form of ``tag``."""
        n = self.size
        s = tag.signs(n)
        for i in range(n):
            for j in range(i, n):
                acc = ZERO
                for k in range(n):
                    term = self.rows[k][i] * self.rows[k][j].conj()
                    acc = acc + term if s[k] > 0 else acc - term
                if acc != (EisensteinScalar(s[i]) if i == j else ZERO):
                    return False
        return True

    def __repr__(self):
        return "LatticeMap(" + "; ".join(", ".join(map(str, r)) for r in self.rows) + ")"


def hexaflection(v: EisensteinVector, mu: EisensteinScalar = -OMEGA_BAR) -> LatticeMap:
    """Order-6 complex reflection in v^⊥: x ↦ x + (1 − μ)·h₀*(x, v)·v.

    ``v`` must have h₀*-norm −1 and μ must be one of the order-6 units −ω, −ω̄.
    """
    if v.tag is not Signature.S14:
        raise ContractViolation(message="hexaflections act on the (1,4) lattice")
    if v.norm() != EisensteinScalar(-1):
        raise ContractViolation(message=f"reflection vector must have norm -1, got {v.norm()}")
    mu = EisensteinScalar.coerce(mu)
    if mu not in ORDER6_UNITS:
        raise ContractViolation(message=f"{mu} is not a unit of order 6")
    c = ONE - mu
    n = len(v)
    s = v.tag.signs(n)
    # column j of R is R(e_j) = e_j + c·sⱼ·v̄ⱼ·v
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = c * v[i] * v[j].conj()
            entry = entry if s[j] > 0 else -entry
            if i == j:
                entry = entry + ONE
            row.append(entry)
        rows.append(row)
    return LatticeMap(rows)


def orbit_bfs(
    start: EisensteinVector, generators: Sequence[LatticeMap], bound: int
) -> list[EisensteinVector]:
    """Vectors reachable from ``start`` by generator words staying within height ``bound``.

    Breadth-first, generators tried in the given order, so the returned list
    is deterministic and free of duplicates.
    """
    if start.height() > bound:
        return []
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = g(x)
            if y in seen or y.height() > bound:
                continue
            seen.add(y)
            order.append(y)
            queue.append(y)
    return order
