"""Membership of ball points in the hyperplane arrangement and nodal classification.

A hyperplane is v^⊥ for an Eisenstein vector v of h₀*-norm −1.  The hyperplanes
through a positive point p all have normals in the integral complement
{w ∈ E⁵ : h₀*(w, p) = 0}, on which h₀* is negative definite, so they can be
found by exhaustive short-vector enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _reals, linalg
from .eisenstein import (
    ONE,
    UNITS,
    EisensteinScalar,
    EisensteinVector,
    Signature,
    hermitian_form,
)
from .errors import CubicPeriodsError, DomainError

MAX_NODES = 4


class BallPoint:
    """A positive line in C^{1,4}, given by a representative (v₀, …, v₄).

    ``coords`` holds exact Eisenstein scalars (coefficients rational or real
    algebraic).  A purely numeric point keeps ``coords = None`` and only a
    complex ``numeric_shadow``; such points cannot be certified.
    """

    def __init__(self, coords=None, numeric_shadow=None, check: bool = True):
        if coords is None and numeric_shadow is None:
            raise ValueError("a ball point needs coordinates")
        if coords is not None:
            coords = tuple(EisensteinScalar.coerce(c) for c in coords)
            if len(coords) != 5:
                raise ValueError("a ball point has 5 coordinates")
        self.coords = coords
        self.numeric_shadow = tuple(numeric_shadow) if numeric_shadow is not None else None
        if check and coords is not None and _reals.sign(self.norm().re) <= 0:
            raise DomainError("not-in-ball", f"h0*(v, v) = {self.norm()} is not positive")

    @classmethod
    def from_b(cls, b: Sequence) -> BallPoint:
        return cls([ONE] + [EisensteinScalar.coerce(x) for x in b])

    @classmethod
    def parse(cls, text: str) -> BallPoint:
        """Five entries give (v₀, …, v₄); four give the normalized b."""
        parts = [EisensteinScalar.parse(t) for t in text.split(",")]
        if len(parts) == 4:
            return cls.from_b(parts)
        if len(parts) == 5:
            return cls(parts)
        raise ValueError(f"expected 4 or 5 entries, got {len(parts)}")

    @property
    def exact(self) -> bool:
        return self.coords is not None

    def vector(self) -> EisensteinVector:
        return EisensteinVector(self.coords, Signature.S14)

    def norm(self) -> EisensteinScalar:
        return self.vector().norm()

    def is_normalized(self) -> bool:
        return self.coords[0] == ONE

    def b(self) -> tuple[EisensteinScalar, ...]:
        v0 = self.coords[0]
        if v0.is_zero():
            raise DomainError("not-normalizable", "first coordinate vanishes")
        return tuple(c / v0 for c in self.coords[1:])

    def scale(self, u) -> BallPoint:
        u = EisensteinScalar.coerce(u)
        return BallPoint([u * c for c in self.coords], check=False)

    def __str__(self):
        if self.coords is None:
            return "(" + ", ".join(str(c) for c in self.numeric_shadow) + ")"
        return "(" + ", ".join(map(str, self.coords)) + ")"


def canonical_normal(v: EisensteinVector) -> EisensteinVector:
    """The unit multiple of v whose first nonzero coordinate a + bω has 0 ≤ b < a.

    That condition says the argument lies in [0, π/3), which singles out one of
    the six unit multiples.
    """
    for u in UNITS:
        w = v.scale(u)
        lead = next((c for c in w if not c.is_zero()), None)
        if lead is None:
            raise ValueError("zero vector has no normal form")
        if _reals.sign(lead.om) >= 0 and _reals.sign(lead.re - lead.om) > 0:
            return w
    raise AssertionError("no canonical unit multiple found")


@dataclass(frozen=True)
class Hyperplane:
    normal: EisensteinVector

    def __post_init__(self):
        if self.normal.norm() != EisensteinScalar(-1):
            raise ValueError(f"normal {self.normal} does not have norm -1")
        if canonical_normal(self.normal) != self.normal:
            raise ValueError(f"normal {self.normal} is not the canonical representative")

    @classmethod
    def from_vector(cls, v: EisensteinVector) -> Hyperplane:
        return cls(canonical_normal(v))

    def contains(self, p: BallPoint) -> bool:
        return hermitian_form(p.vector(), self.normal).is_zero()

    def __str__(self):
        return str(self.normal)


# ---------------------------------------------------------------------------
# integral complements

# Re(u·conj(u')) for u = x + yω, u' = x' + y'ω, as a bilinear form in (x, y)
_RE_PAIRING = ((Fraction(1), Fraction(-1, 2)), (Fraction(-1, 2), Fraction(1)))


def _real_gram(signs: Sequence[int]) -> list[list[Fraction]]:
    """Gram of Re h on E⁵ viewed as Z¹⁰ with basis e₀, ωe₀, e₁, ωe₁, …."""
    n = 2 * len(signs)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i, s in enumerate(signs):
        for a in range(2):
            for b in range(2):
                G[2 * i + a][2 * i + b] = s * _RE_PAIRING[a][b]
    return G


def _to_vector(z: Sequence[int], tag: Signature = Signature.S14) -> EisensteinVector:
    return EisensteinVector([EisensteinScalar(z[2 * i], z[2 * i + 1]) for i in range(len(z) // 2)], tag)


def _from_vector(v: EisensteinVector) -> list[int]:
    out = []
    for c in v:
        out.extend((int(c.re), int(c.om)))
    return out


@dataclass
class ComplementLattice:
    """Integral vectors orthogonal to a point, as a Z-lattice with its h₀*-Gram."""

    point: BallPoint
    basis: list[list[int]]  # rows in Z¹⁰ (coordinates x₀, y₀, x₁, y₁, … of Σ(xᵢ + yᵢω)eᵢ)
    gram: list[list[Fraction]] = field(default_factory=list)  # Re h₀* on the basis, negative definite

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vector(self, coeffs: Sequence[int]) -> EisensteinVector:
        z = [sum(c * row[k] for c, row in zip(coeffs, self.basis)) for k in range(10)]
        return _to_vector(z)

    def vectors(self) -> list[EisensteinVector]:
        return [_to_vector(row) for row in self.basis]


def orthogonal_complement_lattice(p: BallPoint) -> ComplementLattice:
    """Z-basis of {w ∈ E⁵ : h₀*(w, p) = 0}, LLL-reduced for the definite form −h₀*."""
    if not isinstance(p, BallPoint) or not p.exact:
        raise DomainError("exact-required", "complement lattices need exact coordinates")
    signs = Signature.S14.signs(5)
    # h₀*(w, p) = Σ sᵢ wᵢ c̄ᵢ; with wᵢ = x + yω and sᵢ c̄ᵢ = a + bω the product is
    # (xa − yb) + (xb + y(a − b))ω
    cols_re, cols_om = [], []
    for s, c in zip(signs, p.coords):
        cc = c.conj()
        a, b = (cc.re, cc.om) if s > 0 else (-cc.re, -cc.om)
        cols_re += [a, -b]
        cols_om += [b, a - b]
    exprs = cols_re + cols_om
    width = max(len(_reals.rational_coords(x)) for x in exprs)

    def expand(x):
        q = _reals.rational_coords(x)
        return q + [Fraction(0)] * (width - len(q))

    rows = []
    for block in (cols_re, cols_om):
        coords = [expand(x) for x in block]
        for k in range(width):
            rows.append([coords[j][k] for j in range(10)])
    kernel = linalg.integer_kernel(rows, 10)
    G10 = _real_gram(signs)
    if not kernel:
        return ComplementLattice(p, [], [])
    neg = [[-x for x in row] for row in G10]
    T, _ = linalg.lll_gram(linalg.gram_of(kernel, neg))
    basis = [[sum(t * kernel[j][k] for j, t in enumerate(trow)) for k in range(10)] for trow in T]
    gram = linalg.gram_of(basis, G10)
    for v in (_to_vector(r) for r in basis):
        if not hermitian_form(v, p.vector()).is_zero():
            raise AssertionError("complement basis vector is not orthogonal to the point")
    return ComplementLattice(p, basis, gram)


def is_negative_definite(G: Sequence[Sequence]) -> bool:
    """Leading principal minors alternate in sign, starting negative."""
    piv = linalg.leading_pivots(G)
    return piv is not None and all(_reals.sign(d) < 0 for d in piv)


def short_vectors(L, target: int):
    """All lattice vectors with form value exactly −target (target ≥ 1).

    ``L`` is a negative definite Gram matrix (result: coefficient tuples) or a
    ``ComplementLattice`` (result: Eisenstein vectors).
    """
    gram = L.gram if isinstance(L, ComplementLattice) else [[Fraction(x) for x in row] for row in L]
    if not gram:
        return []
    if not is_negative_definite(gram):
        raise DomainError("not-definite", "Gram matrix is not negative definite")
    if target <= 0:
        return []
    pos = [[-x for x in row] for row in gram]
    found = [vec for vec, val in linalg.enumerate_short(pos, Fraction(target)) if val == target]
    found.sort()
    if isinstance(L, ComplementLattice):
        return [L.vector(vec) for vec in found]
    return found


@dataclass
class Classification:
    kind: str  # "smooth" or "nodal"
    hyperplanes: list[Hyperplane]
    complement_rank: int

    @property
    def k(self) -> int:
        return len(self.hyperplanes)

    def summary(self) -> str:
        if self.kind == "smooth":
            return "smooth"
        return f"nodal, {self.k} hyperplane" + ("s" if self.k != 1 else "")


def classify_point(p: BallPoint) -> Classification:
    """Count the arrangement hyperplanes through p (0 means smooth, at most 4)."""
    L = orthogonal_complement_lattice(p)
    roots = short_vectors(L, 1) if L.rank else []
    planes = {}
    for v in roots:
        h = Hyperplane.from_vector(v)
        planes[h.normal] = h
    normals = sorted(planes.values(), key=lambda h: h.normal.sort_key())
    if len(normals) > MAX_NODES:
        raise AssertionError(f"{len(normals)} hyperplanes through {p}; at most {MAX_NODES} are possible")
    return Classification("nodal" if normals else "smooth", normals, L.rank)


__all__ = [
    "BallPoint",
    "Classification",
    "ComplementLattice",
    "CubicPeriodsError",
    "Hyperplane",
    "canonical_normal",
    "classify_point",
    "is_negative_definite",
    "orthogonal_complement_lattice",
    "short_vectors",
]
