"""Totally real number fields Q[x]/(f) with certified real embeddings.

Elements are power-basis coordinate vectors of exact rationals.  Real roots of
``f`` are isolated by Sturm sequences and refined by exact bisection, so every
sign reported here is certified rather than read off a float.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import mpmath
import sympy
from mpmath import iv

from . import linalg
from ._reals import ivprec
from .errors import ContractViolation, DomainError, PrecisionExhausted

log = logging.getLogger(__name__)

MAX_BISECTIONS = 4000

# ---------------------------------------------------------------------------
# dense polynomials over Q, ascending coefficient lists


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p: Sequence) -> list:
    return _trim([k * p[k] for k in range(1, len(p))] or [0])


def poly_rem(a: Sequence, b: Sequence) -> list:
    a = [Fraction(c) for c in a]
    b = _trim([Fraction(c) for c in b])
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
    return _trim(a or [Fraction(0)])


def sturm_sequence(p: Sequence) -> list[list]:
    seq = [_trim([Fraction(c) for c in p]), poly_deriv([Fraction(c) for c in p])]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = poly_rem(seq[-2], seq[-1])
        if len(r) == 1 and r[0] == 0:
            break
        seq.append([-c for c in r])
    return seq


def _variations(values: Iterable) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(seq, x) -> int:
    return _variations(poly_eval(p, x) for p in seq)


def isolate_real_roots(p: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], ascending, each holding exactly one real root.

    ``p`` must be squarefree.  Endpoints are never roots.
    """
    seq = sturm_sequence(p)
    lead = abs(Fraction(p[-1]))
    bound = 1 + max(abs(Fraction(c)) for c in p[:-1]) / lead if len(p) > 1 else Fraction(1)
    bound = Fraction(math.ceil(bound))
    count = lambda a, b: _variations_at(seq, a) - _variations_at(seq, b)
    out = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        k = count(a, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        while poly_eval(p, m) == 0:
            m = (m + b) / 2  # nudge off an exact rational root
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out


def _interval_mul(a, b):
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(prods), max(prods))


def interval_poly_eval(p: Sequence, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of {p(t) : lo ≤ t ≤ hi} by interval Horner evaluation."""
    acc = (Fraction(0), Fraction(0))
    x = (lo, hi)
    for c in reversed(p):
        acc = _interval_mul(acc, x)
        acc = (acc[0] + c, acc[1] + c)
    return acc


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealEmbedding:
    index: int
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class Enclosure:
    """A certified real enclosure [lo, hi]."""

    lo: Fraction
    hi: Fraction

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        return float(self.mid)

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __str__(self):
        return f"{mpmath.nstr(mpmath.mpf(self.mid.numerator) / self.mid.denominator, 17)} ± {float(self.width / 2):.1e}"


class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial ``f`` with only real roots.

    ``disc`` and ``class_number`` are metadata supplied by the caller (the
    claimed field discriminant and class number); they are not computed.
    """

    def __init__(
        self,
        coeffs: Sequence[int],
        disc: int | None = None,
        class_number: int | None = None,
        check: bool = True,
    ):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ContractViolation(message="minimal polynomial must be monic of degree >= 1")
        self.coeffs = tuple(coeffs)
        self.n = len(coeffs) - 1
        self.claimed_disc = disc
        self.class_number = class_number
        x = sympy.Symbol("x")
        self._sympoly = sympy.Poly(list(reversed(coeffs)), x)
        self.poly_disc = int(sympy.discriminant(self._sympoly))
        if check:
            if not self._sympoly.is_irreducible:
                raise DomainError("reducible", f"{self.poly_str()} is reducible over Q")
        self._roots = [list(iv_) for iv_ in isolate_real_roots(self.coeffs)]
        if check and len(self._roots) != self.n:
            raise DomainError("not-totally-real", f"{self.poly_str()} has {len(self._roots)} real roots of {self.n}")
        # x^k mod f for k < 2n - 1
        red = []
        for k in range(2 * self.n - 1):
            red.append(tuple(poly_rem([0] * k + [1], self.coeffs) + [Fraction(0)] * self.n)[: self.n])
        self._xpow = red

    # -- construction --------------------------------------------------------

    def __call__(self, coords) -> FieldElement:
        return FieldElement(self, coords)

    def element(self, coords) -> FieldElement:
        return FieldElement(self, coords)

    def from_rational(self, q) -> FieldElement:
        return FieldElement(self, [q])

    @property
    def gen(self) -> FieldElement:
        return FieldElement(self, [0, 1] if self.n > 1 else [-self.coeffs[0]])

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, [1])

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, [0])

    def poly_str(self, var: str = "x") -> str:
        return str(self._sympoly.as_expr()).replace("x", var)

    def is_monogenic(self) -> bool:
        """Whether disc(f) equals the claimed field discriminant (so O_K = Z[α])."""
        return self.claimed_disc is not None and self.poly_disc == self.claimed_disc

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"NumberField({self.poly_str()})"

    # -- embeddings ----------------------------------------------------------

    def embedding(self, i: int) -> RealEmbedding:
        lo, hi = self._roots[i]
        return RealEmbedding(i, lo, hi)

    def embeddings(self) -> list[RealEmbedding]:
        return [self.embedding(i) for i in range(len(self._roots))]

    def refine_root(self, i: int) -> None:
        """Halve the isolating interval of root ``i`` (exact bisection)."""
        lo, hi = self._roots[i]
        m = (lo + hi) / 2
        fm = poly_eval(self.coeffs, m)
        if fm == 0:
            self._roots[i] = [m, m]
            return
        flo = poly_eval(self.coeffs, lo)
        if (flo < 0) == (fm < 0):
            self._roots[i][0] = m
        else:
            self._roots[i][1] = m

    def root_iv(self, i: int, prec: int = 113):
        """mpmath interval for root ``i`` refined to about ``prec`` bits."""
        target = Fraction(1, 2 ** (prec + 4))
        steps = 0
        while self._roots[i][1] - self._roots[i][0] > target * max(1, abs(self._roots[i][0])):
            self.refine_root(i)
            steps += 1
            if steps > MAX_BISECTIONS:
                raise PrecisionExhausted(f"root {i} of {self!r}")
        lo, hi = self._roots[i]
        with ivprec(prec):
            a = iv.mpf(lo.numerator) / lo.denominator
            b = iv.mpf(hi.numerator) / hi.denominator
            return iv.mpf([a.a, b.b])

    def enclose(self, coords: Sequence[Fraction], i: int, width: Fraction | None = None,
                exclude_zero: bool = False) -> Enclosure:
        """Certified enclosure of the i-th embedding of the element with ``coords``."""
        steps = 0
        while True:
            lo, hi = self._roots[i]
            if lo == hi:
                v = poly_eval(coords, lo)
                return Enclosure(v, v)
            a, b = interval_poly_eval(coords, lo, hi)
            ok = True
            if width is not None and b - a >= width:
                ok = False
            if exclude_zero and a <= 0 <= b:
                ok = False
            if ok:
                return Enclosure(a, b)
            self.refine_root(i)
            steps += 1
            if steps > MAX_BISECTIONS:
                raise PrecisionExhausted(f"embedding {i} did not reach the requested precision")

    # -- arithmetic helpers --------------------------------------------------

    def _mul(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
        n = self.n
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = list(prod[:n])
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                red = self._xpow[k]
                for j in range(n):
                    out[j] += c * red[j]
        return out


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Iterable):
        coords = [Fraction(c) for c in coords]
        if len(coords) > field.n:
            coords = poly_rem(coords, field.coeffs)
        coords = coords + [Fraction(0)] * (field.n - len(coords))
        self.field = field
        self.coords = tuple(coords)

    def _coerce(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ContractViolation(message="elements of different fields")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement(self.field, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement(self.field, [a * other for a in self.coords])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.coords, o.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement(self.field, [a / other for a in self.coords])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, FieldElement) else other
        if o is None:
            return NotImplemented
        return self.field == o.field and self.coords == o.coords

    def __hash__(self):
        return hash((self.field.coeffs, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_integral(self) -> bool:
        """Integer power-basis coordinates (= integrality when O_K = Z[α])."""
        return all(c.denominator == 1 for c in self.coords)

    def matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by self on the power basis (columns = images)."""
        n = self.field.n
        cols = [self.field._mul(self.coords, [0] * k + [1]) for k in range(n)]
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def trace(self) -> Fraction:
        m = self.matrix()
        return sum(m[i][i] for i in range(self.field.n))

    def norm(self) -> Fraction:
        return linalg.det(self.matrix(), Fraction(1))

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.field.n
        sol = linalg.solve(self.matrix(), [[Fraction(1)]] + [[Fraction(0)] for _ in range(n - 1)])
        return FieldElement(self.field, [row[0] for row in sol])

    def embed(self, i: int, width=Fraction(1, 10**30)) -> Enclosure:
        return self.field.enclose(self.coords, i, Fraction(width))

    def sign_at(self, i: int) -> int:
        if self.is_zero():
            return 0
        enc = self.field.enclose(self.coords, i, exclude_zero=True)
        return 1 if enc.lo > 0 else -1

    def signs(self) -> tuple[int, ...]:
        return tuple(self.sign_at(i) for i in range(self.field.n))

    def at(self, place: int) -> RealAlgebraic:
        return RealAlgebraic(self, place)

    def __repr__(self):
        return f"FieldElement({list(map(str, self.coords))})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            mon = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}*{mon}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")


class RealAlgebraic:
    """An element of a totally real field read as a real number at one place.

    Behaves as an exact, ordered real number: arithmetic is field arithmetic,
    signs are certified by interval refinement at the stored place.
    """

    __slots__ = ("elem", "place")

    def __init__(self, elem: FieldElement, place: int):
        self.elem = elem
        self.place = place

    @property
    def coords(self):
        return self.elem.coords

    def _other(self, other):
        if isinstance(other, RealAlgebraic):
            if other.place != self.place:
                raise ContractViolation(message="real numbers at different places")
            return other.elem
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return other
        return None

    def _wrap(self, e):
        return RealAlgebraic(e, self.place)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.elem + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.elem - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(o - self.elem)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.elem * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.elem / o)

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.elem.inverse() * o)

    def __neg__(self):
        return self._wrap(-self.elem)

    def __pow__(self, k):
        return self._wrap(self.elem**k)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.elem == o

    def __hash__(self):
        if self.elem.is_rational():
            return hash(self.elem.coords[0])
        return hash((self.elem, self.place))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def sign(self) -> int:
        return self.elem.sign_at(self.place)

    def is_zero(self) -> bool:
        return self.elem.is_zero()

    def is_rational(self) -> bool:
        return self.elem.is_rational()

    def enclosure(self, width=Fraction(1, 10**30)) -> Enclosure:
        return self.elem.embed(self.place, width)

    def to_iv(self, prec: int = 113):
        f = self.elem.field
        if self.elem.is_rational():
            q = self.elem.coords[0]
            with ivprec(prec):
                return iv.mpf(q.numerator) / q.denominator
        with ivprec(prec + 20):
            r = f.root_iv(self.place, prec + 20)
            acc = iv.mpf(0)
            for c in reversed(self.elem.coords):
                acc = acc * r + iv.mpf(c.numerator) / c.denominator
        return acc

    def __float__(self):
        return float(self.enclosure(Fraction(1, 10**18)).mid)

    def __repr__(self):
        return f"RealAlgebraic({self.elem}, place={self.place})"

    def __str__(self):
        return str(self.elem)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(e not in (1, -1) for e in self.entries):
            raise ContractViolation(message=f"sign entries must be +1/-1: {self.entries}")

    @classmethod
    def parse(cls, text: str) -> SignVector:
        parts = [p for p in text.replace("(", "").replace(")", "").replace(" ", "").split(",") if p]
        table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
        try:
            return cls(tuple(table[p] for p in parts))
        except KeyError as e:
            raise ContractViolation(message=f"bad sign vector {text!r}") from e

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def negatives(self) -> int:
        return sum(1 for e in self.entries if e < 0)

    def __str__(self):
        return "(" + ",".join("+" if e > 0 else "-" for e in self.entries) + ")"


def different_generator(F: NumberField) -> FieldElement:
    """f′(α), a generator of the different of the monogenic order Z[α] = O_K."""
    if not F.is_monogenic():
        raise DomainError(
            "non-monogenic-unsupported",
            f"disc(f) = {F.poly_disc} differs from the claimed field discriminant {F.claimed_disc}",
        )
    return F.element(poly_deriv(F.coeffs))


def trace_dual_matrix(F: NumberField, d: FieldElement) -> list[list[Fraction]]:
    """Matrix of Tr(αⁱ·αʲ/d); integral and unimodular iff d generates the different of Z[α]."""
    inv = d.inverse()
    g = F.gen
    powers = [g**k for k in range(F.n)]
    return [[(powers[i] * powers[j] * inv).trace() for j in range(F.n)] for i in range(F.n)]


def is_unit(x: FieldElement) -> bool:
    return x.is_integral() and abs(x.norm()) == 1


def real_embeddings(F: NumberField, x: FieldElement, precision=Fraction(1, 10**15)) -> list[Enclosure]:
    """Certified enclosures of τ₁(x), …, τₙ(x), ordered by ascending value of the generator."""
    precision = Fraction(precision)
    if precision <= 0:
        raise ContractViolation(message="precision must be positive")
    return [F.enclose(x.coords, i, precision) for i in range(F.n)]


def epsilon_positive(x: FieldElement, eps: SignVector) -> bool:
    if len(eps) != x.field.n:
        raise ContractViolation(message="sign vector length differs from field degree")
    if x.is_zero():
        log.warning("epsilon_positive called on zero; returning False")
        return False
    return all(x.sign_at(i) == e for i, e in enumerate(eps))


def exactly_one_negative(sv: SignVector) -> bool:
    return sv.negatives() == 1


@dataclass(frozen=True)
class SearchResult:
    found: bool
    generator: FieldElement | None = None
    eps: SignVector | None = None
    sign_bit: int | None = None
    exponents: tuple[int, ...] | None = None
    tried: int = 0


def sign_pattern_search(
    F: NumberField,
    unit_gens: Sequence[FieldElement],
    allowed_eps: Callable[[SignVector], bool] = exactly_one_negative,
) -> SearchResult:
    """Look for d = ±d₀·∏uₖ^{eₖ}, eₖ ∈ {0,1}, whose sign vector is allowed.

    Signs of embeddings of d depend only on the exponents mod 2, so the
    2^(1+len(units)) candidates exhaust all associates of d₀ up to squares of
    units.  Order: sign bit first, then exponents lexicographically.
    """
    for u in unit_gens:
        if not is_unit(u):
            raise ContractViolation(message=f"{u} is not a unit")
    d0 = different_generator(F)
    tried = 0
    for i in (0, 1):
        for e in itertools.product((0, 1), repeat=len(unit_gens)):
            d = -d0 if i else d0
            for u, k in zip(unit_gens, e):
                if k:
                    d = d * u
            tried += 1
            sv = SignVector(d.signs())
            if allowed_eps(sv):
                return SearchResult(True, d, sv, i, tuple(e), tried)
    return SearchResult(False, tried=tried)


def automorphisms(F: NumberField, dps: int = 60) -> list[FieldElement]:
    """Images of the generator under the automorphisms of F (identity included).

    Candidates come from matching the real roots numerically; each one is then
    certified exactly by checking f(s) = 0 in F.
    """
    n = F.n
    with mpmath.workdps(dps):
        roots = [F.root_iv(i, int(dps * 3.4) + 10).mid for i in range(n)]
        roots = [mpmath.mpf(r) for r in roots]
        V = mpmath.matrix([[r**k for k in range(n)] for r in roots])
        found = []
        seen = set()
        for perm in itertools.permutations(range(n)):
            target = mpmath.matrix([roots[p] for p in perm])
            c = mpmath.lu_solve(V, target)
            den = max(1, abs(F.poly_disc))
            coords = [Fraction(mpmath.nstr(c[k], dps - 5)).limit_denominator(den) for k in range(n)]
            s = F.element(coords)
            if s in seen:
                continue
            val = F.zero
            for coef in reversed(F.coeffs):
                val = val * s + coef
            if val.is_zero():
                seen.add(s)
                found.append(s)
    return found


def is_cyclic_galois(F: NumberField) -> bool:
    """True iff F/Q is Galois with a cyclic group (an automorphism of order n exists)."""
    auts = automorphisms(F)
    if len(auts) != F.n:
        return False
    g = F.gen

    def compose(s, t):  # s∘t : gen ↦ s(t(gen)) = t evaluated at s
        acc = F.zero
        for c in reversed(t.coords):
            acc = acc * s + c
        return acc

    for s in auts:
        t, order = s, 1
        while t != g:
            t = compose(s, t)
            order += 1
            if order > F.n:
                break
        if order == F.n:
            return True
    return False


# ---------------------------------------------------------------------------
# field record files


@dataclass
class FieldRecord:
    disc: int
    coeffs: tuple[int, ...]
    class_number: int
    units: list[tuple[Fraction, ...]] = field(default_factory=list)
    line: int = 0

    def field(self, check: bool = True) -> NumberField:
        return NumberField(self.coeffs, self.disc, self.class_number, check=check)

    def unit_elements(self, F: NumberField) -> list[FieldElement]:
        return [F.element(u) for u in self.units]

    def to_line(self) -> str:
        units = " | ".join(",".join(str(c) for c in u) for u in self.units)
        return f"{self.disc}; {','.join(map(str, self.coeffs))}; {self.class_number}; {units}"


def parse_field_record(line: str, lineno: int = 0) -> FieldRecord:
    """Parse ``disc; c0,c1,...,cn; h; u1 | u2 | ...`` (coefficients ascending)."""
    parts = [p.strip() for p in line.split(";")]
    if len(parts) != 4:
        raise ValueError(f"line {lineno}: expected 4 ';'-separated fields, got {len(parts)}")
    disc = int(parts[0])
    coeffs = tuple(int(c) for c in parts[1].split(","))
    h = int(parts[2])
    units = []
    if parts[3]:
        for u in parts[3].split("|"):
            units.append(tuple(Fraction(c.strip()) for c in u.split(",")))
    return FieldRecord(disc, coeffs, h, units, lineno)


def read_field_records(lines: Iterable[str]) -> list[FieldRecord | tuple[int, str, str]]:
    """Records in file order; malformed lines come back as (lineno, text, error)."""
    out: list = []
    for k, raw in enumerate(lines, 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        try:
            out.append(parse_field_record(s, k))
        except ValueError as e:
            out.append((k, s, str(e)))
    return out
