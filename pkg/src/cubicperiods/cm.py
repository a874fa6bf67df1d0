"""Principally polarized CM abelian five-folds with an order-3 automorphism of type (4,1).

K = K₀(√−3) for a totally real quintic K₀.  O_K has the Z-basis
e_k = r^k, e_{n+k} = ω·r^k (valid when 3 is unramified in K₀).  Elements of K
are pairs (x, y) of K₀-elements meaning x + y·ω.

The skew form is Ω(x, y) = −Tr_{K/Q}(α·x·ȳ) with α = −β/√−3, β = d⁻¹.  The
lattice form used for period matrices is ⟨x, y⟩ = −Ω(x, y); with it the
hermitian form h(x, y) = ⟨x, σy⟩ − ω⟨x, y⟩ (σ = multiplication by ω) has
signature (4,1), matching (E⁵, ω, h₀).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from mpmath import iv

from . import _reals, linalg
from .arrangement import BallPoint, classify_point
from .eisenstein import OMEGA, OMEGA_BAR, EisensteinScalar
from .errors import ContractViolation, DomainError, PrecisionExhausted
from .numberfield import (
    FieldElement,
    NumberField,
    RealAlgebraic,
    SignVector,
    epsilon_positive,
    is_cyclic_galois,
)
from .siegel import (
    format_numeric,
    format_scalar,
    iv_real_pivots_positive,
    qomega_rationality,
    riemann_check,
    siegel_point,
    period_matrix,
    symplectic_J,
)

DEFAULT_PREC = 200


# ---------------------------------------------------------------------------
# K = K₀(ω)


class CMElement:
    __slots__ = ("x", "y")

    def __init__(self, x: FieldElement, y: FieldElement):
        self.x = x
        self.y = y

    @classmethod
    def from_base(cls, x: FieldElement) -> CMElement:
        return cls(x, x.field.zero)

    def __add__(self, o):
        return CMElement(self.x + o.x, self.y + o.y)

    def __sub__(self, o):
        return CMElement(self.x - o.x, self.y - o.y)

    def __neg__(self):
        return CMElement(-self.x, -self.y)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, FieldElement)):
            return CMElement(self.x * o, self.y * o)
        # (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        bd = self.y * o.y
        return CMElement(self.x * o.x - bd, self.x * o.y + self.y * o.x - bd)

    __rmul__ = __mul__

    def conj(self) -> CMElement:
        return CMElement(self.x - self.y, -self.y)

    def relative_norm(self) -> FieldElement:
        return self.x * self.x - self.x * self.y + self.y * self.y

    def inverse(self) -> CMElement:
        n = self.relative_norm().inverse()
        c = self.conj()
        return CMElement(c.x * n, c.y * n)

    def trace(self) -> Fraction:
        """Tr_{K/Q}(x + yω) = Tr_{K₀/Q}(2x − y)."""
        return (self.x * 2 - self.y).trace()

    def __eq__(self, o):
        return isinstance(o, CMElement) and self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def at(self, place: int, minus: bool) -> EisensteinScalar:
        """Image under the embedding extending the real place, with ω ↦ ω̄ when ``minus``.

        x + yω̄ = (x − y) − yω.
        """
        if minus:
            return EisensteinScalar(RealAlgebraic(self.x - self.y, place), RealAlgebraic(-self.y, place))
        return EisensteinScalar(RealAlgebraic(self.x, place), RealAlgebraic(self.y, place))

    def __str__(self):
        return f"({self.x}) + ({self.y})*w"


def sqrt_minus3(F: NumberField) -> CMElement:
    return CMElement(F.one, F.one * 2)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CMType:
    """Extension of the real places of K₀ with τᵢ(√−3) = εᵢ·θ; exactly one εᵢ = −1."""

    base_field: NumberField
    sign_vector: SignVector

    def __post_init__(self):
        if len(self.sign_vector) != self.base_field.n:
            raise ContractViolation(message="sign vector length differs from the field degree")
        if self.sign_vector.negatives() != 1:
            raise ContractViolation(
                message=f"type (4,1) needs exactly one negative sign, got {self.sign_vector}"
            )

    @property
    def order(self) -> tuple[int, ...]:
        """Real places listed with the unique −1 first."""
        eps = self.sign_vector
        first = next(i for i, e in enumerate(eps) if e < 0)
        return (first,) + tuple(i for i in range(len(eps)) if i != first)

    @property
    def tau1(self) -> int:
        return self.order[0]

    def omega_images(self) -> tuple[EisensteinScalar, ...]:
        """τᵢ(ω) in the stored order: ω̄ once, then ω."""
        return tuple(OMEGA_BAR if self.sign_vector[p] < 0 else OMEGA for p in self.order)


def basis_elements(F: NumberField) -> list[CMElement]:
    n = F.n
    r = F.gen
    powers = [r**k for k in range(n)]
    return [CMElement(p, F.zero) for p in powers] + [CMElement(F.zero, p) for p in powers]


def lattice_element(F: NumberField, x: Sequence[int]) -> CMElement:
    n = F.n
    return CMElement(F.element(list(x[:n])), F.element(list(x[n:])))


@dataclass
class PolarizationData:
    field: NumberField
    eps: SignVector
    d: FieldElement
    beta: FieldElement
    alpha: CMElement
    gram: list[list[int]]  # Ω on the basis e_k, ω·e_k
    hermitian_gram: list | None = None  # Re H, interval entries
    omega_consistent: bool | None = None

    @property
    def lattice_form(self) -> list[list[int]]:
        """⟨x, y⟩ = −Ω(x, y)."""
        return [[-x for x in row] for row in self.gram]


def polarization_gram(F: NumberField, alpha: CMElement) -> list[list[Fraction]]:
    basis = basis_elements(F)
    conj = [b.conj() for b in basis]
    m = len(basis)
    G = [[Fraction(0)] * m for _ in range(m)]
    for k in range(m):
        ak = alpha * basis[k]
        for l in range(k + 1, m):
            v = -(ak * conj[l]).trace()
            G[k][l] = v
            G[l][k] = -v
        G[k][k] = -(ak * conj[k]).trace()
    return G


def _check_three_unramified(F: NumberField):
    disc = F.claimed_disc if F.claimed_disc is not None else F.poly_disc
    if disc % 3 == 0:
        raise DomainError("three-ramified", f"disc {disc} is divisible by 3; the basis r^k, w*r^k is not integral-closed")


def polarization_from_alpha(F: NumberField, eps: SignVector, d: FieldElement, alpha: CMElement) -> PolarizationData:
    _check_three_unramified(F)
    G = polarization_gram(F, alpha)
    if any(x.denominator != 1 for row in G for x in row):
        raise DomainError("alpha-not-in-codifferent", "Tr(alpha x conj(y)) is not integral")
    Gi = [[int(x) for x in row] for row in G]
    if any(Gi[k][k] != 0 or Gi[k][l] != -Gi[l][k] for k in range(len(Gi)) for l in range(len(Gi))):
        raise AssertionError("trace form is not alternating")
    det = linalg.int_det(Gi)
    if det != 1:
        raise DomainError("not-principal", f"det of the polarization form is {det}")
    return PolarizationData(F, eps, d, d.inverse(), alpha, Gi)


def build_polarization(F: NumberField, eps: SignVector, d: FieldElement) -> PolarizationData:
    """α = −β/√−3 with β = d⁻¹; the Gram of Ω must be integral, alternating, det 1.

    ``eps`` is recorded for the positivity check; it is not validated here, so
    a wrong sign vector surfaces as a failed (not crashed) positivity check.
    """
    if len(eps) != F.n:
        raise ContractViolation(message="sign vector length differs from the field degree")
    beta = d.inverse()
    t_inv = sqrt_minus3(F)
    # 1/√−3 = −√−3/3, so α = −β/√−3 = β·√−3/3
    alpha = CMElement(t_inv.x * beta / 3, t_inv.y * beta / 3)
    return polarization_from_alpha(F, eps, d, alpha)


def sigma_matrix(F: NumberField) -> list[list[int]]:
    """Multiplication by ω on O_K; column k holds the coordinates of ω·e_k."""
    n = F.n
    m = 2 * n
    M = [[0] * m for _ in range(m)]
    for k in range(n):
        M[n + k][k] = 1  # ω·r^k
        M[k][n + k] = -1  # ω·ωr^k = −r^k − ωr^k
        M[n + k][n + k] = -1
    return M


def _transpose(A):
    return [list(r) for r in zip(*A)]


def _mm(A, B):
    return linalg.matmul(A, B)


def sigma_checks(M, gram) -> dict:
    m = len(M)
    I = linalg.identity(m)
    M2 = _mm(M, M)
    cube = all(M2[i][j] + M[i][j] + I[i][j] == 0 for i in range(m) for j in range(m))
    preserves = _mm(_mm(_transpose(M), gram), M) == [list(r) for r in gram]
    return {"sigma_cube_root": cube, "sigma_preserves_form": preserves}


# ---------------------------------------------------------------------------
# embeddings into C⁵


def period_lattice(F: NumberField, cm: CMType, prec: int = DEFAULT_PREC) -> list:
    """Π[i][k] = τ_{order[i]}(e_k) as complex intervals (row 0 is τ₁)."""
    n = F.n
    with _reals.ivprec(prec):
        rows = []
        for i, place in enumerate(cm.order):
            root = F.root_iv(place, prec)
            pw = [iv.mpf(1)]
            for _ in range(n - 1):
                pw.append(pw[-1] * root)
            w = cm.omega_images()[i].to_iv(prec)
            rows.append([iv.mpc(p, 0) for p in pw] + [w * p for p in pw])
        return rows


def hermitian_gram(pol: PolarizationData, cm_order: Sequence[int], prec: int = DEFAULT_PREC):
    """Re H(e_k, e_l) and Im H(e_k, e_l) with H = 2Σ βᵢ′ τᵢ(x)·conj τᵢ(y), βᵢ′ = εᵢτᵢ(β)/√3."""
    F = pol.field
    n = F.n
    eps = pol.eps
    with _reals.ivprec(prec):
        re_rows = [[iv.mpf(0)] * (2 * n) for _ in range(2 * n)]
        im_rows = [[iv.mpf(0)] * (2 * n) for _ in range(2 * n)]
        s3 = iv.sqrt(3)
        for place in range(n):
            omega = (OMEGA if eps[place] > 0 else OMEGA_BAR).to_iv(prec)
            root = F.root_iv(place, prec)
            pw = [iv.mpf(1)]
            for _ in range(n - 1):
                pw.append(pw[-1] * root)
            vals = [iv.mpc(p, 0) for p in pw] + [omega * p for p in pw]
            b = eps[place] * RealAlgebraic(pol.beta, place).to_iv(prec) / s3
            for k in range(2 * n):
                for l in range(2 * n):
                    z = 2 * b * vals[k] * iv.mpc(vals[l].real, -vals[l].imag)
                    re_rows[k][l] += z.real
                    im_rows[k][l] += z.imag
        return re_rows, im_rows


@dataclass
class PositivityResult:
    positive: bool
    beta_signs: tuple[int, ...]
    omega_consistent: bool


def positivity_check(pol: PolarizationData, prec: int = DEFAULT_PREC, max_prec: int = 3200) -> PositivityResult:
    """Decide H ≻ 0 two ways and require them to agree.

    Exact route: H(x) = 2Σ εᵢτᵢ(β)|τᵢ(x)|², so H ≻ 0 iff every εᵢτᵢ(β) > 0.
    Interval route: certified LDL pivots of the 10×10 real Gram.  When the
    exact route already says indefinite, an uncertifiable pivot (e.g. an
    exactly vanishing one) is read as "not positive" instead of escalating.
    """
    F = pol.field
    signs = tuple(pol.eps[i] * pol.beta.sign_at(i) for i in range(F.n))
    exact = all(s > 0 for s in signs)
    while True:
        re_rows, im_rows = hermitian_gram(pol, range(F.n), prec)
        try:
            pos = iv_real_pivots_positive(re_rows, prec)
            break
        except PrecisionExhausted:
            if not exact:
                pos = False
                break
            if prec >= max_prec:
                raise
            prec *= 2
    if pos != exact:
        raise AssertionError("interval and sign-vector positivity disagree")
    consistent = all(pol.gram[k][l] in im_rows[k][l] for k in range(2 * F.n) for l in range(2 * F.n))
    pol.hermitian_gram = re_rows
    pol.omega_consistent = consistent
    return PositivityResult(pos, signs, consistent)


def eigentype(F: NumberField, cm: CMType, M, prec: int = DEFAULT_PREC) -> tuple[int, int]:
    """(multiplicity of ω, multiplicity of ω̄) of σ on the holomorphic coordinates.

    First certifies Π·M = D·Π (D = diag τᵢ(ω)) entrywise on intervals, which
    shows σ acts on C⁵ by D.
    """
    Pi = period_lattice(F, cm, prec)
    D = cm.omega_images()
    m = 2 * F.n
    with _reals.ivprec(prec):
        for i in range(F.n):
            d = D[i].to_iv(prec)
            for j in range(m):
                lhs = sum((Pi[i][k] * M[k][j] for k in range(m) if M[k][j]), iv.mpc(0))
                diff = lhs - d * Pi[i][j]
                if not (0 in diff.real and 0 in diff.imag):
                    raise AssertionError("sigma does not act diagonally through the CM type")
    n_omega = sum(1 for w in D if w == OMEGA)
    return n_omega, len(D) - n_omega


# ---------------------------------------------------------------------------
# symplectic reduction


def _form(G, x, y) -> int:
    return sum(x[i] * G[i][j] * y[j] for i in range(len(x)) if x[i] for j in range(len(y)) if y[j])


def symplectic_basis(gram: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integral U with U·gram·ᵗU = J for an alternating unimodular integer gram.

    Rows of U are e₀, …, e_{g−1}, f₀, …, f_{g−1} with ⟨eᵢ, fᵢ⟩ = 1.  Each
    pair is found by a Euclidean reduction of the values ⟨e, v⟩.
    """
    G = [[int(x) for x in row] for row in gram]
    m = len(G)
    if m % 2 or any(G[i][i] != 0 or G[i][j] != -G[j][i] for i in range(m) for j in range(m)):
        raise DomainError("not-symplectic-reducible", "gram is not alternating")
    if abs(linalg.int_det(G)) != 1:
        raise DomainError("not-symplectic-reducible", "gram is not unimodular")
    rest = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    es, fs = [], []
    while rest:
        e = rest.pop(0)
        while True:
            vals = [_form(G, e, v) for v in rest]
            nz = [i for i, v in enumerate(vals) if v]
            if not nz:
                raise DomainError("not-symplectic-reducible", "degenerate vector")
            if len(nz) == 1:
                break
            i0 = min(nz, key=lambda i: abs(vals[i]))
            for i in nz:
                if i != i0:
                    q = vals[i] // vals[i0]
                    rest[i] = [a - q * b for a, b in zip(rest[i], rest[i0])]
        i0 = nz[0]
        val = vals[i0]
        if abs(val) != 1:
            raise DomainError("not-symplectic-reducible", f"pairing value {val}")
        f = rest.pop(i0)
        if val == -1:
            e, f = f, e
        projected = []
        for v in rest:
            a, b = _form(G, e, v), _form(G, f, v)
            projected.append([vi - a * fi + b * ei for vi, ei, fi in zip(v, e, f)])
        rest = projected
        es.append(e)
        fs.append(f)
    U = es + fs
    if _mm(_mm(U, G), _transpose(U)) != symplectic_J(m // 2):
        raise AssertionError("symplectic reduction failed to produce J")
    return U


def transport(M, U):
    """Matrix of σ in the coordinates of the basis given by the rows of U: U⁻ᵀ·M·ᵗU."""
    Ui = linalg.inverse([[Fraction(x) for x in row] for row in U], Fraction(1), Fraction(0))
    UiT = _transpose(Ui)
    out = _mm(_mm(UiT, M), _transpose(U))
    return [[int(x) for x in row] for row in out]


# ---------------------------------------------------------------------------
# interval linear algebra for Z = A⁻¹B


def iv_solve(A, B, prec: int):
    """Complex-interval Gaussian elimination with partial pivoting on midpoints."""
    n = len(A)
    with _reals.ivprec(prec):
        M = [list(A[i]) + list(B[i]) for i in range(n)]
        for c in range(n):
            piv = max(range(c, n), key=lambda r: abs(complex(M[r][c].real.mid, M[r][c].imag.mid)))
            M[c], M[piv] = M[piv], M[c]
            p = M[c][c]
            if 0 in p.real and 0 in p.imag:
                raise PrecisionExhausted("pivot not separated from zero")
            M[c] = [x / p for x in M[c]]
            for r in range(n):
                if r != c:
                    f = M[r][c]
                    M[r] = [a - f * b for a, b in zip(M[r], M[c])]
        return [row[n:] for row in M]


def _project(Pi, rows, prec):
    """Π·ᵗR: periods of the lattice vectors given as rows of R."""
    with _reals.ivprec(prec):
        return [[sum((pr[k] * r[k] for k in range(len(r)) if r[k]), iv.mpc(0)) for r in rows] for pr in Pi]


def _overlaps(a, b) -> bool:
    return (a.real.a <= b.real.b and b.real.a <= a.real.b) and (a.imag.a <= b.imag.b and b.imag.a <= a.imag.b)


# ---------------------------------------------------------------------------


@dataclass
class PeriodData:
    status: str  # "ok" or "sigma-normalization-not-found"
    U: list
    Z_numeric: list  # A⁻¹B in the basis U (intervals)
    z_symmetric: bool
    z_imag_positive: bool
    W: list | None = None  # adapted symplectic basis (γ, σ⁻¹γ₀, σγ₁, …)
    S: list | None = None  # W·U⁻¹ ∈ Sp(10, Z)
    b: tuple | None = None
    Z_exact: object = None
    z_matches: bool | None = None
    radius: float | None = None


def _q_matrix(lat_form, M):
    """Symmetric rational Gram of q(x) = ⟨x, σx⟩."""
    A = _mm(lat_form, M)
    m = len(A)
    return [[Fraction(A[i][j] + A[j][i], 2) for j in range(m)] for i in range(m)]


def _qval(Q, x):
    return sum(x[i] * Q[i][j] * x[j] for i in range(len(x)) if x[i] for j in range(len(x)) if x[j])


def _negative_vector(Q, majorant, radius):
    """Vectors with q = −1 of majorant value ≤ radius, smallest first."""
    T, Gm = linalg.lll_gram(majorant)
    found = []
    for y, val in linalg.enumerate_short(Gm, float(radius)):
        x = [sum(y[i] * T[i][k] for i in range(len(y))) for k in range(len(y))]
        if _qval(Q, x) == -1:
            found.append((val, x))
    found.sort(key=lambda t: (round(t[0], 9), t[1]))
    return [x for _, x in found]


def _unit_vector_in(Q, lat_form, M, fixed):
    """A vector x with q(x) = 1 that is h-orthogonal to every vector in ``fixed``."""
    eqs = []
    for g in fixed:
        Mg = [sum(M[i][j] * g[j] for j in range(len(g))) for i in range(len(g))]
        eqs.append([sum(lat_form[i][j] * Mg[j] for j in range(len(g))) for i in range(len(g))])
        eqs.append([sum(lat_form[i][j] * g[j] for j in range(len(g))) for i in range(len(g))])
    K = linalg.integer_kernel(eqs, len(Q))
    if not K:
        return None
    G = linalg.gram_of(K, Q)
    piv = linalg.leading_pivots(G)
    if piv is None or any(p <= 0 for p in piv):
        return None
    T, Gr = linalg.lll_gram(G)
    basis = [[sum(t * K[j][k] for j, t in enumerate(trow)) for k in range(len(Q))] for trow in T]
    hits = [(vec, val) for vec, val in linalg.enumerate_short(Gr, Fraction(1)) if val == 1]
    if not hits:
        return None
    hits.sort()
    y = hits[-1][0]  # lexicographically largest: leading coordinate positive
    return [sum(c * basis[j][k] for j, c in enumerate(y)) for k in range(len(Q))]


def cm_period_core(
    lat_form: Sequence[Sequence[int]],
    M: Sequence[Sequence[int]],
    Pi: list,
    functional: Callable[[Sequence[int]], EisensteinScalar],
    majorant: Sequence[Sequence[float]],
    prec: int = DEFAULT_PREC,
    radius: float = 4.0,
    retries: int = 3,
) -> PeriodData:
    """Normalized period data for a lattice with ⟨,⟩, σ and periods Π.

    ``functional`` maps a lattice vector to its exact first period (the
    coordinate on which σ acts by ω̄); ``majorant`` is a positive definite
    Gram used to bound the search for a vector of h-norm −1.
    """
    m = len(lat_form)
    g = m // 2
    U = symplectic_basis(lat_form)
    P = _project(Pi, U, prec)
    A = [row[:g] for row in P]
    B = [row[g:] for row in P]
    Zn = iv_solve(A, B, prec)
    sym = all(_overlaps(Zn[i][j], Zn[j][i]) for i in range(g) for j in range(g))
    with _reals.ivprec(prec):
        Y = [[(Zn[i][j].imag + Zn[j][i].imag) / 2 for j in range(g)] for i in range(g)]
    try:
        impos = iv_real_pivots_positive(Y, prec)
    except PrecisionExhausted:
        impos = False
    if not sym:
        raise AssertionError("period matrix A^-1 B is not symmetric: Omega and Phi are inconsistent")
    out = PeriodData("sigma-normalization-not-found", U, Zn, sym, impos)

    Q = _q_matrix(lat_form, M)
    M2 = _mm(M, M)
    r = radius
    for _ in range(retries + 1):
        for g0 in _negative_vector(Q, majorant, r):
            gammas = [g0]
            while len(gammas) < g:
                nxt = _unit_vector_in(Q, lat_form, M, gammas)
                if nxt is None:
                    break
                gammas.append(nxt)
            if len(gammas) < g:
                continue
            W = gammas + [_mv(M2, gammas[0])] + [_mv(M, x) for x in gammas[1:]]
            if _mm(_mm(W, lat_form), _transpose(W)) != symplectic_J(g):
                continue
            f0 = functional(gammas[0])
            if f0.is_zero():
                continue
            b = tuple(functional(x) / f0 for x in gammas[1:])
            Zx = siegel_point(b)
            PW = _project(Pi, W, prec)
            ZW = iv_solve([row[:g] for row in PW], [row[g:] for row in PW], prec)
            match = all(_overlaps(ZW[i][j], Zx.Z[i][j].to_iv(prec)) for i in range(g) for j in range(g))
            Ui = linalg.inverse([[Fraction(x) for x in row] for row in U], Fraction(1), Fraction(0))
            S = _mm(W, Ui)
            if any(Fraction(x).denominator != 1 for row in S for x in row):
                raise AssertionError("adapted basis is not a Z-basis")
            S = [[int(x) for x in row] for row in S]
            out.status = "ok"
            out.W, out.S, out.b, out.Z_exact, out.z_matches, out.radius = W, S, b, Zx, match, r
            return out
        r *= 2
    out.radius = r / 2
    return out


def _mv(M, x):
    return [sum(M[i][j] * x[j] for j in range(len(x))) for i in range(len(x))]


def tau1_functional(F: NumberField, cm: CMType) -> Callable[[Sequence[int]], EisensteinScalar]:
    place = cm.tau1

    def f(x):
        return lattice_element(F, x).at(place, minus=True)

    return f


def cm_period_data(F: NumberField, cm: CMType, pol: PolarizationData, prec: int = DEFAULT_PREC, **kw) -> PeriodData:
    if pol.hermitian_gram is None:
        positivity_check(pol, prec)
    majorant = [[float(x.mid) for x in row] for row in pol.hermitian_gram]
    Pi = period_lattice(F, cm, prec)
    return cm_period_core(pol.lattice_form, sigma_matrix(F), Pi, tau1_functional(F, cm), majorant, prec, **kw)


def toy_cayley_data(prec: int = DEFAULT_PREC):
    """Inputs of ``cm_period_core`` for E⁵ with the standard (4,1) form.

    Basis e₀, …, e₄, ω̄e₀, ωe₁, …, ωe₄ (Gram of ⟨,⟩ is J); the first period is
    conj(x₀) and the others are xᵢ; the majorant is Σ|xᵢ|².
    """
    from .siegel import omega_matrix

    g = 5
    J = symplectic_J(g)
    M = omega_matrix()

    def vec(x):
        out = []
        for i in range(g):
            if i == 0:
                out.append(EisensteinScalar(x[0], 0) + OMEGA_BAR * x[g])
            else:
                out.append(EisensteinScalar(x[i], x[g + i]))
        return out

    Pi = []
    with _reals.ivprec(prec):
        for i in range(g):
            row = []
            for k in range(2 * g):
                e = [0] * (2 * g)
                e[k] = 1
                z = vec(e)[i]
                row.append(z.conj().to_iv(prec) if i == 0 else z.to_iv(prec))
            Pi.append(row)
    major = [[0.0] * (2 * g) for _ in range(2 * g)]
    for a in range(2 * g):
        for c in range(2 * g):
            ea = [0] * (2 * g)
            ec = [0] * (2 * g)
            ea[a] = 1
            ec[c] = 1
            va, vc = vec(ea), vec(ec)
            major[a][c] = sum((x * y.conj()).to_complex().real for x, y in zip(va, vc))
    return J, M, Pi, (lambda x: vec(x)[0].conj()), major


# ---------------------------------------------------------------------------


def simplicity_check(F: NumberField, cm: CMType) -> bool | str:
    """True when K₀ is cyclic Galois (then K has only K₀ and Q(ω) as proper subfields).

    Under that hypothesis simplicity follows because the CM type restricts
    non-constantly to Q(ω) (one sign differs) and injectively to K₀.
    """
    if not is_cyclic_galois(F):
        return "simplicity-undecided"
    nonconstant = len(set(cm.sign_vector)) == 2
    return nonconstant


@dataclass
class CMCertificate:
    field: NumberField
    cm_type: CMType
    polarization: PolarizationData
    sigma: list
    checks: dict = field(default_factory=dict)
    period: PeriodData | None = None
    sigma_transported: list | None = None
    simplicity: object = None

    @property
    def passed(self) -> bool:
        return all(v is True for v in self.checks.values())

    def to_dict(self) -> dict:
        F = self.field
        pol = self.polarization
        d = {
            "field": {
                "polynomial": F.poly_str(),
                "coefficients": list(F.coeffs),
                "discriminant": F.claimed_disc,
                "class_number": F.class_number,
            },
            "cm_type": {"eps": str(self.cm_type.sign_vector), "tau_order": list(self.cm_type.order)},
            "polarization": {
                "d": str(pol.d),
                "beta": str(pol.beta),
                "alpha": str(pol.alpha),
                "gram": pol.gram,
            },
            "sigma": self.sigma,
            "checks": {k: v for k, v in self.checks.items()},
            "simplicity": self.simplicity,
        }
        if self.period is not None:
            p = self.period
            d["period"] = {
                "status": p.status,
                "U": p.U,
                "Z_U": [[format_iv(z) for z in row] for row in p.Z_numeric],
            }
            if p.status == "ok":
                d["period"].update(
                    {
                        "W": p.W,
                        "S": p.S,
                        "b": [format_scalar(x) for x in p.b],
                        "b_numeric": [format_numeric(x) for x in p.b],
                        "Z": p.Z_exact.to_strings(),
                        "search_radius": p.radius,
                    }
                )
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=False)

    def to_text(self) -> str:
        return format_report(self.to_dict())


def format_iv(z) -> str:
    from mpmath import mpf, nstr

    re, im = mpf(z.real.mid), mpf(z.imag.mid)
    err = max(z.real.delta, z.imag.delta) / 2
    return f"{nstr(re, 15)}{'-' if im < 0 else '+'}{nstr(abs(im), 15)}i (±{nstr(mpf(err), 2)})"


def format_report(d: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{pad}[{k}]")
            lines.append(format_report(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], list):
            lines.append(f"{pad}{k}:")
            for row in v:
                lines.append(pad + "  " + " ".join(str(x) for x in row))
        elif isinstance(v, bool):
            lines.append(f"{pad}{k}: {'pass' if v else 'FAIL'}")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def build_certificate(
    F: NumberField,
    eps: SignVector,
    d: FieldElement,
    prec: int = DEFAULT_PREC,
    with_period: bool = True,
) -> CMCertificate:
    """Run every stage and record one re-runnable check per flag."""
    cm = CMType(F, eps)
    checks = {}
    checks["eps_positive"] = epsilon_positive(d.inverse(), eps)
    pol = build_polarization(F, eps, d)
    checks["principally_polarized"] = True
    M = sigma_matrix(F)
    checks.update(sigma_checks(M, pol.gram))
    pos = positivity_check(pol, prec)
    checks["hermitian_positive"] = pos.positive
    checks["omega_is_im_h"] = pos.omega_consistent
    n_om, n_omb = eigentype(F, cm, M, prec)
    checks["type_4_1"] = (n_om, n_omb) == (F.n - 1, 1)
    cert = CMCertificate(F, cm, pol, M, checks)
    cert.simplicity = simplicity_check(F, cm)
    checks["simple"] = cert.simplicity is True
    if not with_period:
        return cert
    pd = cm_period_data(F, cm, pol, prec)
    cert.period = pd
    Mf = transport(M, pd.U)
    cert.sigma_transported = Mf
    J = symplectic_J(F.n)
    checks["sigma_symplectic_after_transport"] = _mm(_mm(_transpose(Mf), J), Mf) == J
    checks["z_symmetric"] = pd.z_symmetric
    checks["z_imag_positive"] = pd.z_imag_positive
    checks["sigma_normalized"] = pd.status == "ok"
    if pd.status == "ok":
        checks["z_matches_closed_form"] = pd.z_matches
        J5 = symplectic_J(F.n)
        checks["S_symplectic"] = _mm(_mm(pd.S, J5), _transpose(pd.S)) == J5
        from .siegel import ball_norm

        checks["b_in_ball"] = _reals.sign(1 - ball_norm(pd.b)) > 0
        checks["riemann_exact"] = riemann_check(period_matrix(pd.b)).passed
        checks["smooth"] = classify_point(BallPoint.from_b(pd.b)).kind == "smooth"
        checks["not_rational_over_Qw"] = not qomega_rationality(pd.b).rational
    return cert
