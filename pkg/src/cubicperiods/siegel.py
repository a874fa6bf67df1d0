"""Period matrices P(b) = (A, B), the ball-to-Siegel map Z(b), and related checks.

All matrices are lists of rows of ``EisensteinScalar``.  Entries are exact
whenever b is, so symmetry, isotropy and positivity are decided exactly; the
interval helpers at the bottom certify the same properties for numerically
known matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from mpmath import iv

from . import _reals, linalg
from .eisenstein import (
    ONE,
    OMEGA,
    OMEGA_BAR,
    THETA,
    ZERO,
    EisensteinScalar,
    LatticeMap,
    Signature,
)
from .errors import ContractViolation, DomainError, PrecisionExhausted

N = 5


def _coerce_b(b: Sequence) -> tuple[EisensteinScalar, ...]:
    out = []
    for x in b:
        out.append(EisensteinScalar.parse(x) if isinstance(x, str) else EisensteinScalar.coerce(x))
    if len(out) != N - 1:
        raise ContractViolation(message=f"b needs {N - 1} coordinates, got {len(out)}")
    return tuple(out)


def ball_norm(b: Sequence[EisensteinScalar]):
    """|b|² = Σ |bᵢ|² (an exact real)."""
    total = Fraction(0)
    for x in b:
        total = total + x.norm()
    return total


def bilinear_delta(b: Sequence[EisensteinScalar]) -> EisensteinScalar:
    """δ = det A = 1 − Σ bᵢ² (bilinear, no conjugation)."""
    acc = ONE
    for x in b:
        acc = acc - x * x
    return acc


def _check_ball(b):
    if _reals.sign(1 - ball_norm(b)) <= 0:
        raise DomainError("outside-ball", f"|b|^2 = {ball_norm(b)} is not < 1")


def matmul(A, B):
    return linalg.matmul(A, B, ZERO)


def conj_transpose(A):
    return [[x.conj() for x in col] for col in zip(*A)]


def transpose(A):
    return linalg.transpose(A)


def is_zero_matrix(A) -> bool:
    return all(x.is_zero() for row in A for x in row)


@dataclass
class PeriodMatrix:
    A: list
    B: list
    b: tuple | None = None

    def rows(self) -> list:
        return [list(a) + list(bb) for a, bb in zip(self.A, self.B)]

    def column(self, j: int) -> list:
        return [row[j] for row in self.rows()]


def period_matrix(b: Sequence) -> PeriodMatrix:
    """The normalized 5×10 period matrix with first row (1, b, ω, ω̄b)."""
    b = _coerce_b(b)
    _check_ball(b)
    A = [[ZERO] * N for _ in range(N)]
    B = [[ZERO] * N for _ in range(N)]
    A[0][0] = ONE
    B[0][0] = OMEGA
    for i in range(1, N):
        bi = b[i - 1]
        A[0][i] = bi
        A[i][0] = bi
        A[i][i] = ONE
        B[0][i] = OMEGA_BAR * bi
        B[i][0] = OMEGA_BAR * bi
        B[i][i] = OMEGA
    return PeriodMatrix(A, B, b)


@dataclass
class SiegelPoint:
    Z: list
    b: tuple | None = None

    def __getitem__(self, ij):
        i, j = ij
        return self.Z[i][j]

    def __eq__(self, other):
        if not isinstance(other, SiegelPoint):
            return NotImplemented
        return self.Z == other.Z

    def is_symmetric(self) -> bool:
        return all(self.Z[i][j] == self.Z[j][i] for i in range(N) for j in range(i + 1, N))

    def imag_pivots(self):
        """Leading pivots of the ω-coefficient matrix Y (Im Z = (√3/2)·Y)."""
        return linalg.leading_pivots([[x.om for x in row] for row in self.Z])

    def imag_positive(self) -> bool:
        """Im Z ≻ 0, decided by exact (or refined-interval) signs of pivots."""
        piv = self.imag_pivots()
        return piv is not None and all(_reals.sign(p) > 0 for p in piv)

    def shadow(self, prec: int = 113) -> list:
        return [[x.to_iv(prec) for x in row] for row in self.Z]

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) for x in row] for row in self.Z]


def siegel_point(b: Sequence) -> SiegelPoint:
    """Z(b) = ωI + (θ/δ)·[[b·b, −b], [−ᵗb, b⊗b]] with δ = 1 − b·b."""
    b = _coerce_b(b)
    _check_ball(b)
    delta = bilinear_delta(b)
    if delta.is_zero():
        raise DomainError("determinant-vanishes", "1 - b.b = 0")
    c = THETA / delta
    v = (None,) + b
    Z = [[ZERO] * N for _ in range(N)]
    bb = ONE - delta
    Z[0][0] = OMEGA + c * bb
    for i in range(1, N):
        Z[0][i] = Z[i][0] = -(c * v[i])
        for j in range(i, N):
            entry = c * v[i] * v[j]
            if i == j:
                entry = entry + OMEGA
            Z[i][j] = Z[j][i] = entry
    return SiegelPoint(Z, b)


def normalized_periods(P: PeriodMatrix) -> SiegelPoint:
    """Z = A⁻¹B by exact Gauss–Jordan elimination (independent of the closed form)."""
    try:
        Z = linalg.solve(P.A, P.B)
    except ZeroDivisionError as e:
        raise DomainError("determinant-vanishes", "A is singular") from e
    return SiegelPoint(Z, P.b)


def diagonal_entries(b: Sequence) -> list[EisensteinScalar]:
    """The numerators δ₀′, δ₁′, … of the diagonal of δ·Z(b).

    δ₀′ = ω − ω̄·b·b and δᵢ′ = ωδ + θbᵢ²: the second sign is forced by
    Z = A⁻¹B (with a minus sign the result is not A⁻¹B).
    """
    b = _coerce_b(b)
    delta = bilinear_delta(b)
    out = [OMEGA - OMEGA_BAR * (ONE - delta)]
    for x in b:
        out.append(OMEGA * delta + THETA * x * x)
    return out


def extract_b(Z) -> tuple[EisensteinScalar, ...]:
    """Invert the closed form: recover b from Z₀₀ and the first row.

    From Z₀₀ = ω + θ(1 − δ)/δ we get δ = 1/(1 + (Z₀₀ − ω)/θ), and then
    bᵢ = −Z₀ᵢ·δ/θ.  The candidate is accepted only if it reproduces Z exactly.
    """
    Zm = Z.Z if isinstance(Z, SiegelPoint) else [list(map(EisensteinScalar.coerce, r)) for r in Z]
    if len(Zm) != N or any(len(r) != N for r in Zm):
        raise DomainError("not-sigma-normalized", "Z must be 5x5")
    q = (Zm[0][0] - OMEGA) / THETA
    if (ONE + q).is_zero():
        raise DomainError("not-sigma-normalized", "Z00 is incompatible with the template")
    delta = ONE / (ONE + q)
    b = tuple(-(Zm[0][i] * delta / THETA) for i in range(1, N))
    try:
        back = siegel_point(b)
    except DomainError as e:
        raise DomainError("not-sigma-normalized", f"recovered b is invalid ({e.code})") from e
    if back.Z != Zm:
        raise DomainError("not-sigma-normalized", "Z does not have the shape of Z(b)")
    return b


# ---------------------------------------------------------------------------


@dataclass
class RiemannReport:
    isotropic: bool
    positive: bool
    pivots: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.isotropic and self.positive

    def lines(self) -> list[str]:
        return [
            f"isotropy P.J.P^T = 0: {'pass' if self.isotropic else 'FAIL'}",
            f"positivity i(AB* - BA*) > 0: {'pass' if self.positive else 'FAIL'}",
        ]


def isotropy_defect(P: PeriodMatrix) -> list:
    """P·J·ᵗP = A·ᵗB − B·ᵗA."""
    AB = matmul(P.A, transpose(P.B))
    BA = matmul(P.B, transpose(P.A))
    return [[x - y for x, y in zip(r, s)] for r, s in zip(AB, BA)]


def riemann_check(P: PeriodMatrix) -> RiemannReport:
    """Isotropy and positivity of the period matrix, both decided exactly.

    Positivity: θ·(AB* − BA*) is √3 times the hermitian matrix i(AB* − BA*),
    so its leading pivots must be real and positive.
    """
    iso = is_zero_matrix(isotropy_defect(P))
    AB = matmul(P.A, conj_transpose(P.B))
    BA = matmul(P.B, conj_transpose(P.A))
    H = [[THETA * (x - y) for x, y in zip(r, s)] for r, s in zip(AB, BA)]
    piv = linalg.leading_pivots(H)
    pos = piv is not None and all(p.is_real() and _reals.sign(p.re) > 0 for p in piv)
    return RiemannReport(iso, pos, piv or [])


# ---------------------------------------------------------------------------
# symplectic lift of lattice automorphisms
#
# E⁵ with h₀ of signature (4,1) carries the alternating form ⟨x, y⟩ = −(ω-part
# of h₀(x, y)).  In the Z-basis e₀, …, e₄, ω̄e₀, ωe₁, …, ωe₄ its Gram matrix is
# J.  The lift of g is the integer matrix of g acting on that basis.


def _real_coords(v: Sequence[EisensteinScalar]) -> list:
    a0, b0 = v[0].re, v[0].om
    e = [a0 - b0] + [x.re for x in v[1:]]
    f = [-b0] + [x.om for x in v[1:]]
    return e + f


def _basis_vector(k: int) -> list[EisensteinScalar]:
    v = [ZERO] * N
    if k < N:
        v[k] = ONE
    elif k == N:
        v[0] = OMEGA_BAR
    else:
        v[k - N] = OMEGA
    return v


def symplectic_J(n: int = N) -> list[list[int]]:
    return [[(1 if j == i + n else -1 if i == j + n else 0) for j in range(2 * n)] for i in range(2 * n)]


def symplectic_lift(g: LatticeMap) -> list[list[int]]:
    """10×10 integer matrix λ(g) with ᵗλ·J·λ = J, commuting with multiplication by ω."""
    if g.size != N:
        raise ContractViolation(message="lift is defined for 5x5 lattice maps")
    if not g.is_integral() or not g.preserves_form(Signature.S14):
        raise ContractViolation(message="g does not preserve the lattice and its form")
    cols = []
    for k in range(2 * N):
        image = g(_as_vec(_basis_vector(k)))
        cols.append(_real_coords(list(image)))
    out = [[cols[j][i] for j in range(2 * N)] for i in range(2 * N)]
    if any(Fraction(x).denominator != 1 for row in out for x in row):
        raise ContractViolation(message="lift is not integral")
    return [[int(x) for x in row] for row in out]


def _as_vec(coords):
    from .eisenstein import EisensteinVector

    return EisensteinVector(coords, Signature.S14)


def omega_matrix() -> list[list[int]]:
    """λ of multiplication by ω (order 3)."""
    return symplectic_lift(LatticeMap.scalar(OMEGA))


# ---------------------------------------------------------------------------


@dataclass
class RationalityResult:
    rational: bool
    b_rational: bool
    entries_rational: bool
    witness: list | None = None  # M with M·P = (I, Z) over Q(ω)
    span_matrix: list | None = None  # rational 10×10: columns of M·P in the Q-basis eⱼ, ωeⱼ
    offending: int | None = None  # index (1-based, as b₁…b₄) of the first non-Q(ω) coordinate

    def summary(self) -> str:
        if self.rational:
            return "rational over Q(w): isogenous to E^5 (E the Fermat elliptic curve)"
        return f"not rational over Q(w) (coordinate b{self.offending})"


def qomega_rationality(b: Sequence) -> RationalityResult:
    """Decide whether Λ⊗Q for P(b) equals Q(ω)⁵ after a complex-linear change of basis.

    For b ∈ Q(ω)⁴ the witness is M = A⁻¹ together with the rational matrix of
    the 10 columns of M·P(b) = (I, Z); it has nonzero determinant, so those
    columns span Q(ω)⁵ over Q.
    """
    b = _coerce_b(b)
    P = period_matrix(b)
    offending = next((i + 1 for i, x in enumerate(b) if not x.is_rational()), None)
    entries_rational = all(x.is_rational() for row in P.rows() for x in row)
    if offending is not None:
        return RationalityResult(False, False, entries_rational, offending=offending)
    M = linalg.inverse(P.A, ONE, ZERO)
    MP = matmul(M, P.rows())
    R = [[Fraction(0)] * (2 * N) for _ in range(2 * N)]
    for j in range(2 * N):
        for i in range(N):
            x = MP[i][j]
            R[2 * i][j] = Fraction(x.re)
            R[2 * i + 1][j] = Fraction(x.om)
    if linalg.det(R, Fraction(1)) == 0:
        return RationalityResult(False, True, entries_rational)
    return RationalityResult(True, True, entries_rational, M, R)


def verify_witness(res: RationalityResult, b: Sequence) -> bool:
    """Re-check a witness: M·P has entries in Q(ω) and its columns span Q(ω)⁵ over Q."""
    if not res.rational:
        return False
    P = period_matrix(_coerce_b(b))
    MP = matmul(res.witness, P.rows())
    if not all(x.is_rational() for row in MP for x in row):
        return False
    for j in range(2 * N):
        for i in range(N):
            if (res.span_matrix[2 * i][j], res.span_matrix[2 * i + 1][j]) != (MP[i][j].re, MP[i][j].om):
                return False
    return linalg.det(res.span_matrix, Fraction(1)) != 0


# ---------------------------------------------------------------------------
# text serialization


def format_scalar(x: EisensteinScalar) -> str:
    """``p/q+r/s*w`` for Q(ω); coefficients from a real field print as polynomials in r."""
    re_s, om_s = _fmt_coef(x.re), _fmt_coef(x.om)
    if _reals.is_zero(x.om):
        return re_s
    if _reals.is_zero(x.re):
        return f"{om_s}*w"
    sep = "" if om_s.startswith("-") else "+"
    return f"{re_s}{sep}{om_s}*w"


def _fmt_coef(c) -> str:
    if isinstance(c, (int, Fraction)):
        return str(Fraction(c))
    s = str(c)
    return s if c.is_rational() else f"({s})"


def parse_matrix(rows: Sequence[Sequence[str]]) -> list:
    return [[EisensteinScalar.parse(s) for s in row] for row in rows]


def format_numeric(x: EisensteinScalar, digits: int = 15) -> str:
    """Decimal shadow with a stated error bound."""
    z = x.to_iv(int(digits * 3.33) + 20)
    re_mid, im_mid = z.real.mid, z.imag.mid
    err = max(z.real.delta, z.imag.delta) / 2
    import mpmath

    re_s = mpmath.nstr(mpmath.mpf(re_mid), digits)
    im_s = mpmath.nstr(abs(mpmath.mpf(im_mid)), digits)
    sign = "-" if im_mid < 0 else "+"
    return f"{re_s}{sign}{im_s}i (±{mpmath.nstr(mpmath.mpf(err) + mpmath.mpf(10) ** (-digits), 2)})"


# ---------------------------------------------------------------------------
# interval certification for numerically known matrices


def iv_hermitian_pivots_positive(H, prec: int = 113) -> bool:
    """Certify that a complex-interval hermitian matrix is positive definite.

    LDL* elimination in interval arithmetic; every pivot's real part must
    exclude zero on the positive side.  Returns False if a pivot is certified
    non-positive; raises PrecisionExhausted when a pivot straddles zero.
    """
    n = len(H)
    with _reals.ivprec(prec):
        M = [[x if hasattr(x, "_mpci_") else iv.mpc(x) for x in row] for row in H]
        for k in range(n):
            p = M[k][k].real
            if p.a > 0:
                pass
            elif p.b <= 0:
                return False
            else:
                raise PrecisionExhausted(f"pivot {k} is not certified at {prec} bits")
            for i in range(k + 1, n):
                f = M[i][k] / M[k][k].real
                for j in range(k + 1, n):
                    M[i][j] = M[i][j] - f * M[k][j]
    return True


def iv_real_pivots_positive(S, prec: int = 113) -> bool:
    """Certify that a real-interval symmetric matrix is positive definite."""
    n = len(S)
    with _reals.ivprec(prec):
        M = [[iv.mpf(x) for x in row] for row in S]
        for k in range(n):
            p = M[k][k]
            if p.a <= 0:
                if p.b <= 0:
                    return False
                raise PrecisionExhausted(f"pivot {k} is not certified at {prec} bits")
            for i in range(k + 1, n):
                f = M[i][k] / p
                for j in range(k + 1, n):
                    M[i][j] = M[i][j] - f * M[k][j]
    return True
