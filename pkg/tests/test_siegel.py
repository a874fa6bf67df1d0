import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicperiods import linalg
from cubicperiods.arrangement import BallPoint
from cubicperiods.eisenstein import OMEGA, OMEGA_BAR, ONE, THETA, ZERO, EisensteinScalar, LatticeMap, hexaflection, EisensteinVector
from cubicperiods.errors import ContractViolation, DomainError
from cubicperiods.siegel import (
    PeriodMatrix,
    bilinear_delta,
    diagonal_entries,
    extract_b,
    format_numeric,
    format_scalar,
    iv_hermitian_pivots_positive,
    normalized_periods,
    omega_matrix,
    parse_matrix,
    period_matrix,
    qomega_rationality,
    riemann_check,
    siegel_point,
    symplectic_J,
    symplectic_lift,
    verify_witness,
)

from conftest import ball_points, random_ball_point

HALF = (Fraction(1, 2), 0, 0, 0)
I5 = [[ONE if i == j else ZERO for j in range(5)] for i in range(5)]


def test_period_matrix_at_origin():
    P = period_matrix((0, 0, 0, 0))
    assert P.A == I5
    assert P.B == [[OMEGA if i == j else ZERO for j in range(5)] for i in range(5)]


def test_period_matrix_template_row():
    P = period_matrix(HALF)
    h = EisensteinScalar(Fraction(1, 2))
    assert P.rows()[0] == [ONE, h, ZERO, ZERO, ZERO, OMEGA, OMEGA_BAR * h, ZERO, ZERO, ZERO]


@settings(max_examples=30, deadline=None)
@given(ball_points())
def test_twisted_columns(b):
    P = period_matrix(b)
    rows = P.rows()
    # column j+5 is ω·(column j) on row 0 and ω̄·(column j) on rows 1-4, up to the diagonal swap
    for j in range(1, 5):
        assert rows[0][5 + j] == OMEGA_BAR * rows[0][j]
        assert rows[j][5] == OMEGA_BAR * rows[j][0]
    assert rows[0][5] == OMEGA * rows[0][0]


def test_outside_ball():
    with pytest.raises(DomainError) as e:
        period_matrix((1, 0, 0, 0))
    assert e.value.code == "outside-ball"
    with pytest.raises(ContractViolation):
        period_matrix((0, 0, 0))


def test_origin_siegel_point():
    Z = siegel_point((0, 0, 0, 0))
    assert Z.Z == [[OMEGA if i == j else ZERO for j in range(5)] for i in range(5)]


def test_half_point_closed_form():
    Z = siegel_point(HALF)
    c = THETA * Fraction(4, 3)
    M = [[Fraction(0)] * 5 for _ in range(5)]
    M[0][0], M[0][1], M[1][0], M[1][1] = Fraction(1, 4), Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 4)
    expected = [[(OMEGA if i == j else ZERO) + c * M[i][j] for j in range(5)] for i in range(5)]
    assert Z.Z == expected
    assert normalized_periods(period_matrix(HALF)).Z == expected


@settings(max_examples=60, deadline=None)
@given(ball_points())
def test_closed_form_equals_elimination(b):
    Z = siegel_point(b)
    assert Z == normalized_periods(period_matrix(b))
    assert Z.is_symmetric()
    assert Z.imag_positive()


@settings(max_examples=40, deadline=None)
@given(ball_points())
def test_diagonal_sign(b):
    Z = siegel_point(b)
    delta = bilinear_delta(b)
    d = diagonal_entries(b)
    for i in range(5):
        assert Z.Z[i][i] * delta == d[i]
    # the opposite sign for the lower diagonal disagrees with A⁻¹B whenever some bᵢ ≠ 0
    for i, x in enumerate(b, start=1):
        if not x.is_zero():
            assert OMEGA * delta - THETA * x * x != Z.Z[i][i] * delta


@settings(max_examples=40, deadline=None)
@given(ball_points())
def test_extract_round_trip(b):
    assert extract_b(siegel_point(b)) == tuple(b)


def test_extract_rejects_foreign_shapes():
    Z = [row[:] for row in siegel_point(HALF).Z]
    Z[0][1] = Z[0][1] + ONE
    with pytest.raises(DomainError) as e:
        extract_b(Z)
    assert e.value.code == "not-sigma-normalized"
    assert extract_b(siegel_point((0, 0, 0, 0))) == (ZERO,) * 4


# ---------------------------------------------------------------------------
# Riemann relations


def test_riemann_at_origin():
    rep = riemann_check(period_matrix((0, 0, 0, 0)))
    assert rep.passed
    assert all(p == EisensteinScalar(3) for p in rep.pivots)


@settings(max_examples=50, deadline=None)
@given(ball_points())
def test_riemann_holds_on_the_ball(b):
    assert riemann_check(period_matrix(b)).passed


def test_broken_template_fails_isotropy():
    P = period_matrix((Fraction(1, 3), Fraction(1, 5), 0, 0))
    B = [row[:] for row in P.B]
    B[0][0] = OMEGA_BAR
    assert not riemann_check(PeriodMatrix(P.A, B, P.b)).isotropic


def test_interval_positivity_agrees_on_samples():
    rng = random.Random(7)
    for _ in range(20):
        b = random_ball_point(rng)
        Z = siegel_point(b)
        Y = [[(x - x.conj()) * (-THETA) for x in row] for row in Z.Z]  # 3·Y as a real matrix, in Q(ω)
        assert iv_hermitian_pivots_positive([[y.to_iv() for y in row] for row in Y])


# ---------------------------------------------------------------------------
# symplectic lift


def is_symplectic(S):
    J = symplectic_J()
    return linalg.matmul(linalg.matmul(linalg.transpose(S), J), S) == J


def test_lift_of_identity():
    assert symplectic_lift(LatticeMap.identity()) == linalg.identity(10)


def test_lift_of_omega():
    W = omega_matrix()
    W2 = linalg.matmul(W, W)
    assert all(W2[i][j] + W[i][j] + (i == j) == 0 for i in range(10) for j in range(10))
    assert is_symplectic(W)


reflection_roots = st.sampled_from(
    [EisensteinVector.basis(i) for i in range(1, 5)]
    + [EisensteinVector([EisensteinScalar(c) for c in v]) for v in ((1, 1, 1, 0, 0), (1, 0, 1, 1, 0), (2, 2, 1, 0, 0))]
)


@settings(max_examples=25, deadline=None)
@given(reflection_roots, reflection_roots)
def test_lift_is_a_homomorphism(u, v):
    g, h = hexaflection(u), hexaflection(v)
    Lg, Lh = symplectic_lift(g), symplectic_lift(h)
    assert is_symplectic(Lg)
    assert symplectic_lift(g @ h) == linalg.matmul(Lg, Lh)
    assert linalg.matmul(Lg, omega_matrix()) == linalg.matmul(omega_matrix(), Lg)


def test_lift_rejects_non_isometries():
    with pytest.raises(ContractViolation):
        symplectic_lift(LatticeMap.scalar(EisensteinScalar(2)))


# ---------------------------------------------------------------------------
# rationality over Q(ω)


def test_origin_is_rational_with_identity_witness():
    res = qomega_rationality((0, 0, 0, 0))
    assert res.rational and res.witness == I5
    assert verify_witness(res, (0, 0, 0, 0))


def test_fermat_point_is_rational():
    p = BallPoint.parse("3+w,1,1,1,1")
    b = p.b()
    res = qomega_rationality(b)
    assert res.rational and verify_witness(res, b)


def test_random_rational_points_have_witnesses():
    rng = random.Random(2024)
    for _ in range(200):
        b = random_ball_point(rng)
        res = qomega_rationality(b)
        assert res.rational and verify_witness(res, b)


def test_witness_check_catches_tampering():
    b = (Fraction(1, 3), 0, Fraction(1, 4), 0)
    res = qomega_rationality(b)
    res.span_matrix[0][0] += 1
    assert not verify_witness(res, b)


# ---------------------------------------------------------------------------
# text formats


@pytest.mark.parametrize("x,text", [(EisensteinScalar(Fraction(1, 2), Fraction(-3, 7)), "1/2-3/7*w"), (ZERO, "0"), (OMEGA, "1*w")])
def test_format_scalar(x, text):
    assert format_scalar(x) == text
    assert parse_matrix([[text]])[0][0] == x


def test_format_numeric():
    assert format_numeric(THETA) == "0.0+1.73205080756888i (±1.0e-15)"
