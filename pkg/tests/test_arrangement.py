import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cubicperiods import linalg
from cubicperiods.arrangement import (
    BallPoint,
    Hyperplane,
    canonical_normal,
    classify_point,
    is_negative_definite,
    orthogonal_complement_lattice,
    short_vectors,
)
from cubicperiods.eisenstein import (
    OMEGA,
    OMEGA_BAR,
    ONE,
    UNITS,
    EisensteinScalar,
    EisensteinVector,
    hermitian_form,
    hexaflection,
)
from cubicperiods.errors import DomainError

from conftest import eis_int, vectors


E = [EisensteinVector.basis(i) for i in range(5)]


def vec(*cs):
    return EisensteinVector([EisensteinScalar.coerce(c) for c in cs])


def brute_force_short(G, target):
    """Independent oracle: box bounds from the inverse Gram, then full enumeration."""
    P = [[-Fraction(x) for x in r] for r in G]
    n = len(P)
    Pi = linalg.inverse(P, Fraction(1), Fraction(0))
    bounds = [math.isqrt(int(target * Pi[i][i])) + 1 for i in range(n)]
    out = []
    for x in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if sum(x[i] * P[i][j] * x[j] for i in range(n) for j in range(n)) == target:
            out.append(x)
    return sorted(out)


@st.composite
def negative_definite_grams(draw):
    n = draw(st.integers(1, 4))
    A = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n))
    assume(linalg.int_det(A) != 0)
    return [[-sum(A[k][i] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


@settings(max_examples=60, deadline=None)
@given(negative_definite_grams(), st.integers(1, 4))
def test_short_vectors_match_box_enumeration(G, target):
    assert short_vectors(G, target) == brute_force_short(G, target)


def test_short_vectors_rank_one():
    assert short_vectors([[-1]], 1) == [(-1,), (1,)]
    assert short_vectors([[-1]], 0) == []


def test_short_vectors_rejects_indefinite():
    with pytest.raises(DomainError):
        short_vectors([[1, 0], [0, -1]], 1)


def test_negative_definite():
    assert is_negative_definite([[-2, 1], [1, -2]])
    assert not is_negative_definite([[-1, 2], [2, -1]])


# ---------------------------------------------------------------------------
# complements


def test_complement_of_e0():
    L = orthogonal_complement_lattice(BallPoint([1, 0, 0, 0, 0]))
    assert L.rank == 8  # Z-rank; E-rank 4
    for v in L.vectors():
        assert v[0].is_zero()
    roots = short_vectors(L, 1)
    expected = {E[i].scale(u) for i in range(1, 5) for u in UNITS}
    assert len(roots) == 24 and set(roots) == expected


def test_complement_of_two_one():
    p = BallPoint([2, 1, 0, 0, 0])
    L = orthogonal_complement_lattice(p)
    assert L.rank == 8
    for v in L.vectors():
        assert v[1] == v[0] * 2
    for i in (2, 3, 4):
        assert hermitian_form(E[i], p.vector()).is_zero()
    roots = short_vectors(L, 1)
    assert {canonical_normal(v) for v in roots} == {E[2], E[3], E[4]}


def test_complement_with_irregular_coordinates():
    b1 = EisensteinScalar(Fraction(1, 3), 0) + OMEGA * Fraction(1, 7)
    p = BallPoint([ONE, b1, 0, 0, 0])
    L = orthogonal_complement_lattice(p)
    assert 0 < L.rank <= 8
    for w in L.vectors():
        assert hermitian_form(w, p.vector()).is_zero()
    assert is_negative_definite(L.gram)


def test_numeric_point_is_refused():
    p = BallPoint(numeric_shadow=[1, 0, 0, 0, 0])
    with pytest.raises(DomainError) as e:
        orthogonal_complement_lattice(p)
    assert e.value.code == "exact-required"


def test_ball_point_checks_sign():
    with pytest.raises(DomainError) as e:
        BallPoint([0, 1, 0, 0, 0])
    assert e.value.code == "not-in-ball"
    with pytest.raises(ValueError):
        BallPoint.parse("1,2,3")
    assert BallPoint.parse("1/2,0,0,0").coords == BallPoint([1, Fraction(1, 2), 0, 0, 0]).coords


# ---------------------------------------------------------------------------
# canonical normals and hyperplanes


@given(vectors(eis_int))
def test_canonical_normal_is_unit_invariant(v):
    assume(not v.is_zero())
    c = canonical_normal(v)
    assert canonical_normal(c) == c
    for u in UNITS:
        assert canonical_normal(v.scale(u)) == c


def test_hyperplane_requires_canonical_root():
    with pytest.raises(ValueError):
        Hyperplane(E[1].scale(OMEGA))
    with pytest.raises(ValueError):
        Hyperplane(E[0])
    assert Hyperplane.from_vector(E[1].scale(OMEGA)).normal == E[1]


# ---------------------------------------------------------------------------
# classification


def test_cayley_point():
    c = classify_point(BallPoint([1, 0, 0, 0, 0]))
    assert c.kind == "nodal" and c.k == 4
    normals = [h.normal for h in c.hyperplanes]
    assert set(normals) == {E[1], E[2], E[3], E[4]}
    for a, b in itertools.combinations(normals, 2):
        assert hermitian_form(a, b).is_zero()
    assert c.summary() == "nodal, 4 hyperplanes"


def test_three_node_point():
    c = classify_point(BallPoint.parse("2,1,0,0,0"))
    assert c.k == 3 and {h.normal for h in c.hyperplanes} == {E[2], E[3], E[4]}
    assert c.summary() == "nodal, 3 hyperplanes"


@pytest.mark.parametrize("text,norm", [("3+w,1,1,1,1", 3), ("3,1,1,1,1", 5)])
def test_fermat_and_clebsch_are_smooth(text, norm):
    p = BallPoint.parse(text)
    assert p.norm() == EisensteinScalar(norm)
    c = classify_point(p)
    assert c.kind == "smooth" and c.k == 0 and c.summary() == "smooth"


def test_fermat_entry_is_two_minus_omega_bar():
    assert BallPoint.parse("3+w,1,1,1,1").coords[0] == 2 - OMEGA_BAR


small_int = st.builds(EisensteinScalar, st.integers(-2, 2), st.integers(-2, 2))
# each |vᵢ|² ≤ 12, so the norm is at least 49 − 48 > 0
positive_points = st.tuples(small_int, small_int, small_int, small_int).map(
    lambda t: vec(EisensteinScalar(7), *t)
)


@settings(max_examples=25, deadline=None)
@given(positive_points, st.sampled_from(UNITS))
def test_classification_is_unit_invariant(v, u):
    a = classify_point(BallPoint(list(v)))
    b = classify_point(BallPoint(list(v.scale(u))))
    assert [h.normal for h in a.hyperplanes] == [h.normal for h in b.hyperplanes]


@settings(max_examples=15, deadline=None)
@given(positive_points, st.sampled_from([E[1], E[2], vec(1, 1, 1, 0, 0)]))
def test_classification_is_equivariant_under_reflections(v, r):
    R = hexaflection(r)
    a = classify_point(BallPoint(list(v)))
    b = classify_point(BallPoint(list(R(v))))
    moved = {canonical_normal(R(h.normal)) for h in a.hyperplanes}
    assert moved == {h.normal for h in b.hyperplanes}
