from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicperiods.eisenstein import (
    OMEGA,
    OMEGA_BAR,
    ONE,
    ORDER6_UNITS,
    THETA,
    UNITS,
    ZERO,
    EisensteinScalar,
    EisensteinVector,
    LatticeMap,
    Signature,
    hermitian_form,
    hexaflection,
    orbit_bfs,
)
from cubicperiods.errors import ContractViolation

from conftest import eis_int, eis_rat, vectors


def vec(*cs, tag=Signature.S14):
    return EisensteinVector([EisensteinScalar.coerce(c) for c in cs], tag)


E = [EisensteinVector.basis(i) for i in range(5)]


def test_scalar_identities():
    assert OMEGA * OMEGA == OMEGA_BAR
    assert OMEGA ** 3 == ONE
    assert OMEGA + OMEGA_BAR + ONE == ZERO
    assert THETA * THETA == EisensteinScalar(-3)
    assert THETA == ONE + OMEGA * 2
    assert len(set(UNITS)) == 6 and all(u.norm() == 1 for u in UNITS)


@pytest.mark.parametrize(
    "text,expected",
    [("1/2", (Fraction(1, 2), 0)), ("w", (0, 1)), ("-w", (0, -1)), ("1/2+3/7*w", (Fraction(1, 2), Fraction(3, 7))),
     ("3+1*w", (3, 1)), ("2-2/3w", (2, Fraction(-2, 3)))],
)
def test_parse_scalar(text, expected):
    x = EisensteinScalar.parse(text)
    assert (x.re, x.om) == expected


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        EisensteinScalar.parse("")
    with pytest.raises(ValueError):
        EisensteinScalar.parse("1/0")


def test_standard_norms():
    assert vec(1, 0, 0, 0, 0).norm() == ONE
    assert vec(0, 1, 0, 0, 0).norm() == -ONE
    fermat = vec(2 - OMEGA_BAR, 1, 1, 1, 1)
    assert fermat[0] == EisensteinScalar(3, 1)
    assert fermat.norm() == EisensteinScalar(3)
    assert vec(3, 1, 1, 1, 1).norm() == EisensteinScalar(5)


def test_signature_tags_do_not_mix():
    x = vec(1, 0, 0, 0, 0)
    y = vec(1, 0, 0, 0, 0, tag=Signature.S41)
    assert y.norm() == -ONE
    with pytest.raises(ContractViolation):
        hermitian_form(x, y)


@given(eis_rat, eis_rat, eis_rat)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * b).norm() == a.norm() * b.norm()
    if not a.is_zero():
        assert (b / a) * a == b


@given(vectors(eis_rat), vectors(eis_rat))
def test_form_is_hermitian(x, y):
    assert hermitian_form(x, y) == hermitian_form(y, x).conj()
    assert x.norm().is_real()


@given(vectors(), vectors(), eis_int, eis_int)
def test_form_is_sesquilinear(x, y, a, b):
    lhs = hermitian_form(x.scale(a) + y.scale(b), x)
    assert lhs == a * hermitian_form(x, x) + b * hermitian_form(y, x)
    assert hermitian_form(x, y.scale(a)) == a.conj() * hermitian_form(x, y)


# ---------------------------------------------------------------------------
# hexaflections

root_vectors = st.builds(
    lambda i, u, w: EisensteinVector.basis(i).scale(u) if w is None else w,
    st.integers(1, 4), st.sampled_from(UNITS), st.none(),
) | st.sampled_from([vec(1, 1, 1, 0, 0), vec(1, 1, 0, 1, 0).scale(OMEGA), vec(1 + OMEGA, 1, 0, 0, 1), vec(2, 2, 1, 0, 0)])


def test_root_vector_pool_has_norm_minus_one():
    for v in (vec(1, 1, 1, 0, 0), vec(1 + OMEGA, 1, 0, 0, 1), vec(2, 2, 1, 0, 0)):
        assert v.norm() == -ONE


@settings(max_examples=40, deadline=None)
@given(root_vectors, st.sampled_from(ORDER6_UNITS))
def test_hexaflection_order_six(v, mu):
    R = hexaflection(v, mu)
    I = LatticeMap.identity()
    assert R ** 6 == I
    assert R ** 2 != I
    assert R ** 3 != I


@settings(max_examples=40, deadline=None)
@given(root_vectors, vectors())
def test_hexaflection_isometry_and_integrality(v, x):
    R = hexaflection(v)
    assert R.is_integral()
    assert R.preserves_form()
    assert R(x).norm() == x.norm()
    assert R(x).is_integral()
    assert R(v) == v.scale(-OMEGA_BAR)


def test_hexaflection_fixes_orthogonal_vectors():
    R = hexaflection(E[1])
    assert R(E[2]) == E[2]
    assert R(E[0]) == E[0]
    assert R(E[1]) == E[1].scale(-OMEGA_BAR)


def test_hexaflection_contract():
    with pytest.raises(ContractViolation):
        hexaflection(E[0])  # norm +1
    with pytest.raises(ContractViolation):
        hexaflection(E[1], OMEGA)  # order 3
    with pytest.raises(ContractViolation):
        hexaflection(vec(0, 1, 0, 0, 0, tag=Signature.S41))


def test_orbit_without_generators():
    assert orbit_bfs(E[0], [], 5) == [E[0]]


def test_orbit_of_e0_under_coordinate_reflections():
    gens = [hexaflection(E[i]) for i in range(1, 5)]
    orbit = orbit_bfs(E[0], gens, 3)
    assert orbit == [E[0]]  # every generator fixes e₀


def test_orbit_reaches_new_norm_one_vectors():
    # one reflection generates a cyclic group of order 6, so bound 10 stays finite
    orbit = orbit_bfs(E[0], [hexaflection(vec(1, 1, 1, 0, 0))], 10)
    assert len(orbit) == 6
    assert all(w.norm() == ONE for w in orbit)
    proportional = {E[0].scale(u) for u in UNITS}
    assert any(w not in proportional for w in orbit)


def test_orbit_with_several_generators_is_deterministic():
    gens = [hexaflection(v) for v in (E[1], E[2], vec(1, 1, 1, 0, 0), vec(1, 0, 1, 1, 0))]
    orbit = orbit_bfs(E[0], gens, 1)
    members = set(orbit)
    # closed under the generators, up to the height cut-off
    assert all(g(w) in members or g(w).height() > 1 for w in orbit for g in gens)
    assert all(w.norm() == ONE and w.height() <= 1 for w in orbit)
    assert len(orbit) == len(set(orbit))
    assert orbit == orbit_bfs(E[0], gens, 1)
