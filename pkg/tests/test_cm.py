import random

import pytest

from cubicperiods import linalg
from cubicperiods.arrangement import BallPoint, classify_point
from cubicperiods.cm import (
    CMElement,
    CMType,
    build_certificate,
    build_polarization,
    cm_period_core,
    eigentype,
    polarization_from_alpha,
    positivity_check,
    sigma_checks,
    sigma_matrix,
    simplicity_check,
    symplectic_basis,
    toy_cayley_data,
    transport,
)
from cubicperiods.eisenstein import OMEGA, ZERO, EisensteinScalar
from cubicperiods.errors import ContractViolation, DomainError
from cubicperiods.numberfield import NumberField, SignVector
from cubicperiods.siegel import ball_norm, qomega_rationality, riemann_check, period_matrix, symplectic_J


@pytest.fixture(scope="module")
def pol(cyclo11_data):
    return build_polarization(cyclo11_data["F"], cyclo11_data["eps"], cyclo11_data["delta"])


@pytest.fixture(scope="module")
def cert(cyclo11_data):
    return build_certificate(cyclo11_data["F"], cyclo11_data["eps"], cyclo11_data["delta"])


def test_cm_element_arithmetic(cyclo11):
    F = cyclo11
    a = CMElement(F.gen, F.one)
    b = CMElement(F.one, F.gen * 2)
    assert (a * b).conj() == a.conj() * b.conj()
    assert a * a.inverse() == CMElement.from_base(F.one)
    assert (a * a.conj()).y.is_zero()
    assert a.relative_norm() == (a * a.conj()).x


def test_cm_type_contract(cyclo11):
    with pytest.raises(ContractViolation):
        CMType(cyclo11, SignVector.parse("+,-,-,+,+"))
    with pytest.raises(ContractViolation):
        CMType(cyclo11, SignVector.parse("+,+,+,+,+"))
    t = CMType(cyclo11, SignVector.parse("+,+,-,+,+"))
    assert t.order == (2, 0, 1, 3, 4)
    assert t.omega_images()[0] == OMEGA.conj() and t.omega_images()[1:] == (OMEGA,) * 4


def test_polarization_is_principal(pol):
    G = pol.gram
    assert all(isinstance(x, int) for row in G for x in row)
    assert all(G[k][k] == 0 for k in range(10))
    assert all(G[k][l] == -G[l][k] for k in range(10) for l in range(10))
    assert linalg.int_det(G) == 1


def test_scaled_alpha_is_not_principal(cyclo11_data, pol):
    a2 = pol.alpha * CMElement.from_base(cyclo11_data["F"].from_rational(2))
    with pytest.raises(DomainError) as e:
        polarization_from_alpha(cyclo11_data["F"], cyclo11_data["eps"], cyclo11_data["delta"], a2)
    assert e.value.code == "not-principal"


def test_three_must_be_unramified():
    F = NumberField((1, -3, 0, 1), 81, 1)  # x³ − 3x + 1
    with pytest.raises(DomainError) as e:
        build_polarization(F, SignVector.parse("+,+,-"), F.one)
    assert e.value.code == "three-ramified"


def test_sigma(cyclo11_data, pol):
    M = sigma_matrix(cyclo11_data["F"])
    assert sigma_checks(M, pol.gram) == {"sigma_cube_root": True, "sigma_preserves_form": True}


def test_eigentype(cyclo11_data):
    F = cyclo11_data["F"]
    assert eigentype(F, CMType(F, cyclo11_data["eps"]), sigma_matrix(F)) == (4, 1)


def test_positivity(pol):
    res = positivity_check(pol)
    assert res.positive and res.omega_consistent
    assert all(s > 0 for s in res.beta_signs)


def test_flipped_sign_is_not_positive(cyclo11_data):
    flipped = build_polarization(cyclo11_data["F"], SignVector.parse("+,+,+,+,+"), cyclo11_data["delta"])
    assert not positivity_check(flipped).positive


# ---------------------------------------------------------------------------
# symplectic reduction


def test_symplectic_basis_of_J():
    J = symplectic_J(5)
    assert symplectic_basis(J) == linalg.identity(10)


def test_symplectic_basis_of_permuted_J():
    perm = [3, 7, 0, 9, 1, 5, 2, 8, 4, 6]
    P = [[1 if j == perm[i] else 0 for j in range(10)] for i in range(10)]
    J = symplectic_J(5)
    G = linalg.matmul(linalg.matmul(linalg.transpose(P), J), P)
    U = symplectic_basis(G)
    assert all(sorted(row) == [0] * 9 + [1] for row in U)
    assert linalg.matmul(linalg.matmul(U, G), linalg.transpose(U)) == J


def random_unimodular(rng, n=10, steps=40):
    V = linalg.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        V[i] = [a + c * b for a, b in zip(V[i], V[j])]
    rng.shuffle(V)
    return V


def test_symplectic_basis_on_random_conjugates():
    rng = random.Random(11)
    J = symplectic_J(5)
    for _ in range(50):
        V = random_unimodular(rng)
        G = linalg.matmul(linalg.matmul(V, J), linalg.transpose(V))
        U = symplectic_basis(G)
        assert linalg.matmul(linalg.matmul(U, G), linalg.transpose(U)) == J


def test_symplectic_basis_rejects_bad_input():
    with pytest.raises(DomainError):
        symplectic_basis([[0, 2], [-2, 0]])
    with pytest.raises(DomainError):
        symplectic_basis([[1, 0], [0, 1]])


# ---------------------------------------------------------------------------
# periods


def test_toy_cayley_path():
    J, M, Pi, f, major = toy_cayley_data()
    pd = cm_period_core(J, M, Pi, f, major, 113)
    assert pd.status == "ok"
    assert all(x == ZERO for x in pd.b)
    assert pd.Z_exact.Z == [[OMEGA if i == j else ZERO for j in range(5)] for i in range(5)]


def test_certificate(cert):
    failed = [k for k, v in cert.checks.items() if v is not True]
    assert not failed
    assert cert.simplicity is True
    assert cert.period.status == "ok"


def test_certificate_transport_is_consistent(cert):
    assert cert.sigma_transported == transport(cert.sigma, cert.period.U)
    J = symplectic_J(5)
    U = cert.period.U
    assert linalg.matmul(linalg.matmul(U, cert.polarization.lattice_form), linalg.transpose(U)) == J


def test_extracted_point(cert):
    b = cert.period.b
    assert 1 - ball_norm(b) > 0
    assert riemann_check(period_matrix(b)).passed
    assert classify_point(BallPoint.from_b(b)).kind == "smooth"
    assert any(not x.is_rational() for x in b)


def test_irrational_points_are_not_rational(cert):
    b = cert.period.b
    res = qomega_rationality(b)
    assert not res.rational and res.witness is None
    assert "not rational over Q(w)" in res.summary()
    # one irrational coordinate at a time
    seen = 0
    for k, x in enumerate(b, start=1):
        if x.is_rational():
            continue
        single = tuple(x if i == k else EisensteinScalar(0) for i in range(1, 5))
        r = qomega_rationality(single)
        assert not r.rational and r.offending == k
        seen += 1
    assert seen >= 3


def test_simplicity(cyclo11_data):
    F = cyclo11_data["F"]
    assert simplicity_check(F, CMType(F, cyclo11_data["eps"])) is True
    G = NumberField((-3, 8, 1, -6, 0, 1), 89417, 1)
    assert simplicity_check(G, CMType(G, SignVector.parse("-,+,+,+,+"))) == "simplicity-undecided"


def test_certificate_serializes(cert):
    d = cert.to_dict()
    assert d["checks"]["type_4_1"] is True or d["checks"]["type_4_1"] == "pass"
    assert "[checks]" in cert.to_text()
    assert cert.to_json().startswith("{")
