import itertools
import math
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cubicperiods import linalg

int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
)


def naive_det(A):
    n = len(A)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * math.prod(A[i][perm[i]] for i in range(n))
    return total


@given(int_matrices)
def test_int_det_matches_leibniz(A):
    assert linalg.int_det(A) == naive_det(A)
    assert linalg.det([[Fraction(x) for x in r] for r in A], Fraction(1)) == naive_det(A)


@given(int_matrices)
def test_inverse(A):
    assume(naive_det(A) != 0)
    F = [[Fraction(x) for x in r] for r in A]
    Ai = linalg.inverse(F, Fraction(1), Fraction(0))
    assert linalg.matmul(F, Ai) == linalg.identity(len(A), Fraction(1), Fraction(0))


@given(st.lists(st.lists(st.integers(-5, 5), min_size=6, max_size=6), min_size=1, max_size=4))
def test_integer_kernel(rows):
    K = linalg.integer_kernel(rows, 6)
    for v in K:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    # rank-nullity over Q
    R = [[Fraction(x) for x in r] for r in rows]
    piv = 0
    for c in range(6):
        p = next((i for i in range(piv, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[piv], R[p] = R[p], R[piv]
        for i in range(len(R)):
            if i != piv and R[i][c]:
                f = R[i][c] / R[piv][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[piv])]
        piv += 1
    rank = piv
    assert len(K) == 6 - rank


@settings(deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_lll_preserves_lattice(A):
    assume(naive_det(A) != 0)
    G = linalg.matmul(A, linalg.transpose(A))
    T, G2 = linalg.lll_gram(G)
    assert abs(linalg.int_det(T)) == 1
    assert linalg.gram_of(T, G) == G2
    # LLL guarantee: |b₁|² ≤ 2^(n−1)·λ₁², and λ₁² is at most any diagonal entry
    assert G2[0][0] <= 4 * min(G[i][i] for i in range(3))
