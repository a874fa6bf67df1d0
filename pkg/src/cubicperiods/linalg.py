"""Exact linear algebra over generic fields, integer lattices and enumeration.

Matrices are plain lists of rows.  The generic routines only need ``+ - * /``
and equality with zero, so they work over ``Fraction``, ``EisensteinScalar``
and number-field elements alike.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list


def _is_zero(x) -> bool:
    z = getattr(x, "is_zero", None)
    return z() if z is not None else x == 0


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], zero=0) -> Matrix:
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            acc = zero
            for a, b in zip(row, col):
                acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*A)]


def identity(n: int, one=1, zero=0) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def solve(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    """Return X with A·X = B by Gauss–Jordan elimination; A must be invertible."""
    n = len(A)
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    width = len(M[0])
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero(M[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        inv_row = [x / p for x in M[col]]
        M[col] = inv_row
        for r in range(n):
            if r != col and not _is_zero(M[r][col]):
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], inv_row)]
    return [row[n:width] for row in M]


def inverse(A: Sequence[Sequence], one=1, zero=0) -> Matrix:
    return solve(A, identity(len(A), one, zero))


def det(A: Sequence[Sequence], one=1):
    """Determinant by elimination with row pivoting."""
    M = [list(r) for r in A]
    n = len(M)
    d = one
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero(M[r][col])), None)
        if piv is None:
            return M[0][0] * 0 if n else d
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            d = -d
        p = M[col][col]
        d = d * p
        for r in range(col + 1, n):
            if not _is_zero(M[r][col]):
                f = M[r][col] / p
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return d


def int_det(A: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    M = [list(map(int, r)) for r in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def leading_pivots(A: Sequence[Sequence]) -> list | None:
    """Pivots d₁, …, dₙ of elimination without pivoting.

    The k-th leading principal minor equals d₁⋯d_k.  Returns ``None`` if some
    leading minor vanishes (elimination breaks down).
    """
    M = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in A]
    n = len(M)
    piv = []
    for k in range(n):
        p = M[k][k]
        if _is_zero(p):
            return None
        piv.append(p)
        for i in range(k + 1, n):
            if not _is_zero(M[i][k]):
                f = M[i][k] / p
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return piv


# --------------------------------------------------------------------------
# integer lattices


def integer_kernel(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[int]]:
    """Z-basis of {x ∈ Zⁿ : M·x = 0} for a rational matrix M.

    Column operations by extended gcd bring M to column echelon form while the
    same operations are applied to the identity; the columns of the transform
    that end up under zero columns span the kernel, and because the transform
    is unimodular the kernel lattice is saturated.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    M = []
    for r in rows:
        den = math.lcm(*(Fraction(x).denominator for x in r)) if r else 1
        M.append([int(Fraction(x) * den) for x in r])
    n = ncols
    # columns as lists: top part = M column, bottom = transform column
    cols = [[M[i][j] for i in range(len(M))] + [1 if k == j else 0 for k in range(n)] for j in range(n)]
    m = len(M)
    pivot_col = 0
    for i in range(m):
        # gather gcd of row i over columns pivot_col..n-1 into column pivot_col
        while True:
            nz = [j for j in range(pivot_col, n) if cols[j][i] != 0]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][i]))
            for j in nz:
                if j == j0:
                    continue
                q = cols[j][i] // cols[j0][i]
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[j0])]
        nz = [j for j in range(pivot_col, n) if cols[j][i] != 0]
        if nz:
            j = nz[0]
            cols[pivot_col], cols[j] = cols[j], cols[pivot_col]
            pivot_col += 1
        if pivot_col == n:
            break
    return [col[m:] for col in cols[pivot_col:]]


def gram_of(basis: Sequence[Sequence[int]], G: Sequence[Sequence]) -> Matrix:
    """Gram matrix Bᵀ-style: entry (a, b) = basis[a]·G·basis[b]."""
    n = len(G)
    GB = [[sum(G[i][k] * v[k] for k in range(n)) for i in range(n)] for v in basis]
    return [[sum(u[i] * gv[i] for i in range(n)) for gv in GB] for u in basis]


def lll_gram(G: Sequence[Sequence], delta: Fraction = Fraction(3, 4)):
    """LLL-reduce a lattice given by its positive definite Gram matrix.

    Returns ``(T, G')`` where the rows of the integer matrix ``T`` are the
    reduced basis vectors in terms of the old basis and ``G' = T·G·Tᵀ``.
    Exact over ``Fraction``; with float input it is a heuristic reduction.
    """
    n = len(G)
    exact = all(isinstance(x, (int, Fraction)) for row in G for x in row)
    conv = Fraction if exact else float
    G = [[conv(x) for x in row] for row in G]
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    delta = conv(delta)

    def gso(G):
        mu = [[conv(0)] * n for _ in range(n)]
        B = [conv(0)] * n
        for i in range(n):
            for j in range(i):
                s = G[i][j] - sum(mu[j][k] * mu[i][k] * B[k] for k in range(j))
                mu[i][j] = s / B[j]
            B[i] = G[i][i] - sum(mu[i][k] ** 2 * B[k] for k in range(i))
        return mu, B

    def size_reduce(k, l, q):
        T[k] = [a - q * b for a, b in zip(T[k], T[l])]
        # G ← E G Eᵀ with E = I − q·e_k e_lᵀ
        for j in range(n):
            G[k][j] -= q * G[l][j]
        for j in range(n):
            G[j][k] -= q * G[j][l]

    k = 1
    mu, B = gso(G)
    while k < n:
        for l in range(k - 1, -1, -1):
            q = round(mu[k][l])
            if q:
                size_reduce(k, l, q)
                mu, B = gso(G)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            T[k], T[k - 1] = T[k - 1], T[k]
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            mu, B = gso(G)
            k = max(k - 1, 1)
    return T, G


def enumerate_short(G: Sequence[Sequence], bound, include_zero: bool = False) -> list[tuple[tuple[int, ...], object]]:
    """All integer x with xᵀGx ≤ bound for a positive definite G (Fincke–Pohst).

    Exact when G and bound are rational: floating point square roots only
    produce slightly widened coordinate ranges and each candidate is checked
    exactly.  Returns (x, value) pairs in depth-first order (deterministic).
    """
    n = len(G)
    exact = all(isinstance(x, (int, Fraction)) for row in G for x in row) and isinstance(bound, (int, Fraction))
    conv = Fraction if exact else float
    G = [[conv(x) for x in row] for row in G]
    bound = conv(bound)
    slack = 0.0 if exact else 1e-9 * (1 + abs(bound))
    # quadratic completion: xᵀGx = Σᵢ q[i][i]·(xᵢ + Σ_{j>i} q[i][j]·xⱼ)²
    q = [row[:] for row in G]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    out: list[tuple[tuple[int, ...], object]] = []
    x = [0] * n

    def rec(i, remaining):
        if i < 0:
            vec = tuple(x)
            if not include_zero and not any(vec):
                return
            val = sum(vec[a] * G[a][b] * vec[b] for a in range(n) for b in range(n) if vec[a] and vec[b])
            if val <= bound + slack:
                out.append((vec, val))
            return
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), conv(0))
        r = float(remaining / q[i][i])
        s = math.sqrt(max(r, 0.0)) * (1 + 1e-12) + 1e-9
        cf = float(c)
        for xi in range(math.ceil(-cf - s), math.floor(-cf + s) + 1):
            t = xi + c
            rem = remaining - q[i][i] * t * t
            if rem < -slack:
                continue
            x[i] = xi
            rec(i - 1, rem)
        x[i] = 0

    rec(n - 1, bound)
    return out
