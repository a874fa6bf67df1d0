"""Derive the checked-in scan input: defining polynomials and units for small quintic fields.

For each target discriminant D:

1. Brute-force monic quintics x⁵ + a x⁴ + b x³ + c x² + d x + e with a ∈ {0, 1, 2}
   (every field has such a generator after x ↦ ±x + t) and b, …, e inside the
   box forced by the trace bound Σ rᵢ² ≤ a²/5 + √2·(D/5)^{1/4}.  Keep those
   that are totally real with disc(f) = D exactly and irreducible; pick the one
   with the smallest Σ rᵢ² (ties broken lexicographically).
   All targets are odd and below 9·14641, so disc(f) = D forces index 1 and the
   power basis is an integral basis.
2. Brute-force elements with power-basis coordinates in [−k, k]⁵ and norm ±1.
   Greedily choose four units with independent logarithmic embeddings,
   preferring units that enlarge the F₂-span of sign vectors (together with −1).
3. Record ``disc; c0,...,c5; 1; u1 | u2 | u3 | u4``.  The class number 1 is
   metadata (all totally real quintic fields of discriminant below 10⁶ have
   class number 1).

Usage: python3 scripts/derive_scan_fields.py [OUTPUT]
"""

from __future__ import annotations

import itertools
import math
import sys
from pathlib import Path

import numpy as np
import sympy

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from cubicperiods.numberfield import NumberField, is_unit  # noqa: E402

TARGETS = (14641, 24217, 36497, 38569, 65657, 70601, 81509, 81589, 89417)


def candidate_polys(targets):
    dmax = max(targets)
    found = {t: [] for t in targets}
    tset = np.array(sorted(targets), dtype=float)
    for a in (0, 1, 2):
        t2max = a * a / 5 + math.sqrt(2) * (dmax / 5) ** 0.25 + 1e-9
        rmax = math.sqrt(t2max)
        # e_k(roots) are bounded by C(5,k)·(T2/5)^{k/2}
        bnd = [math.comb(5, k) * (t2max / 5) ** (k / 2) for k in range(6)]
        bmin = math.ceil((a * a - t2max) / 2)
        bmax = math.floor(a * a / 2)
        for b in range(bmin, bmax + 1):
            C = np.arange(-math.floor(bnd[3]), math.floor(bnd[3]) + 1)
            D = np.arange(-math.floor(bnd[4]), math.floor(bnd[4]) + 1)
            E = np.arange(-math.floor(bnd[5]), math.floor(bnd[5]) + 1)
            cc, dd, ee = np.meshgrid(C, D, E, indexing="ij")
            cc, dd, ee = cc.ravel(), dd.ravel(), ee.ravel()
            # f = x⁵ + a x⁴ + b x³ + (−1)³e₃… in the usual sign convention; coefficients directly:
            n = cc.size
            comp = np.zeros((n, 5, 5))
            comp[:, 1:, :-1] = np.eye(4)
            comp[:, 0, 0] = -a
            comp[:, 0, 1] = -b
            comp[:, 0, 2] = -cc
            comp[:, 0, 3] = -dd
            comp[:, 0, 4] = -ee
            for lo in range(0, n, 200000):
                hi = min(n, lo + 200000)
                roots = np.linalg.eigvals(comp[lo:hi])
                real = np.all(np.abs(roots.imag) < 1e-6, axis=1)
                if not real.any():
                    continue
                idx = np.nonzero(real)[0]
                rr = roots[idx].real
                if rr.size == 0:
                    continue
                ok = np.all(np.abs(rr) <= rmax + 1e-6, axis=1)
                idx, rr = idx[ok], rr[ok]
                disc = np.ones(len(idx))
                for i in range(5):
                    for j in range(i + 1, 5):
                        disc *= (rr[:, i] - rr[:, j]) ** 2
                near = np.min(np.abs(disc[:, None] - tset[None, :]), axis=1) < 0.5 + 1e-6 * disc
                for k in np.nonzero(near)[0]:
                    g = lo + idx[k]
                    coeffs = (int(ee[g]), int(dd[g]), int(cc[g]), b, a, 1)
                    x = sympy.Symbol("x")
                    P = sympy.Poly(list(reversed(coeffs)), x)
                    dsc = int(sympy.discriminant(P))
                    if dsc in found and P.is_irreducible:
                        t2 = float(np.sum(rr[k] ** 2))
                        found[dsc].append((round(t2, 9), coeffs))
    return found


def units_for(F: NumberField, box: int = 2, want: int = 4):
    n = F.n
    pts = []
    for coords in itertools.product(range(-box, box + 1), repeat=n):
        if not any(coords[1:]):
            continue
        x = F.element(coords)
        if is_unit(x):
            pts.append(x)
    pts.sort(key=lambda u: (sum(abs(c) for c in u.coords), [abs(c) for c in u.coords], u.coords))
    roots = [float(F.embedding(i).lo + F.embedding(i).hi) / 2 for i in range(n)]

    def logvec(u):
        return [math.log(abs(sum(float(c) * r**k for k, c in enumerate(u.coords)))) for r in roots]

    def signbits(u):
        return tuple(0 if s > 0 else 1 for s in u.signs())

    def f2_rank(vecs):
        rows = [int("".join(map(str, v)), 2) for v in vecs]
        rank = 0
        for bit in reversed(range(n)):
            piv = next((r for r in rows if (r >> bit) & 1), None)
            if piv is None:
                continue
            rows = [r ^ piv if (r >> bit) & 1 else r for r in rows if r != piv]
            rank += 1
        return rank

    chosen = []
    minus_one = (1,) * n
    # first pass: units that enlarge both the log rank and the sign rank
    for strict in (True, False):
        for u in pts:
            if len(chosen) == want:
                break
            cand = chosen + [u]
            L = np.array([logvec(v) for v in cand])
            if np.linalg.matrix_rank(L, tol=1e-8) < len(cand):
                continue
            if strict:
                before = f2_rank([minus_one] + [signbits(v) for v in chosen])
                after = f2_rank([minus_one] + [signbits(v) for v in cand])
                if after <= before:
                    continue
            chosen.append(u)
    return chosen


def main(argv):
    out = Path(argv[1]) if len(argv) > 1 else ROOT / "src" / "cubicperiods" / "data" / "quintic_fields_disc_lt_1e5.txt"
    found = candidate_polys(TARGETS)
    lines = [
        "# Totally real quintic fields of discriminant < 10^5.",
        "# disc; c0,c1,c2,c3,c4,c5 (ascending); class number; unit generators (power-basis coordinates)",
        "# Produced by scripts/derive_scan_fields.py (brute-force search; see its docstring).",
    ]
    for t in TARGETS:
        if not found[t]:
            raise SystemExit(f"no polynomial found for {t}")
        _, coeffs = min(found[t])
        F = NumberField(coeffs, t, 1)
        assert F.is_monogenic()
        us = units_for(F)
        if len(us) < 4:
            us = units_for(F, box=3)
        assert len(us) == 4 and all(is_unit(u) for u in us)
        units = " | ".join(",".join(str(c) for c in u.coords) for u in us)
        lines.append(f"{t}; {','.join(map(str, coeffs))}; 1; {units}")
        print(lines[-1], flush=True)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main(sys.argv)
