"""Shared fixtures and strategies."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cubicperiods.eisenstein import EisensteinScalar, EisensteinVector, Signature
from cubicperiods.numberfield import NumberField, SignVector
from cubicperiods.siegel import ball_norm

# K₀ = Q(ζ₁₁)⁺ with generator r = −2cos(2π/11): f = x⁵ − x⁴ − 4x³ + 3x² + 3x − 1
CYCLO11_COEFFS = (-1, 3, 3, -4, -1, 1)
DELTA0 = (-9, 4, 14, 1, -4)  # −4r⁴ + r³ + 14r² + 4r − 9
UNITS = ((1, 0, -3, 0, 1), (-1, -1, 1, 0, 0), (-1, 1, 0, 0, 0), (0, 1, 0, 0, 0))
EPS = "+,+,-,+,+"

# frozen reference values for the real embeddings (ascending order of r)
R_EMBEDDINGS = (-1.68250706566236, -0.830830026003773, 0.284629676546570, 1.30972146789057, 1.91898594722899)
DELTA_EMBEDDINGS = (21.7307463515808, 4.26952134163076, -1.91569396353523, 14.0542888631537, 5.86113740717001)


@pytest.fixture(scope="session")
def cyclo11():
    return NumberField(CYCLO11_COEFFS, 14641, 1)


@pytest.fixture(scope="session")
def cyclo11_data(cyclo11):
    F = cyclo11
    units = [F.element(u) for u in UNITS]
    d0 = F.element(DELTA0)
    return {"F": F, "units": units, "delta0": d0, "delta": units[3] * d0, "eps": SignVector.parse(EPS)}


# ---------------------------------------------------------------------------
# strategies

small_q = st.fractions(min_value=-3, max_value=3, max_denominator=7)
eis_int = st.builds(EisensteinScalar, st.integers(-4, 4), st.integers(-4, 4))
eis_rat = st.builds(EisensteinScalar, small_q, small_q)


def vectors(scalars=eis_int, tag=Signature.S14):
    return st.lists(scalars, min_size=5, max_size=5).map(lambda cs: EisensteinVector(cs, tag))


def shrink_into_ball(b, radius=Fraction(99, 100)):
    """Scale b by a rational t so that |t·b| ≤ radius (exactly)."""
    n2 = ball_norm(b)
    if n2 <= radius * radius:
        return tuple(b)
    t = Fraction(radius) / Fraction(math.sqrt(n2)).limit_denominator(1000)
    while ball_norm([x * t for x in b]) > radius * radius:
        t *= Fraction(99, 100)
    return tuple(x * t for x in b)


@st.composite
def ball_points(draw, scalars=eis_rat):
    b = draw(st.lists(scalars, min_size=4, max_size=4))
    return shrink_into_ball(b)


def random_ball_point(rng: random.Random, rational_only: bool = False, den: int = 9):
    def q():
        return Fraction(rng.randint(-den, den), rng.randint(1, den))

    b = [EisensteinScalar(q(), 0 if rational_only else q()) for _ in range(4)]
    return shrink_into_ball(b)
