"""Shared fixtures and hypothesis strategies."""

import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from base_algebra import LOCAL_VARIABLES, RESIDUE_VARIABLES, RatFunc  # noqa: E402
from local_field import monomial  # noqa: E402
from witt import WittVec  # noqa: E402

# Exact arithmetic is slow on the first call of a (p, s) pair while tables build.
settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")

small_primes = st.sampled_from((2, 3))


@st.composite
def residue_polys(draw, p, max_degree=3):
    """Polynomials in F_p[x]."""
    x = RatFunc.gen("x", p, RESIDUE_VARIABLES)
    coefficients = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=max_degree + 1))
    total = RatFunc.zero(p, RESIDUE_VARIABLES)
    for e, c in enumerate(coefficients):
        total = total + c * x ** e
    return total


@st.composite
def residue_fractions(draw, p):
    """Elements of F_p(x) with a nonzero denominator."""
    numer = draw(residue_polys(p))
    denom = draw(residue_polys(p, max_degree=2).filter(bool))
    return numer / denom


@st.composite
def local_elements(draw, p, lowest=-4, highest=2, units=False):
    """
    Laurent polynomials sum c_e(x) t^e with lowest <= e <= highest; with
    ``units`` the sum may be divided by the unit 1 + x t.
    """
    total = RatFunc.zero(p, LOCAL_VARIABLES)
    for e in range(lowest, highest + 1):
        if draw(st.booleans()):
            total = total + monomial(draw(residue_polys(p, max_degree=2)), e)
    if units and draw(st.booleans()):
        x = RatFunc.gen("x", p, LOCAL_VARIABLES)
        t = RatFunc.gen("t", p, LOCAL_VARIABLES)
        total = total / (1 + x * t)
    return total


@st.composite
def witt_vectors(draw, p, s, depth=3, units=False):
    """Vectors of W_s(K) with ord_W >= -depth."""
    components = [
        draw(local_elements(p, lowest=-(depth // p ** i), highest=1, units=units))
        for i in range(s - 1, -1, -1)
    ]
    return WittVec(p, tuple(components))


@pytest.fixture
def t2():
    return RatFunc.gen("t", 2, LOCAL_VARIABLES)


@pytest.fixture
def x2():
    return RatFunc.gen("x", 2, LOCAL_VARIABLES)


@pytest.fixture
def t3():
    return RatFunc.gen("t", 3, LOCAL_VARIABLES)


@pytest.fixture
def x3():
    return RatFunc.gen("x", 3, LOCAL_VARIABLES)
