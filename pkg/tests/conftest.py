import random

import pytest
from hypothesis import strategies as st

from funcfield.arith import TINV, LaurentSeries, Poly
from funcfield.quadext import QuadElem, RatFunc

PRIMES = (3, 5, 7, 11)


@pytest.fixture
def rng():
    return random.Random(20241016)


def random_series(rng, p, start=0, prec=32, orientation=TINV, unit=False):
    coeffs = [rng.randrange(p) for _ in range(prec - start)]
    if unit and coeffs:
        coeffs[0] = rng.randrange(1, p)
    return LaurentSeries(p, coeffs, start, prec, orientation)


def random_poly(rng, p, deg, monic=False):
    c = [rng.randrange(p) for _ in range(deg)] + [1 if monic else rng.randrange(1, p)]
    return Poly(c, p)


@st.composite
def series_st(draw, p=None, min_start=-4, max_start=4, max_len=24, orientation=TINV):
    p = p or draw(st.sampled_from(PRIMES))
    start = draw(st.integers(min_start, max_start))
    n = draw(st.integers(1, max_len))
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    return LaurentSeries(p, coeffs, start, start + n, orientation)


def random_ratfunc(rng, p, deg=3, den_deg=2):
    num = random_poly(rng, p, rng.randrange(deg + 1))
    den = random_poly(rng, p, rng.randrange(den_deg + 1), monic=True)
    return RatFunc(num, den)


def random_quad(rng, p, integral=False):
    if integral:
        j = RatFunc(random_poly(rng, p, rng.randrange(3)), 1)
        k = RatFunc(random_poly(rng, p, rng.randrange(3)).shift(1), 1)
        return QuadElem(j, k)
    return QuadElem(random_ratfunc(rng, p), random_ratfunc(rng, p))


# acceptance criteria report: one line per criterion in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
