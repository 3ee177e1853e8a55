import numpy as np
import pytest
from hypothesis import settings

from nugcd import Polynomial, PolynomialPair

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# (x + 10) times two different cofactors, coefficients rounded to ten digits
EX1_P = [10.0, 1.0, 0, 0, 0, 0, 0, 0, 3.333333333, 10.33333333, 1.0]
EX1_Q = [-8.571428571, -0.8571428571, 0, 0, 0, 0, 0, 0, 1.428571429, 10.14285714, 1.0]


@pytest.fixture
def ex1_pair():
    return PolynomialPair(Polynomial(EX1_P), Polynomial(EX1_Q))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_int_poly(rng, deg, lo=-5, hi=5):
    c = rng.integers(lo, hi + 1, size=deg + 1).astype(float)
    while c[-1] == 0:
        c[-1] = rng.integers(lo, hi + 1)
    return Polynomial(c)


def random_poly(rng, deg, complex_=False):
    c = rng.standard_normal(deg + 1)
    if complex_:
        c = c + 1j * rng.standard_normal(deg + 1)
    return Polynomial(c)


def subspace_distance(a, b):
    """sin of the angle between span{a} and span{b}."""
    a = np.asarray(a) / np.linalg.norm(a)
    b = np.asarray(b) / np.linalg.norm(b)
    return float(np.linalg.norm(a - np.vdot(b, a) * b))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
