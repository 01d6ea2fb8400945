import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from projorb import holonomy, moduli

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def small_fraction(lo=-6, hi=6, max_den=5):
    return st.builds(lambda n, d: Fraction(n, d),
                     st.integers(lo * max_den, hi * max_den), st.integers(1, max_den))


nonzero_fraction = small_fraction().filter(lambda q: q != 0)


@st.composite
def on_relation_params(draw, nonzero=False):
    """Rational (a1, a2, b3, b4) on (a1 + a2)(b3 + b4) = 3 + a1 a2 b3 b4."""
    gen = nonzero_fraction if nonzero else small_fraction()
    a1, a2, b3 = draw(gen), draw(gen), draw(gen)
    s = a1 + a2
    den = s - a1 * a2 * b3
    assume(den != 0)
    b4 = (3 - s * b3) / den
    assume(not nonzero or b4 != 0)
    return holonomy.AffineParams(a1, a2, b3, b4)


@st.composite
def x_points(draw):
    """Exact chart points lifted to the surface and lying on component X."""
    x = draw(small_fraction(1, 8, 7))
    y = draw(small_fraction(1, 8, 7))
    assume(x + y - x * y != 0)
    p = moduli.chart_lift((x, y))
    assume(moduli.classify_component(p) == moduli.X)
    return p


def random_on_relation(rng, count, nonzero=True):
    """Deterministic batch of exact on-relation parameters."""
    out = []
    while len(out) < count:
        vals = [Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(3)]
        if nonzero and 0 in vals:
            continue
        a1, a2, b3 = vals
        s = a1 + a2
        den = s - a1 * a2 * b3
        if den == 0:
            continue
        b4 = (3 - s * b3) / den
        if nonzero and b4 == 0:
            continue
        out.append(holonomy.AffineParams(a1, a2, b3, b4))
    return out


def sampled_x_points(count, seed=7):
    """Deterministic exact X points from the chart, excluding the hyperbolic point."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x = Fraction(rng.randint(6, 40), 5)
        y = Fraction(rng.randint(6, 40), 5)
        if x + y - x * y == 0 or (x, y) == (3, 3):
            continue
        p = moduli.chart_lift((x, y))
        if moduli.classify_component(p) == moduli.X and p.astuple() not in [q.astuple() for q in out]:
            out.append(p)
    return out


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
