import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from eulercalc import polytope as pt

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def small_rationals(lo=-3, hi=3, max_den=3):
    return st.builds(
        lambda num, den: Fraction(num, den),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    )


def points(n, lo=-3, hi=3):
    return st.tuples(*[small_rationals(lo, hi) for _ in range(n)])


@st.composite
def polytopes(draw, n, min_vertices=1, max_vertices=8, full_dim=False):
    verts = draw(st.lists(points(n), min_size=min_vertices, max_size=max_vertices))
    p = pt.from_vertices(verts, ambient_dim=n)
    if full_dim and p.dim != n:
        # lift to full dimension by adding a simplex corner
        p = pt.from_vertices(list(verts) + [tuple(Fraction(0) for _ in range(n))]
                             + [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)])
    return p


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def frac_pts(*coords):
    return [tuple(Fraction(c) for c in v) for v in coords]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[i]
        terminalreporter.write_line(mod.format_line(i, ok, detail))
