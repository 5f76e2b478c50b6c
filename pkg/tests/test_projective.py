from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eulercalc import polytope as pt
from eulercalc import projective as pj
from eulercalc import rational as rq
from eulercalc import sampling
from eulercalc.errors import LowerDimensionalBody, ValidationError

from conftest import polytopes


def simplex_cone(n):
    return pj.make_body([[int(i == j) for j in range(n + 1)] for i in range(n + 1)], [1] * (n + 1))


def square_patch():
    return pj.from_chart_polytope(pt.cube(2))


@st.composite
def bodies(draw, n):
    p = draw(polytopes(n, min_vertices=n + 1, max_vertices=6, full_dim=True))
    g = draw(st.sampled_from([None, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                              [[2, 0, 1, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 3]]]))
    k = pj.from_chart_polytope(p)
    if g is not None:
        g = [row[: n + 1] for row in g[: n + 1]]
        if rq.det(g) != 0:
            k = pj.transform(k, g)
    return k


def test_simplex_cone_dual():
    for n in (2, 3):
        k = simplex_cone(n)
        d = pj.dual_body(k)
        assert set(d.cone_generators) == set(k.cone_generators)


def test_square_patch_dual_swaps_counts():
    k = square_patch()
    d = pj.dual_body(k)
    assert len(k.cone_generators) == 4 and len(d.cone_generators) == 4
    assert len(k.dual_generators) == 4 and len(d.dual_generators) == 4
    assert pj.dual_body(d) == k


def test_meets_examples():
    k = square_patch()
    assert not pj.meets(k, k.witness)
    assert pj.meets(k, (-1, 2, 0))  # x = 1/2 through the interior
    assert pj.meets(k, (0, 1, 0))  # x = 0, tangent along an edge
    assert pj.meets(k, (0, 1, 1))  # x + y = 0 touches the corner only


def test_classify_examples():
    k = simplex_cone(2)
    assert pj.classify_point(k, (1, 0, 0)) == pj.BOUNDARY
    assert pj.classify_point(k, (1, 1, 1)) == pj.INTERIOR
    assert pj.classify_point(k, (1, -1, 0)) == pj.OUTSIDE  # on the witness hyperplane
    assert pj.classify_point(k, (-1, -1, -1)) == pj.INTERIOR  # same projective point


def test_chart_embed_simplex():
    lift, p = pj.chart_embed(simplex_cone(2))
    assert p.dim == 2 and len(p.vertices) == 3
    assert pj.cone_over_chart(lift, p, (1, 1, 1)) == simplex_cone(2)


def test_chi_projective_space():
    assert [pj.chi_projective_space(d) for d in range(4)] == [1, 0, 1, 0]


def test_rejects_cone_with_line():
    with pytest.raises(ValidationError):
        pj.make_body([(1, 0, 0), (-1, 0, 0), (0, 1, 0)])
    with pytest.raises(ValidationError):
        pj.make_body([(1, 0, 0), (0, 1, 0)], witness=(1, -1, 0))


def test_lower_dimensional_dual():
    seg = pj.make_body([(1, 0, 0), (1, 1, 0)])
    assert not seg.full_dimensional
    with pytest.raises(LowerDimensionalBody):
        pj.dual_body(seg)


@given(bodies(2) | bodies(3))
def test_duality_involution(k):
    d = pj.dual_body(k)
    assert d.full_dimensional
    assert pj.dual_body(d) == k


@given(bodies(2), st.lists(st.tuples(*[st.integers(-4, 4)] * 3), min_size=1, max_size=8))
def test_meets_iff_not_interior_of_dual(k, hs):
    d = pj.dual_body(k)
    for h in hs:
        if any(h):
            assert pj.meets(k, h) == (pj.classify_point(d, h) != pj.INTERIOR)


@given(polytopes(2, min_vertices=3, max_vertices=5, full_dim=True), st.integers(1, 3))
def test_duality_reverses_order(p, shrink):
    big = pj.from_chart_polytope(p)
    c = pt.relative_interior_point(p)
    small_poly = pt.from_vertices([tuple(ci + (vi - ci) / (shrink + 1) for vi, ci in zip(v, c)) for v in p.vertices])
    small = pj.from_chart_polytope(small_poly)
    d_big, d_small = pj.dual_body(big), pj.dual_body(small)
    assert all(d_small.contains(g) for g in d_big.cone_generators)


def test_pgl_invariance(rng):
    for _ in range(15):
        n = int(rng.integers(2, 4))
        k = sampling.random_body(rng, n)
        g = sampling.random_gl(rng, n + 1)
        gk = pj.transform(k, g)
        for _ in range(8):
            h = sampling.random_hyperplane(rng, n)
            x = sampling.random_hyperplane(rng, n)
            assert pj.meets(k, h) == pj.meets(gk, pj.transform_hyperplane(h, g))
            assert pj.classify_point(k, x) == pj.classify_point(gk, pj.transform_point(x, g))
