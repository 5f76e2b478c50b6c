import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eulercalc import integral_geometry as ig
from eulercalc import polytope as pt
from eulercalc import rational as rq
from eulercalc import sampling
from eulercalc.errors import DimensionUnsupported
from eulercalc.polytope import AffineMap

from conftest import polytopes

F = Fraction
TOL = 1e-9


def regular_tetrahedron():
    return pt.from_vertices([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


def cayley_rotation(a, b, c):
    """Rational rotation (I - S)(I + S)^{-1} for the skew matrix S of (a, b, c)."""
    s = [[0, -c, b], [c, 0, -a], [-b, a, 0]]
    i = [[int(r == k) for k in range(3)] for r in range(3)]
    minus = [[i[r][k] - s[r][k] for k in range(3)] for r in range(3)]
    plus = [[i[r][k] + s[r][k] for k in range(3)] for r in range(3)]
    return rq.matmul(minus, rq.inverse(plus))


def test_fan_counts():
    fan = ig.normal_fan(pt.cube(3))
    assert [len(fan.of_dim(d)) for d in range(4)] == [8, 12, 6, 1]
    seg = ig.normal_fan(pt.from_vertices([(0,), (2,)]))
    assert [ig.external_angle(e) for e in seg.of_dim(0)] == [0.5, 0.5]


def test_external_angle_examples():
    for e in ig.normal_fan(pt.cube(2)).of_dim(0):
        assert ig.external_angle(e) == pytest.approx(0.25, abs=1e-15)
    for e in ig.normal_fan(pt.cube(3)).of_dim(0):
        assert ig.external_angle(e) == pytest.approx(0.125, abs=1e-12)
    for e in ig.normal_fan(pt.cube(3)).of_dim(1):
        assert ig.external_angle(e) == pytest.approx(0.25, abs=1e-15)


def test_regular_tetrahedron_angles(rng):
    tet = regular_tetrahedron()
    fan = ig.normal_fan(tet)
    for e in fan.of_dim(0):
        # by symmetry and the Gram relation each vertex normal cone is a quarter of the sphere
        assert ig.external_angle(e) == pytest.approx(0.25, abs=1e-12)
        est, se = ig.external_angle_mc(tet, e, 200_000, rng)
        assert abs(est - 0.25) < 3 * se + 1e-12
    interior = math.acos(23 / 27) / (4 * math.pi)
    for i in range(4):
        assert ig.tangent_cone_solid_angle(tet, i) == pytest.approx(interior, abs=1e-6)
    # independent check: directions that enter the tetrahedron from vertex 0
    v = np.array([float(c) for c in tet.vertices[0]])
    a = np.array([[float(c) for c in h.normal] for h in tet.halfspaces])
    b = np.array([float(h.offset) for h in tet.halfspaces])
    u = rng.standard_normal((400_000, 3))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    hit = np.all((v + 1e-3 * u) @ a.T <= b + 1e-15, axis=1)
    p = hit.mean()
    assert abs(p - interior) < 3 * math.sqrt(p * (1 - p) / len(u))


def test_edge_angle_mc(rng):
    tet = regular_tetrahedron()
    e = ig.normal_fan(tet).of_dim(1)[0]
    est, se = ig.external_angle_mc(tet, e, 200_000, rng)
    assert abs(est - ig.external_angle(e)) < 3 * se


def test_intrinsic_volume_examples():
    assert ig.intrinsic_volumes(pt.cube(3)).values == pytest.approx((1, 3, 3, 1), abs=TOL)
    assert ig.intrinsic_volumes(pt.cube(2)).values == pytest.approx((1, 2, 1), abs=TOL)
    assert ig.intrinsic_volumes(pt.point((1, 2, 3))).values == (1.0, 0.0, 0.0, 0.0)
    tet = ig.intrinsic_volumes(pt.simplex(3))
    assert tet.exact_volume == F(1, 6)


def test_dimension_cap():
    with pytest.raises(DimensionUnsupported):
        ig.intrinsic_volumes(pt.cube(4))


def test_steiner_polynomial_cube():
    v = ig.intrinsic_volumes(pt.cube(3))
    assert ig.steiner_polynomial(v, 0.1) == pytest.approx(1 + 0.6 + 3 * math.pi / 100 + 4 * math.pi / 3000, abs=TOL)
    assert ig.steiner_polynomial(v, 0.0) == 1.0


def test_weyl_segment_and_triangle():
    seg1 = pt.from_vertices([(0,), (3,)])
    seg2 = pt.from_vertices([(1, 1), (F(14, 5), F(17, 5))])  # length 3 along (3/5, 4/5)
    seg3 = pt.from_vertices([(0, 0, 0), (1, 2, 2)])
    vs = [ig.intrinsic_volumes(s).values for s in (seg1, seg2, seg3)]
    assert vs[0] == vs[1][:2] == vs[2][:2] == (1.0, 3.0)
    tri2 = pt.from_vertices([(0, 0), (3, 0), (0, 4)])
    tri3 = pt.from_vertices([(0, 0, 0), (3, 0, 0), (0, F(12, 5), F(16, 5))])
    a, b = ig.intrinsic_volumes(tri2).values, ig.intrinsic_volumes(tri3).values
    assert a == b[:3]
    assert b[3] == 0.0


def test_rigid_motion_invariance(rng):
    for _ in range(10):
        p = sampling.random_polytope(rng, 3, max_vertices=7)
        r = cayley_rotation(*(sampling.rational(rng, -2, 2, 3) for _ in range(3)))
        f = AffineMap.make(r, [sampling.rational(rng) for _ in range(3)])
        q = pt.affine_image(p, f)
        assert ig.intrinsic_volumes(q).values == pytest.approx(ig.intrinsic_volumes(p).values, abs=TOL)


@given(polytopes(3, min_vertices=4, max_vertices=9, full_dim=True))
def test_gram_relation(p):
    fan = ig.normal_fan(p)
    assert math.fsum(ig.external_angle(e) for e in fan.of_dim(0)) == pytest.approx(1.0, abs=TOL)
    assert all(v >= -TOL for v in ig.intrinsic_volumes(p, fan).values)


@given(polytopes(3, max_vertices=7), st.sampled_from([F(1, 2), F(2), F(3, 2), F(5, 3)]))
def test_homogeneity(p, lam):
    scaled = pt.affine_image(p, AffineMap.make([[lam if i == j else 0 for j in range(3)] for i in range(3)]))
    a, b = ig.intrinsic_volumes(p).values, ig.intrinsic_volumes(scaled).values
    for j in range(4):
        assert b[j] == pytest.approx(float(lam) ** j * a[j], abs=TOL * max(1.0, abs(b[j])))


def test_face_volume_squared_exact():
    tri = pt.from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 1)])
    face = frozenset(range(3))
    assert ig.face_volume_squared(tri, face) == F(1, 2)  # area sqrt(2)/2


def test_valuation_additivity_v0(rng):
    from eulercalc import constructible as cf

    for _ in range(10):
        k = sampling.random_polytope(rng, 2, max_vertices=5)
        l = sampling.random_polytope(rng, 2, max_vertices=5)
        kl = pt.intersect(k, l)
        if kl.is_empty:
            continue
        ind = cf.ConstructibleFn.indicator
        union = ind(k) + ind(l) - ind(kl)
        lhs = cf.euler_integral_cells(union) + ig.intrinsic_volumes(kl)[0]
        assert lhs == pytest.approx(ig.intrinsic_volumes(k)[0] + ig.intrinsic_volumes(l)[0], abs=TOL)
