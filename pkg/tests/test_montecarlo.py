import math
from fractions import Fraction

import numpy as np
import pytest

from eulercalc import integral_geometry as ig
from eulercalc import montecarlo as mc
from eulercalc import polytope as pt
from eulercalc.errors import NotConvex, NotFullDim

F = Fraction


def test_distance_to_polytope():
    sq = pt.cube(2)
    x = np.array([[0.5, 0.5], [2.0, 0.5], [2.0, 2.0], [-1.0, -1.0]])
    assert mc.distance_to_polytope(sq, x) == pytest.approx([0.0, 1.0, math.sqrt(2), math.sqrt(2)])


def test_steiner_small():
    reports = mc.steiner_check(pt.cube(3), [0.0, 0.1], 100_000, seed=3)
    assert reports[0].estimate == pytest.approx(1.0) and reports[0].passed
    assert reports[1].passed


def test_steiner_segment_stadium():
    seg = pt.from_vertices([(0, 0), (2, 0)])
    eps = 0.25
    (r,) = mc.steiner_check(seg, [eps], 100_000, seed=5)
    assert r.reference == pytest.approx(2 * eps * 2 + math.pi * eps ** 2)
    assert r.passed


def test_worker_count_independent():
    a = mc.cauchy_crofton_check(pt.cube(2), 200_000, seed=9, workers=1)
    b = mc.cauchy_crofton_check(pt.cube(2), 200_000, seed=9, workers=4)
    assert a.estimate == b.estimate and a.stderr == b.stderr


def test_crofton_cases():
    seg = pt.from_vertices([(0, 0), (3, 4)])
    r = mc.cauchy_crofton_check(seg, 200_000, seed=2)
    assert r.reference == pytest.approx(10.0) and r.passed
    with pytest.raises(NotFullDim):
        mc.cauchy_crofton_check(pt.point((0, 0)), 1000)
    with pytest.raises(NotConvex):
        mc.cauchy_crofton_check([(0, 0), (2, 0), (1, 1), (1, F(1, 4)), (0, 2)], 1000)


def test_disk_oracle_pins_constants():
    val = mc.validate_kinematic_constants()
    assert val["validated"] and len(val["cases"]) >= 3
    # a wrong coefficient on the perimeter product would fail the oracle
    r, s = 1.0, 0.25
    case = mc.disk_disk_oracle(r, s)
    wrong = 2 * math.pi * (math.pi * r * r + math.pi * s * s) + 0.5 * (2 * math.pi * r) * (2 * math.pi * s)
    assert abs(case["quadrature"] - wrong) / wrong > 0.01


def test_kinematic_point_and_separated():
    sq = pt.cube(2)
    r = mc.kinematic_check_R2(sq, pt.point((0, 0)), 200_000, seed=4)
    assert r.reference == pytest.approx(2 * math.pi) and r.passed
    far = pt.box((10, 10), (11, 11))
    r = mc.kinematic_check_R2(sq, far, 10_000, seed=1, window=0.1)
    assert r.estimate == 0.0 and r.reference == 0.0 and r.passed
    assert r.details["window"]["misses_all_motions"]
    # the same pair with the default window sees all of its intersecting motions
    r = mc.kinematic_check_R2(sq, far, 100_000, seed=1)
    assert r.details["window"]["covers_all_motions"] and r.passed


def test_kinematic_square_square_small():
    r = mc.kinematic_check_R2(pt.cube(2), pt.cube(2), 200_000, seed=7, workers=2)
    assert r.reference == pytest.approx(4 * math.pi + 16)
    assert r.passed and abs(r.relative_error) < 0.02


def test_report_json_fields():
    r = mc.cauchy_crofton_check(pt.cube(2), 10_000, seed=0)
    js = r.to_json()
    for key in ("estimate", "stderr", "reference", "pass", "samples", "seed"):
        assert key in js
