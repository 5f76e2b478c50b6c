from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eulercalc import rational as rq
from eulercalc.errors import ParseError


@pytest.mark.parametrize("text,value", [("3", 3), ("-2/4", Fraction(-1, 2)), (" 7/3 ", Fraction(7, 3)), (5, 5)])
def test_parse_rational(text, value):
    assert rq.parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "abc", 1.5, True, None, "1/2/3"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ParseError) as info:
        rq.parse_rational(bad, "$.x")
    assert info.value.path == "$.x"


@given(st.fractions())
def test_format_roundtrip(q):
    assert rq.parse_rational(rq.format_rational(q)) == q


def test_primitive_and_projective():
    assert rq.primitive_int([Fraction(2, 3), Fraction(-4, 3)]) == (1, -2)
    assert rq.canonical_projective([0, -2, 4]) == (0, 1, -2)


def test_linear_algebra():
    m = [[2, 1], [1, 1]]
    assert rq.det(m) == 1
    assert rq.matmul(m, rq.inverse(m)) == [(1, 0), (0, 1)]
    assert rq.solve(m, [3, 2]) == (1, 1)
    assert rq.rank([[1, 2, 3], [2, 4, 6]]) == 1
    ns = rq.nullspace([[1, 1, 1]], 3)
    assert len(ns) == 2 and all(rq.dot([1, 1, 1], v) == 0 for v in ns)
    assert rq.inverse([[1, 2], [2, 4]]) is None
    assert rq.affine_rank([(0, 0), (1, 1), (2, 2)]) == 1


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_numpy_sign(rows):
    import numpy as np

    d = rq.det(rows)
    assert d.denominator == 1
    assert abs(float(d) - np.linalg.det(np.array(rows, dtype=float))) < 1e-6
