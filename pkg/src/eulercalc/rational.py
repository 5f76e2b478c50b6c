"""Exact rational scalars, vectors and small dense linear algebra.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator). Vectors are tuples of fractions; matrices are
sequences of rows.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError

Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def parse_rational(value, path: str = "") -> Fraction:
    """Parse ``int``, ``Fraction`` or a ``"p/q"`` / ``"p"`` string.

    Floats are refused: they would silently inject rounding into exact data.
    """
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got boolean {value!r}", path)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise ParseError(f"malformed rational {value!r}", path)
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {value!r}", path)
        return Fraction(num, den)
    raise ParseError(f"expected a rational string like 'p/q', got {value!r}", path)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[Vector]:
    cols = list(zip(*b))
    return [tuple(dot(row, c) for c in cols) for row in a]


def transpose(m: Sequence[Sequence]) -> list[Vector]:
    return [tuple(c) for c in zip(*m)]


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def primitive_int(values: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to coprime integers."""
    values = [Fraction(v) for v in values]
    m = lcm_of_denominators(values)
    ints = [int(v * m) for v in values]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def canonical_projective(values: Sequence) -> tuple[int, ...]:
    """Primitive integer representative with first nonzero entry positive."""
    p = primitive_int(values)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : rows @ x = 0}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence):
    """Unique solution of a square nonsingular system, or ``None``."""
    n = len(a)
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(red[i][n] for i in range(n))


def inverse(a: Sequence[Sequence]) -> list[Vector] | None:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        return None
    return [tuple(row[n:]) for row in red]


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in a]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def affine_rank(points: Sequence[Sequence], directions: Sequence[Sequence] = ()) -> int:
    """Dimension of the affine hull of ``points`` plus the span of ``directions``."""
    if not points:
        return -1
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]] + [tuple(d) for d in directions]
    return rank(diffs) if diffs else 0
