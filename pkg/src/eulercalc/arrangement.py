"""Relatively open cells of a rational hyperplane arrangement.

Cells are produced by splitting closed regions one hyperplane at a time. A
cell is tracked through its closure ``Q`` (a :class:`Polytope`); the cell
itself is ``ri(Q)``. Whether ``ri(Q)`` meets an open half-space or the
hyperplane is decided from the signs of ``Q``'s generators alone, so no
strict-inequality LP is ever needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polytope as pt
from . import rational as rq


@dataclass(frozen=True)
class Hyperplane:
    """``normal . x = offset``; stored with a canonical primitive integer scale."""

    normal: tuple
    offset: Fraction

    @classmethod
    def make(cls, normal, offset) -> "Hyperplane":
        p = rq.canonical_projective(list(normal) + [offset])
        return cls(tuple(Fraction(c) for c in p[:-1]), Fraction(p[-1]))

    def side(self, x) -> int:
        v = rq.dot(self.normal, x) - self.offset
        return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Cell:
    signs: tuple  # -1 / 0 / +1 per hyperplane
    dim: int
    witness: tuple
    closure: pt.Polytope

    @property
    def bounded(self) -> bool:
        return self.closure.bounded


def _generator_signs(q: pt.Polytope, h: Hyperplane):
    neg = pos = False
    for v in q.vertices:
        s = h.side(v)
        neg |= s < 0
        pos |= s > 0
    for r in q.rays:
        d = rq.dot(h.normal, r)
        neg |= d < 0
        pos |= d > 0
    return neg, pos


def hyperplanes_of(polytopes: Sequence[pt.Polytope]) -> list[Hyperplane]:
    """Distinct supporting hyperplanes of every inequality of the given polytopes."""
    seen = {}
    for p in polytopes:
        if p.is_empty:
            continue
        for h in p.halfspaces:
            hp = Hyperplane.make(h.normal, h.offset)
            seen.setdefault(hp, None)
    return sorted(seen, key=lambda h: (h.normal, h.offset))


def cells(hyperplanes: Sequence[Hyperplane], ambient_dim: int, region: pt.Polytope | None = None) -> list[Cell]:
    """Enumerate the cells of the arrangement that lie inside ``region``.

    ``region`` is a closed polyhedron whose facet hyperplanes all occur in
    ``hyperplanes``; those are processed first and pieces outside the region
    are dropped, so the boundary faces of the region survive as cells.
    Output is sorted by sign vector.
    """
    index = {h: i for i, h in enumerate(hyperplanes)}
    allowed: dict[int, set] = {}
    if region is not None:
        if region.is_empty:
            return []
        for hs in region.halfspaces:
            hp = Hyperplane.make(hs.normal, hs.offset)
            if hp not in index:
                raise ValueError("region facet hyperplane missing from the arrangement")
            i = index[hp]
            # orientation of the stored hyperplane relative to the inequality
            inside = -1 if rq.dot(hp.normal, hs.normal) > 0 else 1
            allowed[i] = allowed.get(i, {-1, 0, 1}) & {inside, 0}
    order = sorted(allowed) + [i for i in range(len(hyperplanes)) if i not in allowed]
    current = [({}, pt.from_halfspaces([], ambient_dim))]
    for i in order:
        h = hyperplanes[i]
        ok = allowed.get(i, {-1, 0, 1})
        le = pt.Halfspace(h.normal, h.offset)
        ge = pt.Halfspace(tuple(-c for c in h.normal), -h.offset)
        nxt = []
        for signs, q in current:
            neg, pos = _generator_signs(q, h)
            if not neg and not pos:
                options = [(0, None)]
            elif not pos:
                options = [(-1, None)]
            elif not neg:
                options = [(1, None)]
            else:
                options = [(-1, [le]), (0, [le, ge]), (1, [ge])]
            for sgn, extra in options:
                if sgn not in ok:
                    continue
                piece = q if extra is None else pt.from_halfspaces(list(q.halfspaces) + extra, ambient_dim)
                nxt.append(({**signs, i: sgn}, piece))
        current = nxt
    out = []
    for signs, q in current:
        key = tuple(signs[i] for i in range(len(hyperplanes)))
        out.append(Cell(key, q.dim, pt.relative_interior_point(q), q))
    out.sort(key=lambda c: c.signs)
    return out


def euler_characteristic_c(cell_values) -> Fraction:
    """``sum value * (-1)^dim`` over ``(dim, value)`` pairs: the χ_c-integral."""
    total = Fraction(0)
    for d, v in cell_values:
        total += v if d % 2 == 0 else -v
    return total
