"""Double description of polyhedral cones over the integers.

Everything polyhedral in the package funnels through :func:`cone_generators`,
which converts ``{y : A y >= 0}`` into extreme rays plus a lineality basis.
Used with the generators as rows it computes the dual cone, so the same
routine serves V-to-H, H-to-V and projective duality.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .rational import nullspace, primitive_int, rref


def _int_rows(rows: Sequence[Sequence]) -> list[tuple[int, ...]]:
    out = []
    for r in rows:
        p = primitive_int(r)
        if any(p):
            out.append(p)
    return out


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _normalize(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def canonical_lineality(vectors: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """RREF basis of span(vectors), each row scaled to primitive integers."""
    red, _ = rref(vectors) if vectors else ([], [])
    return [primitive_int(r) for r in red]


def _pointed_dd(m: list[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {z in Q^k : m z >= 0}; m has rank k."""
    if k == 0:
        return []
    # initial simplicial cone from k independent rows
    chosen: list[int] = []
    for i in range(len(m)):
        trial = [m[j] for j in chosen] + [m[i]]
        if len(rref(trial)[1]) == len(trial):
            chosen.append(i)
            if len(chosen) == k:
                break
    basis = [m[i] for i in chosen]
    rays: list[tuple[int, ...]] = []
    for j in range(k):
        others = [basis[i] for i in range(k) if i != j]
        ns = nullspace(others, k) if others else [tuple(Fraction(int(c == 0)) for c in range(k))]
        r = primitive_int(ns[0])
        if _idot(basis[j], r) < 0:
            r = tuple(-x for x in r)
        rays.append(r)
    order = chosen + [i for i in range(len(m)) if i not in set(chosen)]
    tight: list[int] = []
    for r in rays:
        mask = 0
        for bit, i in enumerate(chosen):
            if _idot(m[i], r) == 0:
                mask |= 1 << bit
        tight.append(mask)

    for step in range(k, len(order)):
        row = m[order[step]]
        bit = 1 << step
        vals = [_idot(row, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            tight = [t | bit if v == 0 else t for t, v in zip(tight, vals)]
            continue
        new_rays: list[tuple[int, ...]] = []
        new_tight: list[int] = []
        for i, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[i])
                new_tight.append(tight[i] | bit if v == 0 else tight[i])
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if bin(common).count("1") < k - 2:
                    continue
                # combinatorial adjacency: no third ray tight on all of `common`
                if any(
                    (tight[r] & common) == common
                    for r in range(len(rays))
                    if r != p and r != q
                ):
                    continue
                vp, vq = vals[p], vals[q]
                ray = _normalize(tuple(vp * a - vq * b for a, b in zip(rays[q], rays[p])))
                new_rays.append(ray)
                new_tight.append(common | bit)
        rays, tight = new_rays, new_tight
        if not rays:
            break
    return rays


def cone_generators(rows: Sequence[Sequence], dim: int):
    """Generators of ``{y in Q^dim : row . y >= 0 for every row}``.

    Returns
    -------
    rays : list of tuple[int, ...]
        Primitive extreme rays of the cone intersected with the orthogonal
        complement of its lineality space (sorted, duplicates removed).
    lineality : list of tuple[int, ...]
        Canonical (RREF, primitive) basis of the lineality space.
    """
    a = _int_rows(rows)
    lin = nullspace(a, dim) if a else [
        tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)
    ]
    lineality = canonical_lineality(lin, dim)
    if not a:
        return [], lineality
    red, _ = rref(a)
    basis = [primitive_int(r) for r in red]  # row space = orthogonal complement of lineality
    k = len(basis)
    m = [_normalize(tuple(_idot(row, b) for b in basis)) for row in a]
    m = [r for r in m if any(r)]
    zrays = _pointed_dd(m, k)
    rays = set()
    for z in zrays:
        y = [sum(z[j] * basis[j][i] for j in range(k)) for i in range(dim)]
        rays.add(_normalize(tuple(y)))
    return sorted(rays), lineality
