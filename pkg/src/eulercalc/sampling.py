"""Random exact test instances (polytopes, projective bodies, sample points)."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import polytope as pt
from . import projective as pj
from . import radon as rd
from . import rational as rq


def rational(rng, lo=-4, hi=4, max_den=4) -> Fraction:
    den = int(rng.integers(1, max_den + 1))
    return Fraction(int(rng.integers(lo * den, hi * den + 1)), den)


def random_points(rng, n, count, lo=-4, hi=4, max_den=4):
    return [tuple(rational(rng, lo, hi, max_den) for _ in range(n)) for _ in range(count)]


def random_polytope(rng, n, min_vertices=None, max_vertices=8, full_dim=True, lo=-4, hi=4) -> pt.Polytope:
    """Hull of random rational points; retried until full-dimensional if asked."""
    min_vertices = min_vertices or n + 1
    while True:
        k = int(rng.integers(min_vertices, max_vertices + 1))
        p = pt.from_vertices(random_points(rng, n, k, lo, hi))
        if not full_dim or p.dim == n:
            return p


def random_gl(rng, n, lo=-2, hi=2):
    while True:
        m = [[Fraction(int(rng.integers(lo, hi + 1))) for _ in range(n)] for _ in range(n)]
        if rq.det(m) != 0:
            return m


def random_body(rng, n, max_vertices=6, transform=True) -> pj.ProjBody:
    """Random full-dimensional convex body of RP^n, optionally moved by GL(n+1, Q)."""
    p = random_polytope(rng, n, max_vertices=max_vertices)
    k = pj.from_chart_polytope(p)
    if transform:
        k = pj.transform(k, random_gl(rng, n + 1))
    return k


def random_proj_fn(rng, n, min_terms=1, max_terms=5, with_constant=False, max_vertices=6):
    m = int(rng.integers(min_terms, max_terms + 1))
    g = random_gl(rng, n + 1)
    terms = []
    for _ in range(m):
        w = Fraction(int(rng.choice([-3, -2, -1, 1, 2, 3])), int(rng.integers(1, 3)))
        k = pj.from_chart_polytope(random_polytope(rng, n, max_vertices=max_vertices))
        terms.append((w, pj.transform(k, g)))
    c = rational(rng, -2, 2, 2) if with_constant else Fraction(0)
    return rd.ProjConstructibleFn(n, tuple(terms), c)


def random_hyperplane(rng, n, bound=9) -> tuple:
    while True:
        v = [int(rng.integers(-bound, bound + 1)) for _ in range(n + 1)]
        if any(v):
            return pj.proj(v)


def sample_points(rng, phi, count):
    """Random projective points mixing generic, interior and boundary samples.

    Boundary samples are cone generators and midpoints of generator pairs.
    """
    n = phi.n
    bodies = [k for _, k in phi.terms]
    out = []
    kinds = ["generic", "generator", "midpoint", "interior"] if bodies else ["generic"]
    while len(out) < count:
        kind = kinds[len(out) % len(kinds)]
        if kind == "generic":
            v = [int(rng.integers(-9, 10)) for _ in range(n + 1)]
            if not any(v):
                continue
            out.append(pj.proj(v))
            continue
        k = bodies[int(rng.integers(len(bodies)))]
        gens = k.cone_generators
        if kind == "generator":
            out.append(pj.proj(gens[int(rng.integers(len(gens)))]))
        elif kind == "midpoint":
            i, j = rng.choice(len(gens), size=2, replace=False)
            out.append(pj.proj([a + b for a, b in zip(gens[i], gens[j])]))
        else:
            out.append(pj.proj([sum(col) for col in zip(*gens)]))
    return out


def distinct_body_pair(rng, n):
    g = random_gl(rng, n + 1)
    while True:
        k = pj.from_chart_polytope(random_polytope(rng, n))
        l = pj.from_chart_polytope(random_polytope(rng, n))
        if k != l:
            return pj.transform(k, g), pj.transform(l, g)


def separating_hyperplanes(k: pj.ProjBody, l: pj.ProjBody) -> list:
    """Hyperplanes through a generator of one body that miss the other body.

    Needs a functional positive on both cones; for each generator ``p`` of one
    body outside the other body ``B`` and each facet ``f`` of ``B`` with
    ``f(p) < 0``, ``f - (f(p)/w(p)) w`` passes through ``p`` and misses ``B``.
    """
    out = []
    for a, b in ((k, l), (l, k)):
        w = next(
            (c for c in (a.witness, b.witness)
             if all(rq.dot(c, g) > 0 for g in a.cone_generators + b.cone_generators)),
            None,
        )
        if w is None:
            continue
        for p in a.cone_generators:
            for f in b.dual_generators:
                fp = rq.dot(f, p)
                if fp < 0:
                    ratio = Fraction(fp) / rq.dot(w, p)
                    out.append(pj.proj([fi - ratio * wi for fi, wi in zip(f, w)]))
    return out


def probe_hyperplanes(rng, bodies, count=20) -> list:
    out = []
    for i, k in enumerate(bodies):
        for l in bodies[i + 1:]:
            out.extend(separating_hyperplanes(k, l))
    for _ in range(count):
        k = bodies[int(rng.integers(len(bodies)))]
        gens = k.cone_generators
        p = gens[int(rng.integers(len(gens)))]
        # random hyperplane through a generator
        v = [int(rng.integers(-9, 10)) for _ in range(len(p))]
        basis = pj.pencil_basis(p)
        h = [sum(c * b[i] for c, b in zip(v, basis)) for i in range(len(p))]
        if any(h):
            out.append(pj.proj(h))
    return out
