"""Convex rational polyhedra in both vertex and half-space form.

A :class:`Polytope` is built through :func:`from_vertices` or
:func:`from_halfspaces`; both populate the other description immediately, so
every instance carries a minimal V-form and a minimal H-form. Unbounded
polyhedra carry rays (a lineality direction appears as a ray pair ``±l``).
Equalities are stored as opposing inequality pairs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import rational as rq
from .cones import cone_generators
from .errors import AmbientMismatch, DimensionUnsupported, NotSimple, PointOutside

MAX_AMBIENT_DIM = 4

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Halfspace:
    """``normal . x <= offset``"""

    normal: tuple
    offset: Fraction

    def value(self, x) -> Fraction:
        return rq.dot(self.normal, x) - self.offset


@dataclass(frozen=True, eq=False)
class Polytope:
    ambient_dim: int
    vertices: tuple
    rays: tuple
    halfspaces: tuple
    dim: int = field(default=-1)

    # structural equality through the canonical V-form
    def _key(self):
        return (self.ambient_dim, frozenset(self.vertices), frozenset(self.rays))

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        v = [[rq.format_rational(c) for c in p] for p in self.vertices]
        return f"Polytope(ambient_dim={self.ambient_dim}, dim={self.dim}, vertices={v}, rays={len(self.rays)})"

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def bounded(self) -> bool:
        return not self.rays

    @cached_property
    def facets(self) -> tuple:
        """Inequalities that are not implicit equalities."""
        eqs = set(self.equalities)
        return tuple(h for h in self.halfspaces if h not in eqs)

    @cached_property
    def equalities(self) -> tuple:
        """Halfspaces whose opposite is also present (paired equalities)."""
        hs = set(self.halfspaces)
        return tuple(
            h for h in self.halfspaces
            if Halfspace(tuple(-c for c in h.normal), -h.offset) in hs
        )

    @cached_property
    def face_lattice(self) -> tuple:
        """Nonempty faces as ``(dim, frozenset of vertex indices)``, bounded only.

        The polytope itself is included; entries are sorted by dimension.
        """
        if self.is_empty or not self.bounded:
            return ()
        nv = len(self.vertices)
        facet_sets = []
        for h in self.facets:
            s = frozenset(i for i, v in enumerate(self.vertices) if h.value(v) == 0)
            facet_sets.append(s)
        faces = {frozenset(range(nv))}
        frontier = set(faces)
        while frontier:
            nxt = set()
            for f in frontier:
                for s in facet_sets:
                    g = f & s
                    if g and g not in faces:
                        faces.add(g)
                        nxt.add(g)
            frontier = nxt
        out = []
        for f in faces:
            pts = [self.vertices[i] for i in sorted(f)]
            out.append((rq.affine_rank(pts), f))
        out.sort(key=lambda e: (e[0], sorted(e[1])))
        return tuple(out)

    def faces_of_dim(self, d: int) -> list:
        return [f for k, f in self.face_lattice if k == d]

    def tight_facets(self, x) -> list:
        return [h for h in self.facets if h.value(x) == 0]


def _check_dim(n: int) -> None:
    if n > MAX_AMBIENT_DIM:
        raise DimensionUnsupported(f"ambient dimension {n} exceeds {MAX_AMBIENT_DIM}")
    if n < 0:
        raise DimensionUnsupported("ambient dimension must be nonnegative")


def _canonical_halfspace(normal, offset) -> Halfspace:
    p = rq.primitive_int(list(normal) + [offset])
    return Halfspace(tuple(Fraction(c) for c in p[:-1]), Fraction(p[-1]))


def _empty(n: int) -> Polytope:
    infeasible = Halfspace(tuple(Fraction(0) for _ in range(n)), Fraction(-1))
    return Polytope(n, (), (), (infeasible,), -1)


def empty(n: int) -> Polytope:
    _check_dim(n)
    return _empty(n)


def _h_from_generators(n: int, vertices, rays) -> tuple:
    gens = [tuple(v) + (Fraction(1),) for v in vertices] + [tuple(r) + (Fraction(0),) for r in rays]
    xis, lin = cone_generators(gens, n + 1)
    hs = set()
    for xi in xis:
        c, d = xi[:n], xi[n]
        if not any(c):
            continue
        # the recession-cone face of the homogenized cone is tight at no vertex
        if not any(rq.dot(c, v) + d == 0 for v in vertices):
            continue
        hs.add(_canonical_halfspace([-x for x in c], d))
    for l in lin:
        c, d = l[:n], l[n]
        hs.add(_canonical_halfspace([-x for x in c], d))
        hs.add(_canonical_halfspace(list(c), -d))
    return tuple(sorted(hs, key=lambda h: (h.normal, h.offset)))


def _v_from_halfspaces(n: int, halfspaces):
    rows = [tuple(-c for c in h.normal) + (h.offset,) for h in halfspaces]
    rows.append(tuple([0] * n + [1]))
    gens, lin = cone_generators(rows, n + 1)
    vertices, rays = set(), set()
    for g in gens:
        if g[n] > 0:
            vertices.add(tuple(Fraction(c, g[n]) for c in g[:n]))
        else:
            rays.add(tuple(Fraction(c) for c in g[:n]))
    for l in lin:
        rays.add(tuple(Fraction(c) for c in l[:n]))
        rays.add(tuple(Fraction(-c) for c in l[:n]))
    return tuple(sorted(vertices)), tuple(sorted(rays))


def _canonical_ray(r) -> tuple:
    return tuple(Fraction(c) for c in rq.primitive_int(r))


def from_vertices(vertices: Sequence, rays: Sequence = (), ambient_dim: int | None = None) -> Polytope:
    """Convex hull of ``vertices`` plus the cone of ``rays`` (V-to-H conversion)."""
    vertices = [rq.vec(v) for v in vertices]
    rays = [rq.vec(r) for r in rays]
    if ambient_dim is None:
        if not vertices:
            raise ValueError("ambient_dim required for an empty vertex list")
        ambient_dim = len(vertices[0])
    n = ambient_dim
    _check_dim(n)
    for v in list(vertices) + list(rays):
        if len(v) != n:
            raise AmbientMismatch(f"generator {v} does not have length {n}")
    if not vertices:
        return _empty(n)
    hs = _h_from_generators(n, vertices, [r for r in rays if any(r)])
    # minimal V-form from the (minimal) H-form
    verts, rys = _v_from_halfspaces(n, hs)
    dim = rq.affine_rank(list(verts), list(rys))
    return Polytope(n, verts, rys, hs, dim)


def from_halfspaces(halfspaces: Sequence, ambient_dim: int | None = None) -> Polytope:
    """Polyhedron ``{x : normal . x <= offset}`` (H-to-V conversion).

    ``halfspaces`` holds :class:`Halfspace` objects or ``(normal, offset)`` pairs.
    An infeasible system yields the empty polytope.
    """
    hs = []
    for h in halfspaces:
        if not isinstance(h, Halfspace):
            h = Halfspace(rq.vec(h[0]), Fraction(h[1]))
        hs.append(h)
    if ambient_dim is None:
        if not hs:
            raise ValueError("ambient_dim required for an empty halfspace list")
        ambient_dim = len(hs[0].normal)
    n = ambient_dim
    _check_dim(n)
    for h in hs:
        if len(h.normal) != n:
            raise AmbientMismatch(f"halfspace normal {h.normal} does not have length {n}")
    clean = []
    for h in hs:
        if not any(h.normal):
            if h.offset < 0:
                return _empty(n)
            continue
        clean.append(h)
    verts, rys = _v_from_halfspaces(n, clean)
    if not verts:
        return _empty(n)
    minimal = _h_from_generators(n, verts, rys)
    dim = rq.affine_rank(list(verts), list(rys))
    return Polytope(n, verts, rys, minimal, dim)


def v_to_h(p: Polytope) -> Polytope:
    """Return ``p`` with its minimal H-form (always populated)."""
    return from_vertices(p.vertices, p.rays, p.ambient_dim)


def h_to_v(p: Polytope) -> Polytope:
    """Return ``p`` with its minimal V-form (always populated)."""
    return from_halfspaces(p.halfspaces, p.ambient_dim)


def box(lo: Sequence, hi: Sequence) -> Polytope:
    n = len(lo)
    hs = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        hs.append((tuple(e), Fraction(hi[i])))
        e = [0] * n
        e[i] = -1
        hs.append((tuple(e), -Fraction(lo[i])))
    return from_halfspaces(hs, n)


def cube(n: int, side=1) -> Polytope:
    return box([0] * n, [side] * n)


def simplex(n: int) -> Polytope:
    pts = [[0] * n]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        pts.append(e)
    return from_vertices(pts)


def point(coords: Sequence) -> Polytope:
    return from_vertices([coords])


def intersect(p: Polytope, q: Polytope) -> Polytope:
    if p.ambient_dim != q.ambient_dim:
        raise AmbientMismatch(f"ambient dims differ: {p.ambient_dim} vs {q.ambient_dim}")
    if p.is_empty or q.is_empty:
        return _empty(p.ambient_dim)
    return from_halfspaces(list(p.halfspaces) + list(q.halfspaces), p.ambient_dim)


def hyperplane_slice(p: Polytope, normal: Sequence, offset) -> Polytope:
    """``p ∩ {normal . x = offset}`` as a (possibly degenerate) polytope."""
    normal = rq.vec(normal)
    offset = Fraction(offset)
    extra = [Halfspace(normal, offset), Halfspace(tuple(-c for c in normal), -offset)]
    if p.is_empty:
        return p
    return from_halfspaces(list(p.halfspaces) + extra, p.ambient_dim)


def is_empty(p: Polytope) -> bool:
    return p.is_empty


def dimension(p: Polytope) -> int:
    return p.dim


def contains_point(p: Polytope, x: Sequence) -> str:
    """Classify ``x`` as interior, boundary or outside (topology of R^n)."""
    x = rq.vec(x)
    if len(x) != p.ambient_dim:
        raise AmbientMismatch("point length does not match ambient dimension")
    if p.is_empty:
        return OUTSIDE
    strict = True
    for h in p.halfspaces:
        v = h.value(x)
        if v > 0:
            return OUTSIDE
        if v == 0:
            strict = False
    return INTERIOR if strict else BOUNDARY


def contains(p: Polytope, x: Sequence) -> bool:
    return contains_point(p, x) != OUTSIDE


def relative_interior_point(p: Polytope) -> tuple:
    """Barycenter of the vertices pushed along the sum of rays."""
    if p.is_empty:
        raise ValueError("empty polytope has no interior point")
    n = p.ambient_dim
    k = len(p.vertices)
    c = [sum((v[i] for v in p.vertices), Fraction(0)) / k for i in range(n)]
    for r in p.rays:
        c = [a + b for a, b in zip(c, r)]
    return tuple(c)


def point_type(p: Polytope, x: Sequence) -> int:
    """Number of facets tight at ``x`` for a full-dimensional simple polytope."""
    x = rq.vec(x)
    if p.dim != p.ambient_dim:
        raise NotSimple("point_type requires a full-dimensional polytope")
    for v in p.vertices:
        if len(p.tight_facets(v)) != p.ambient_dim:
            raise NotSimple(f"vertex {v} lies on more than {p.ambient_dim} facets")
    if not contains(p, x):
        raise PointOutside(f"{x} is not in the polytope")
    return len(p.tight_facets(x))


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ x + translation`` with exact rational entries."""

    matrix: tuple
    translation: tuple
    source: int | None = None  # needed only when the matrix has no rows

    def __post_init__(self):
        if len(self.matrix) != len(self.translation):
            raise ValueError("translation length must equal the number of matrix rows")
        widths = {len(r) for r in self.matrix}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        if self.source is not None and widths and widths != {self.source}:
            raise ValueError("matrix width disagrees with the source dimension")

    @classmethod
    def make(cls, matrix, translation=None, source_dim: int | None = None) -> "AffineMap":
        m = tuple(rq.vec(r) for r in matrix)
        t = rq.vec(translation) if translation is not None else tuple(Fraction(0) for _ in m)
        if source_dim is None and not m:
            raise ValueError("a map to R^0 needs an explicit source dimension")
        return cls(m, t, source_dim)

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls.make([[int(i == j) for j in range(n)] for i in range(n)], source_dim=n)

    @classmethod
    def projection(cls, n: int, coords: Sequence[int]) -> "AffineMap":
        """Keep the listed coordinates of R^n."""
        return cls.make([[int(j == c) for j in range(n)] for c in coords], source_dim=n)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else self.source

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    @property
    def rank(self) -> int:
        return rq.rank(self.matrix)

    @property
    def is_injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target_dim

    def __call__(self, x):
        return rq.add(rq.matvec(self.matrix, x), self.translation)

    def linear(self, x):
        return rq.matvec(self.matrix, x)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self ∘ inner``"""
        m = rq.matmul(self.matrix, inner.matrix)
        t = rq.add(rq.matvec(self.matrix, inner.translation), self.translation)
        return AffineMap(tuple(m), t, inner.source_dim)


def affine_image(p: Polytope, f: AffineMap) -> Polytope:
    if f.source_dim != p.ambient_dim:
        raise AmbientMismatch(f"map expects dimension {f.source_dim}, polytope has {p.ambient_dim}")
    if p.is_empty:
        return empty(f.target_dim)
    verts = [f(v) for v in p.vertices]
    rays = [f.linear(r) for r in p.rays]
    return from_vertices(verts, [r for r in rays if any(r)], f.target_dim)


def preimage(p: Polytope, f: AffineMap) -> Polytope:
    """``f^{-1}(p)``, possibly unbounded."""
    if f.target_dim != p.ambient_dim:
        raise AmbientMismatch(f"map lands in dimension {f.target_dim}, polytope has {p.ambient_dim}")
    n = f.source_dim
    if p.is_empty:
        return empty(n)
    hs = []
    for h in p.halfspaces:
        normal = tuple(sum((h.normal[i] * f.matrix[i][j] for i in range(f.target_dim)), Fraction(0))
                       for j in range(n))
        hs.append(Halfspace(normal, h.offset - rq.dot(h.normal, f.translation)))
    return from_halfspaces(hs, n)


def product(p: Polytope, q: Polytope) -> Polytope:
    """Cartesian product ``p × q``."""
    n, m = p.ambient_dim, q.ambient_dim
    if p.is_empty or q.is_empty:
        return empty(n + m)
    zero_n = tuple(Fraction(0) for _ in range(n))
    zero_m = tuple(Fraction(0) for _ in range(m))
    hs = [Halfspace(h.normal + zero_m, h.offset) for h in p.halfspaces]
    hs += [Halfspace(zero_n + h.normal, h.offset) for h in q.halfspaces]
    return from_halfspaces(hs, n + m)


def volume(p: Polytope) -> Fraction:
    """Exact ``ambient_dim``-volume (zero if lower-dimensional)."""
    if not p.bounded:
        raise ValueError("volume of an unbounded polyhedron")
    if p.dim < p.ambient_dim:
        return Fraction(0)
    n = p.ambient_dim
    total = Fraction(0)
    for simplex_ in triangulate(p, frozenset(range(len(p.vertices)))):
        pts = [p.vertices[i] for i in simplex_]
        m = [rq.sub(q, pts[0]) for q in pts[1:]]
        total += abs(rq.det(m))
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return total / fact


def triangulate(p: Polytope, face: frozenset) -> list:
    """Pulling triangulation of a face into simplices (tuples of vertex indices)."""
    lattice = p.face_lattice
    dims = {f: d for d, f in lattice}
    d = dims[face]
    if d == 0:
        return [tuple(face)]
    apex = min(face)
    out = []
    for g, gd in dims.items():
        if gd == d - 1 and g < face and apex not in g:
            for s in triangulate(p, g):
                out.append((apex,) + s)
    return out


def squared_face_volume_parts(p: Polytope, face: frozenset) -> list:
    """Squared k-volumes (exact) of the simplices triangulating a k-face."""
    out = []
    for s in triangulate(p, face):
        pts = [p.vertices[i] for i in s]
        vecs = [rq.sub(q, pts[0]) for q in pts[1:]]
        k = len(vecs)
        if k == 0:
            out.append(Fraction(1))
            continue
        gram = [[rq.dot(a, b) for b in vecs] for a in vecs]
        fact = 1
        for i in range(2, k + 1):
            fact *= i
        out.append(rq.det(gram) / (fact * fact))
    return out


def vertices_in_convex_position(points: Sequence) -> bool:
    """True when every point is a vertex of the hull of all points."""
    pts = [rq.vec(p) for p in points]
    hull = from_vertices(pts)
    return set(pts) == set(hull.vertices) and len(set(pts)) == len(pts)


def canonical_vertices(p: Polytope) -> list:
    return sorted(p.vertices)


def bounding_box(p: Polytope):
    n = p.ambient_dim
    lo = [min(v[i] for v in p.vertices) for i in range(n)]
    hi = [max(v[i] for v in p.vertices) for i in range(n)]
    return lo, hi


def brute_force_vertices(halfspaces: Sequence, n: int) -> set:
    """Vertex enumeration oracle: solve every n-subset of tight constraints."""
    hs = [h if isinstance(h, Halfspace) else Halfspace(rq.vec(h[0]), Fraction(h[1])) for h in halfspaces]
    out = set()
    for combo in itertools.combinations(hs, n):
        sol = rq.solve([h.normal for h in combo], [h.offset for h in combo])
        if sol is None:
            continue
        if all(h.value(sol) <= 0 for h in hs):
            out.add(sol)
    return out


def brute_force_facets(vertices: Sequence) -> set:
    """Facet oracle for full-dimensional hulls: hyperplanes through n-subsets
    of vertices that support the whole set. Returned canonically."""
    pts = [rq.vec(v) for v in vertices]
    n = len(pts[0])
    out = set()
    for combo in itertools.combinations(pts, n):
        base = combo[0]
        diffs = [rq.sub(q, base) for q in combo[1:]]
        ns = rq.nullspace(diffs, n)
        if len(ns) != 1:
            continue
        normal = ns[0]
        offset = rq.dot(normal, base)
        vals = [rq.dot(normal, q) - offset for q in pts]
        if all(v <= 0 for v in vals):
            out.add(_canonical_halfspace(normal, offset))
        elif all(v >= 0 for v in vals):
            out.add(_canonical_halfspace([-c for c in normal], -offset))
    return out
