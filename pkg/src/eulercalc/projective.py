"""Real projective space through homogeneous rational coordinates.

A convex compact body in RP^n is stored as a salient polyhedral cone in
Q^{n+1} together with a hyperplane that misses it. Incidence with
hyperplanes and duality are sign tests on cone generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polytope as pt
from . import rational as rq
from .cones import cone_generators
from .errors import DimensionUnsupported, LowerDimensionalBody, ValidationError
from .polytope import AffineMap, Polytope

INTERIOR = pt.INTERIOR
BOUNDARY = pt.BOUNDARY
OUTSIDE = pt.OUTSIDE


def proj(values: Sequence) -> tuple:
    """Canonical homogeneous vector (primitive integers, first nonzero > 0)."""
    out = rq.canonical_projective(values)
    if not any(out):
        raise ValidationError("homogeneous coordinates must not all vanish")
    return out


def _pair(a, b) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True, eq=False)
class ProjBody:
    """Convex body ``K = r(C \\ 0)`` for the cone ``C`` spanned by ``cone_generators``.

    Generators are primitive integer extreme rays oriented so that the stored
    ``witness`` pairs strictly positively with each of them.
    """

    n: int
    cone_generators: tuple
    witness: tuple
    dual_generators: tuple = field(repr=False)
    dual_lineality: tuple = field(repr=False)

    @property
    def cone_dim(self) -> int:
        return rq.rank(self.cone_generators)

    @property
    def full_dimensional(self) -> bool:
        return self.cone_dim == self.n + 1

    def _key(self):
        gens = tuple(sorted(self.cone_generators))
        neg = tuple(sorted(tuple(-x for x in g) for g in self.cone_generators))
        return (self.n, min(gens, neg))

    def __eq__(self, other):
        if not isinstance(other, ProjBody):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def contains(self, x) -> bool:
        return classify_point(self, x) != OUTSIDE


def make_body(generators: Sequence, witness: Sequence | None = None, n: int | None = None) -> ProjBody:
    """Validate and canonicalize a projective convex body.

    If ``witness`` is omitted one is derived from an interior point of the
    dual cone; a cone containing a line has none and is rejected.
    """
    gens = [tuple(Fraction(c) for c in g) for g in generators]
    if not gens:
        raise ValidationError("a projective body needs at least one generator")
    if n is None:
        n = len(gens[0]) - 1
    if n + 1 > pt.MAX_AMBIENT_DIM or n < 1:
        raise DimensionUnsupported(f"RP^{n} is outside the supported range 1..{pt.MAX_AMBIENT_DIM - 1}")
    for g in gens:
        if len(g) != n + 1:
            raise ValidationError(f"generator {g} is not in Q^{n + 1}")
    # C^o first, then C back as the dual of C^o: yields extreme rays and lineality of C
    facets, facet_lin = cone_generators(gens, n + 1)
    rows = list(facets) + list(facet_lin) + [tuple(-c for c in l) for l in facet_lin]
    rays, lin = cone_generators(rows, n + 1)
    if lin:
        raise ValidationError("cone contains a line: not a convex body in projective space")
    if witness is None:
        # C salient => C^o full-dimensional; the sum of its pointed extreme rays is interior
        witness = [sum(col) for col in zip(*facets)]
    witness = proj(witness)
    if not all(_pair(witness, g) > 0 for g in rays):
        if all(_pair(witness, g) < 0 for g in rays):
            rays = [tuple(-c for c in g) for g in rays]
            facets = [tuple(-c for c in f) for f in facets]
        else:
            raise ValidationError("witness hyperplane meets the body")
    return ProjBody(n, tuple(sorted(rays)), witness, tuple(facets), tuple(facet_lin))


def from_chart_polytope(p: Polytope) -> ProjBody:
    """Body in RP^n from a bounded polytope in the standard chart ``x -> [1 : x]``."""
    if not p.bounded or p.is_empty:
        raise ValidationError("chart polytope must be nonempty and bounded")
    gens = [(Fraction(1),) + tuple(v) for v in p.vertices]
    w = [1] + [0] * p.ambient_dim
    return make_body(gens, w)


def transform(k: ProjBody, g: Sequence[Sequence]) -> ProjBody:
    """Image under a linear map ``g`` in GL(n+1, Q)."""
    gens = [rq.matvec(g, v) for v in k.cone_generators]
    ginv = rq.inverse(g)
    w = rq.matvec(rq.transpose(ginv), k.witness)
    return make_body(gens, w)


def transform_hyperplane(h: Sequence, g: Sequence[Sequence]) -> tuple:
    """Hyperplanes move by the inverse transpose."""
    return proj(rq.matvec(rq.transpose(rq.inverse(g)), h))


def transform_point(x: Sequence, g: Sequence[Sequence]) -> tuple:
    return proj(rq.matvec(g, x))


def dual_body(k: ProjBody) -> ProjBody:
    """``K^∨ = r(C^o)``, the hyperplanes not meeting the interior of ``K``."""
    if not k.full_dimensional:
        raise LowerDimensionalBody("dual body needs a body with nonempty interior")
    witness = [sum(col) for col in zip(*k.cone_generators)]
    return make_body(k.dual_generators, witness, k.n)


def meets(k: ProjBody, h: Sequence) -> bool:
    """True iff the hyperplane ``h`` intersects ``K`` (tangency counts)."""
    vals = [_pair(h, g) for g in k.cone_generators]
    return not (all(v > 0 for v in vals) or all(v < 0 for v in vals))


def classify_point(k: ProjBody, x: Sequence) -> str:
    """Interior / boundary / outside for a point of RP^n.

    For lower-dimensional bodies nothing is interior; membership then also
    requires the point to lie in the linear span of the cone.
    """
    if any(_pair(l, x) != 0 for l in k.dual_lineality):
        return OUTSIDE
    vals = [_pair(f, x) for f in k.dual_generators]
    if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
        if k.full_dimensional and (all(v > 0 for v in vals) or all(v < 0 for v in vals)):
            return INTERIOR
        return BOUNDARY
    return OUTSIDE


def chart_embed(k: ProjBody):
    """Affine picture of ``K`` in the chart ``{⟨witness, y⟩ = 1}``.

    Returns ``(lift, polytope)`` where ``lift`` is the affine map sending chart
    coordinates to homogeneous coordinates and ``polytope`` the bounded image.
    """
    w = k.witness
    n = k.n
    j = next(i for i, c in enumerate(w) if c != 0)
    rows = [tuple(Fraction(c) for c in w)]
    rows += [tuple(Fraction(int(i == m)) for m in range(n + 1)) for i in range(n + 1) if i != j]
    inv = rq.inverse(rows)
    # y = inv @ (1, u): split into translation (first column) and linear part
    translation = tuple(r[0] for r in inv)
    matrix = tuple(tuple(r[1:]) for r in inv)
    lift = AffineMap(matrix, translation)
    verts = []
    for g in k.cone_generators:
        s = _pair(w, g)
        z = rq.matvec(rows, g)
        verts.append(tuple(c / s for c in z[1:]))
    return lift, pt.from_vertices(verts, ambient_dim=n)


def cone_over_chart(lift: AffineMap, p: Polytope, witness: Sequence) -> ProjBody:
    """Inverse of :func:`chart_embed`."""
    return make_body([lift(v) for v in p.vertices], witness)


def chi_projective_space(d: int) -> Fraction:
    """Euler characteristic of RP^d: 1 for even d, 0 for odd d."""
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    return Fraction(1 + (-1) ** d, 2)


def pencil_basis(x: Sequence) -> list:
    """Basis of the hyperplanes through the point ``x`` (a copy of RP^{n-1})."""
    return [rq.primitive_int(b) for b in rq.nullspace([tuple(Fraction(c) for c in x)], len(x))]
