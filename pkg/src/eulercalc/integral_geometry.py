"""Normal fans, external angles and intrinsic volumes of polytopes (dim <= 3).

``V_j(P) = Σ_{j-faces F} vol_j(F) · γ(F, P)`` where the external angle
``γ(F, P)`` is the normalized spherical measure of the normal cone of ``F``.
Normal cones are taken inside the direction space of ``aff(P)``, which makes
the result independent of the ambient space ``P`` sits in.

Floating point enters only through square roots of exact rationals and the
angle functions (arccos/atan2) applied to exact cosines.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import polytope as pt
from . import rational as rq
from .errors import DimensionUnsupported
from .polytope import Polytope

MAX_DIM = 3


def unit_ball_volume(j: int) -> float:
    """κ_j, the volume of the unit ball in R^j."""
    return math.pi ** (j / 2) / math.gamma(j / 2 + 1)


@dataclass(frozen=True)
class NormalFanEntry:
    face: frozenset  # vertex indices
    face_dim: int
    space_dim: int  # dim aff(P); the cone lives in its direction space
    normal_cone_generators: tuple  # exact outward facet normals (projected)
    adjacent_pairs: tuple = ()  # generator index pairs spanning 2-faces of the cone

    @property
    def codim(self) -> int:
        return self.space_dim - self.face_dim


@dataclass(frozen=True)
class NormalFan:
    polytope: Polytope
    entries: tuple

    def of_dim(self, d: int) -> list:
        return [e for e in self.entries if e.face_dim == d]


def _direction_projector(p: Polytope):
    """Orthogonal projector onto the direction space of aff(P), exact."""
    n = p.ambient_dim
    base = p.vertices[0]
    diffs = [rq.sub(v, base) for v in p.vertices[1:]]
    red, _ = rq.rref(diffs) if diffs else ([], [])
    if len(red) == n:
        return None  # identity
    if not red:
        return [[Fraction(0)] * n for _ in range(n)]
    b = rq.transpose(red)  # n x k
    btb_inv = rq.inverse(rq.matmul(red, b))
    return rq.matmul(rq.matmul(b, btb_inv), red)


def _check(p: Polytope) -> None:
    if p.ambient_dim > MAX_DIM:
        raise DimensionUnsupported(f"integral geometry supports ambient dimension <= {MAX_DIM}")
    if p.is_empty or not p.bounded:
        raise ValueError("a nonempty bounded polytope is required")


def normal_fan(p: Polytope) -> NormalFan:
    """Face / normal-cone pairs; vertex cones are generated by incident facet normals."""
    _check(p)
    proj = _direction_projector(p)
    facets = []
    for h in p.facets:
        normal = h.normal if proj is None else rq.matvec(proj, h.normal)
        tight = frozenset(i for i, v in enumerate(p.vertices) if h.value(v) == 0)
        facets.append((normal, tight))
    edges = [f for d, f in p.face_lattice if d == 1]
    entries = []
    for d, face in p.face_lattice:
        idx = [i for i, (_, tight) in enumerate(facets) if face <= tight]
        gens = tuple(facets[i][0] for i in idx)
        pairs = []
        if p.dim - d == 3:
            # two incident facets are adjacent in the cone iff they share an edge through the face
            for a in range(len(idx)):
                for b in range(a + 1, len(idx)):
                    shared = facets[idx[a]][1] & facets[idx[b]][1]
                    if any(e <= shared and face <= e for e in edges):
                        pairs.append((a, b))
        entries.append(NormalFanEntry(face, d, p.dim, gens, tuple(pairs)))
    return NormalFan(p, tuple(entries))


def _cos_between(a, b) -> float:
    """Cosine of the angle between rational vectors, rounded from an exact square."""
    ab = rq.dot(a, b)
    c2 = ab * ab / (rq.dot(a, a) * rq.dot(b, b))
    c = math.sqrt(float(c2))
    c = min(c, 1.0)
    return c if ab >= 0 else -c


def _unit(v) -> np.ndarray:
    x = np.array([float(c) for c in v])
    return x / np.linalg.norm(x)


def _triangle_solid_angle(a, b, c) -> float:
    """Solid angle of the cone over unit vectors a, b, c (Van Oosterom–Strackee)."""
    num = abs(float(np.dot(a, np.cross(b, c))))
    den = 1.0 + float(np.dot(a, b) + np.dot(a, c) + np.dot(b, c))
    return 2.0 * math.atan2(num, den)


def external_angle(entry: NormalFanEntry) -> float:
    """Normalized spherical measure of the entry's normal cone.

    Exact for codimension 0 and 1; arc fraction for codimension 2 (the
    dihedral complement); spherical-excess sum over a fan triangulation for
    vertex cones of 3-polytopes.
    """
    c = entry.codim
    if entry.space_dim > MAX_DIM:
        raise DimensionUnsupported("external angles need dim <= 3")
    if c == 0:
        return 1.0
    if c == 1:
        return 0.5
    gens = entry.normal_cone_generators
    if c == 2:
        a, b = gens
        return math.acos(_cos_between(a, b)) / (2.0 * math.pi)
    if c == 3:
        units = [_unit(g) for g in gens]
        center = sum(units)
        center = center / np.linalg.norm(center)
        omega = sum(_triangle_solid_angle(center, units[i], units[j]) for i, j in entry.adjacent_pairs)
        return omega / (4.0 * math.pi)
    raise DimensionUnsupported(f"codimension {c} normal cones are not supported")


def _orthonormal_complement_basis(p: Polytope, face: frozenset) -> np.ndarray:
    """Orthonormal basis of (direction space of aff P) ∩ (direction space of aff F)^⊥."""
    base = p.vertices[0]
    lp = np.array([[float(x) for x in rq.sub(v, base)] for v in p.vertices[1:]]).reshape(-1, p.ambient_dim)
    fv = [p.vertices[i] for i in sorted(face)]
    lf = np.array([[float(x) for x in rq.sub(v, fv[0])] for v in fv[1:]]).reshape(-1, p.ambient_dim)
    up, sp, _ = np.linalg.svd(lp.T, full_matrices=False) if lp.size else (np.zeros((p.ambient_dim, 0)), np.zeros(0), None)
    up = up[:, sp > 1e-12] if lp.size else up
    if lf.size:
        uf, sf, _ = np.linalg.svd(lf.T, full_matrices=False)
        uf = uf[:, sf > 1e-12]
        comp = up - uf @ (uf.T @ up)
    else:
        comp = up
    u, s, _ = np.linalg.svd(comp, full_matrices=False)
    return u[:, s > 1e-9]


def external_angle_mc(p: Polytope, entry: NormalFanEntry, samples: int, rng) -> tuple[float, float]:
    """Monte Carlo external angle: fraction of random directions in the normal cone.

    Directions are Gaussian in the cone's own linear space; ``u`` lies in the
    normal cone of F iff F's vertices maximize ``u·x`` over P. Returns
    ``(estimate, standard error)``.
    """
    basis = _orthonormal_complement_basis(p, entry.face)
    if basis.shape[1] == 0:
        return 1.0, 0.0
    dirs = rng.standard_normal((samples, basis.shape[1])) @ basis.T
    verts = np.array([[float(x) for x in v] for v in p.vertices])
    vals = dirs @ verts.T
    face_val = vals[:, min(entry.face)]
    hit = np.all(vals <= face_val[:, None] + 1e-12, axis=1)
    est = hit.mean()
    return float(est), float(math.sqrt(max(est * (1 - est), 1e-300) / samples))


def tangent_cone_solid_angle(p: Polytope, vertex_index: int) -> float:
    """Interior solid angle at a vertex of a 3-polytope, as a fraction of the sphere.

    The tangent cone is the polar of the normal cone, so its edges are the
    edges of P at the vertex and its facets the incident facets.
    """
    if p.ambient_dim != 3 or p.dim != 3:
        raise DimensionUnsupported("interior solid angles are defined here for 3-polytopes")
    v = p.vertices[vertex_index]
    edges = [f for d, f in p.face_lattice if d == 1 and vertex_index in f]
    dirs = {}
    for e in edges:
        (other,) = [i for i in e if i != vertex_index]
        dirs[e] = _unit(rq.sub(p.vertices[other], v))
    facets = [h for h in p.facets if h.value(v) == 0]
    center = sum(dirs.values())
    center = center / np.linalg.norm(center)
    omega = 0.0
    for h in facets:
        on = [d for e, d in dirs.items() if all(h.value(p.vertices[i]) == 0 for i in e)]
        if len(on) == 2:
            omega += _triangle_solid_angle(center, on[0], on[1])
    return omega / (4.0 * math.pi)


def face_volume_squared(p: Polytope, face: frozenset) -> Fraction:
    """Exact squared k-volume of a k-face.

    With a rational basis ``B`` of the face's direction space, every simplex
    volume is ``|det(coords in B)| / k! · sqrt(det BᵀB)``, so the face volume
    is ``R·sqrt(D)`` with ``R, D`` rational and its square is exact.
    """
    verts = [p.vertices[i] for i in sorted(face)]
    base = verts[0]
    red, _ = rq.rref([rq.sub(v, base) for v in verts[1:]]) if len(verts) > 1 else ([], [])
    k = len(red)
    if k == 0:
        return Fraction(1)
    gram = rq.det([[rq.dot(a, b) for b in red] for a in red])
    bt = rq.transpose(red)  # n x k
    # coordinates in basis `red`: least-squares is exact since vectors lie in the span
    normal_mat = rq.inverse(rq.matmul(red, bt))
    total = Fraction(0)
    for s in pt.triangulate(p, face):
        pts = [p.vertices[i] for i in s]
        coords = [rq.matvec(normal_mat, rq.matvec(red, rq.sub(q, pts[0]))) for q in pts[1:]]
        total += abs(rq.det(coords))
    fact = math.factorial(k)
    r = total / fact
    return r * r * gram


@dataclass(frozen=True)
class IntrinsicVolumeVector:
    values: tuple  # floats V_0 .. V_n
    exact_volume: Fraction | None = None  # V_n when P is full-dimensional

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def to_json(self) -> dict:
        out = {"values": list(self.values)}
        if self.exact_volume is not None:
            out["exact_volume"] = rq.format_rational(self.exact_volume)
        return out


def intrinsic_volumes(p: Polytope, fan: NormalFan | None = None) -> IntrinsicVolumeVector:
    """``(V_0, …, V_n)`` with ``V_j = Σ_F vol_j(F) γ(F, P)`` over j-faces F.

    Sums use :func:`math.fsum`, so the result does not depend on vertex order
    and isometric copies of P produce identical floats.
    """
    _check(p)
    fan = fan or normal_fan(p)
    n = p.ambient_dim
    parts: list[list[float]] = [[] for _ in range(n + 1)]
    for e in fan.entries:
        vol = math.sqrt(float(face_volume_squared(p, e.face)))
        parts[e.face_dim].append(vol * external_angle(e))
    values = tuple(math.fsum(ps) for ps in parts)
    exact = pt.volume(p) if p.dim == n else None
    if exact is not None:
        values = values[:n] + (float(exact),)
    return IntrinsicVolumeVector(values, exact)


def steiner_polynomial(v: IntrinsicVolumeVector, eps: float) -> float:
    """``vol(P_ε) = Σ_i ε^{n-i} κ_{n-i} V_i``."""
    n = len(v) - 1
    return math.fsum(eps ** (n - i) * unit_ball_volume(n - i) * v[i] for i in range(n + 1))


def perimeter(p: Polytope) -> float:
    """Boundary length of a planar convex body; ``2·length`` for a segment."""
    if p.ambient_dim != 2:
        raise DimensionUnsupported("perimeter is defined for bodies in R^2")
    return 2.0 * intrinsic_volumes(p)[1]
