"""Monte Carlo checks of the Steiner, Cauchy–Crofton and planar kinematic formulas.

All estimators are hit-or-miss averages over a sampling window whose measure
is known exactly, so the reported standard error is the binomial one. The
window always covers every configuration that can produce a hit, so there is
no truncation bias.

Randomness: the sample budget is split into fixed-size chunks and chunk ``i``
draws from ``SeedSequence(seed).spawn(...)[i]``. Results depend on
``(seed, samples)`` only, not on the number of worker threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from . import polytope as pt
from .errors import DimensionUnsupported, NotConvex, NotFullDim
from .integral_geometry import intrinsic_volumes, steiner_polynomial
from .polytope import Polytope

CHUNK = 1 << 16


@dataclass
class MCReport:
    estimate: float
    stderr: float
    reference: float
    samples: int
    seed: int
    sigmas: float = 4.0
    details: dict = field(default_factory=dict)

    @property
    def error(self) -> float:
        return self.estimate - self.reference

    @property
    def relative_error(self) -> float:
        return self.error / self.reference if self.reference else float("nan")

    @property
    def passed(self) -> bool:
        if self.stderr == 0:
            return abs(self.error) <= 1e-12 * max(1.0, abs(self.reference))
        return abs(self.error) < self.sigmas * self.stderr

    def to_json(self) -> dict:
        def finite(x):
            return x if math.isfinite(x) else None

        out = {
            "estimate": self.estimate,
            "stderr": self.stderr,
            "reference": finite(self.reference),
            "relative_error": finite(self.relative_error),
            "pass": self.passed,
            "samples": self.samples,
            "seed": self.seed,
        }
        out.update(self.details)
        return out


def hit_fraction(seed: int, samples: int, kernel: Callable, workers: int = 1) -> tuple[float, float]:
    """Mean and standard error of a 0/1 kernel ``kernel(rng, size) -> hit count``."""
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i):
        return int(kernel(np.random.default_rng(children[i]), sizes[i]))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = list(pool.map(run, range(len(sizes))))
    else:
        hits = [run(i) for i in range(len(sizes))]
    p = sum(hits) / samples
    return p, math.sqrt(p * (1 - p) / samples)


def _float_vertices(p: Polytope) -> np.ndarray:
    return np.array([[float(x) for x in v] for v in p.vertices])


# --------------------------------------------------------------------------
# Steiner


def _face_projectors(p: Polytope):
    """(origin, orthonormal basis) of aff(F) for every face F, polytope included."""
    verts = _float_vertices(p)
    out = []
    for d, face in p.face_lattice:
        pts = verts[sorted(face)]
        origin = pts[0]
        if d == 0:
            out.append((origin, np.zeros((p.ambient_dim, 0))))
            continue
        u, s, _ = np.linalg.svd((pts[1:] - origin).T, full_matrices=False)
        out.append((origin, u[:, s > 1e-12]))
    return out


def distance_to_polytope(p: Polytope, x: np.ndarray) -> np.ndarray:
    """Euclidean distance from each row of ``x`` to the convex polytope.

    The nearest point lies in the relative interior of some face and is the
    orthogonal projection onto that face's affine hull; projections landing
    outside P are discarded.
    """
    a = np.array([[float(c) for c in h.normal] for h in p.halfspaces])
    b = np.array([float(h.offset) for h in p.halfspaces])
    scale = 1e-9 * (1.0 + np.abs(b))
    best = np.full(x.shape[0], np.inf)
    for origin, basis in _face_projectors(p):
        rel = x - origin
        proj = origin + (rel @ basis) @ basis.T
        inside = np.all(proj @ a.T - b <= scale, axis=1)
        d = np.linalg.norm(x - proj, axis=1)
        best = np.where(inside, np.minimum(best, d), best)
    return best


def steiner_check(p: Polytope, epsilons: Sequence[float], samples: int, seed: int = 0, workers: int = 1) -> list[MCReport]:
    """Tube volume ``vol(P_ε)`` by uniform sampling in the ε-padded bounding box."""
    if p.ambient_dim > 3:
        raise DimensionUnsupported("Steiner check supports ambient dimension <= 3")
    v = intrinsic_volumes(p)
    verts = _float_vertices(p)
    lo0, hi0 = verts.min(axis=0), verts.max(axis=0)
    reports = []
    for k, eps in enumerate(epsilons):
        eps = float(eps)
        poly = steiner_polynomial(v, eps)
        if eps == 0:
            exact = v[p.ambient_dim]
            reports.append(MCReport(exact, 0.0, poly, 0, seed, details={"epsilon": 0.0}))
            continue
        lo, hi = lo0 - eps, hi0 + eps
        box_vol = float(np.prod(hi - lo))

        def kernel(rng, size, lo=lo, hi=hi, eps=eps):
            x = rng.uniform(lo, hi, size=(size, p.ambient_dim))
            return np.count_nonzero(distance_to_polytope(p, x) <= eps)

        frac, se = hit_fraction(seed + k, samples, kernel, workers)
        reports.append(MCReport(
            box_vol * frac, box_vol * se, poly, samples, seed + k,
            details={"epsilon": eps, "window": {"lo": lo.tolist(), "hi": hi.tolist(), "measure": box_vol}},
        ))
    return reports


# --------------------------------------------------------------------------
# planar helpers


def as_convex_body(body) -> Polytope:
    """Accept a polytope or a vertex list; vertex lists must be in convex position."""
    if isinstance(body, Polytope):
        return body
    pts = [tuple(p) for p in body]
    if not pt.vertices_in_convex_position(pts):
        raise NotConvex("vertex list is not in convex position")
    return pt.from_vertices(pts)


def ccw_vertices(p: Polytope) -> np.ndarray:
    """Vertices of a planar polytope in counterclockwise order."""
    verts = _float_vertices(p)
    c = verts.mean(axis=0)
    ang = np.arctan2(verts[:, 1] - c[1], verts[:, 0] - c[0])
    return verts[np.argsort(ang)]


def _edge_normals(verts: np.ndarray) -> np.ndarray:
    if len(verts) < 2:
        return np.zeros((0, 2))
    edges = np.roll(verts, -1, axis=0) - verts
    if len(verts) == 2:
        edges = edges[:1]
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
    return normals / np.linalg.norm(normals, axis=1, keepdims=True)


def _circumradius(verts: np.ndarray) -> tuple[np.ndarray, float]:
    c = verts.mean(axis=0)
    return c, float(np.max(np.linalg.norm(verts - c, axis=1)))


# --------------------------------------------------------------------------
# Cauchy–Crofton


def cauchy_crofton_check(body, samples: int, seed: int = 0, workers: int = 1) -> MCReport:
    """Measure of lines meeting a planar convex body against its perimeter.

    Lines ``{x : x·(cos θ, sin θ) = p}`` with ``θ ∈ [0, π)`` and ``p`` in
    ``[u·c - R, u·c + R]`` (``c`` the vertex centroid, ``R`` the circumradius
    about it) carry the measure ``dp dθ``; the window has measure ``2πR``.
    """
    k = as_convex_body(body)
    if k.ambient_dim != 2:
        raise DimensionUnsupported("Cauchy–Crofton check lives in R^2")
    if k.dim < 1:
        raise NotFullDim("a single point meets a null set of lines")
    verts = _float_vertices(k)
    c, r = _circumradius(verts)
    reference = 2.0 * intrinsic_volumes(k)[1]

    def kernel(rng, size):
        theta = rng.uniform(0.0, math.pi, size)
        u = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        mid = u @ c
        p = mid + rng.uniform(-r, r, size)
        proj = u @ verts.T
        return np.count_nonzero((proj.min(axis=1) <= p) & (p <= proj.max(axis=1)))

    frac, se = hit_fraction(seed, samples, kernel, workers)
    window = 2.0 * math.pi * r
    return MCReport(window * frac, window * se, reference, samples, seed,
                    details={"window": {"center": c.tolist(), "radius": r, "measure": window},
                             "reference_kind": "perimeter"})


# --------------------------------------------------------------------------
# kinematic formula


def kinematic_closed_form(area_k, perim_k, area_l, perim_l) -> float:
    """``2π(A_K + A_L) + P_K P_L``; pinned by :func:`disk_disk_oracle`."""
    return 2.0 * math.pi * (area_k + area_l) + perim_k * perim_l


def disk_disk_oracle(r: float, s: float) -> dict:
    """Kinematic measure of motions bringing a radius-s disk onto a radius-r disk.

    Disks meet iff the centres are within ``r + s``; integrating the indicator
    over concentric circles of translations, ``∫_0^∞ [ρ ≤ r+s] 2πρ dρ``, and
    over the rotation angle gives the left-hand side by quadrature. The
    closed form is evaluated with disk areas and perimeters.
    """
    radial, _ = integrate.quad(lambda rho: 2.0 * math.pi * rho * (rho <= r + s), 0.0, 2.0 * (r + s) + 1.0,
                               points=[r + s], limit=200)
    lhs = 2.0 * math.pi * radial
    rhs = kinematic_closed_form(math.pi * r * r, 2 * math.pi * r, math.pi * s * s, 2 * math.pi * s)
    return {"r": r, "s": s, "quadrature": lhs, "closed_form": rhs, "relative_error": abs(lhs - rhs) / rhs}


DISK_CASES = ((1.0, 1.0), (1.0, 0.25), (0.5, 2.0), (1.0, 0.0))


def validate_kinematic_constants(tol: float = 1e-9) -> dict:
    cases = [disk_disk_oracle(r, s) for r, s in DISK_CASES]
    return {"cases": cases, "validated": all(c["relative_error"] < tol for c in cases)}


def _separated(kv, k_axes, lv, l_axes) -> np.ndarray:
    """Separating-axis test; ``lv``: (N, m, 2) moved vertices, ``l_axes``: (N, a, 2)."""
    sep = np.zeros(lv.shape[0], dtype=bool)
    if len(k_axes):
        pk = kv @ k_axes.T  # (mk, ak)
        pl = np.einsum("nmd,ad->nam", lv, k_axes)  # (N, ak, ml)
        sep |= np.any((pl.min(axis=2) > pk.max(axis=0)) | (pl.max(axis=2) < pk.min(axis=0)), axis=1)
    if l_axes.shape[1]:
        pk = np.einsum("md,nad->nam", kv, l_axes)
        pl = np.einsum("nmd,nad->nam", lv, l_axes)
        sep |= np.any((pl.min(axis=2) > pk.max(axis=2)) | (pl.max(axis=2) < pk.min(axis=2)), axis=1)
    return sep


def kinematic_check_R2(k_body, l_body, samples: int, seed: int = 0, window: float | None = None,
                       workers: int = 1) -> MCReport:
    """``∫ χ(K ∩ gL) dg`` over rigid motions ``g = (θ, t)`` with measure ``dθ dt``.

    ``gL = R_θ(L - c_L) + c_L + t``: rotate L about its centroid, then
    translate. By default ``t`` is uniform in the square of half-width
    ``r_K + r_L`` (circumradii) around ``c_K - c_L``, which contains every
    intersecting motion. An explicit ``window`` is a half-width around the
    identity motion; the closed form is only the reference when that square
    covers all intersecting motions, and the reference is 0 when it misses them.
    """
    k = as_convex_body(k_body)
    l = as_convex_body(l_body)
    if k.ambient_dim != 2 or l.ambient_dim != 2:
        raise DimensionUnsupported("kinematic check lives in R^2")
    kv, lv0 = ccw_vertices(k), ccw_vertices(l)
    ck, rk = _circumradius(kv)
    cl, rl = _circumradius(lv0)
    reach = rk + rl
    if window is None:
        half, center = reach, ck - cl
    else:
        half, center = float(window), np.zeros(2)
    k_axes = _edge_normals(kv)
    l_axes0 = _edge_normals(lv0)
    lrel = lv0 - cl
    vk, vl = intrinsic_volumes(k), intrinsic_volumes(l)
    closed = kinematic_closed_form(vk[2], 2 * vk[1], vl[2], 2 * vl[1])
    # hits need |t - (c_K - c_L)| <= r_K + r_L
    offset = np.abs(ck - cl - center)
    covers = bool(np.all(offset + reach <= half + 1e-12))
    gap = np.maximum(offset - half, 0.0)
    misses = bool(np.linalg.norm(gap) > reach)

    def kernel(rng, size):
        theta = rng.uniform(0.0, 2.0 * math.pi, size)
        t = cl + center + rng.uniform(-half, half, size=(size, 2))
        cos, sin = np.cos(theta), np.sin(theta)
        rot = np.stack([np.stack([cos, -sin], -1), np.stack([sin, cos], -1)], -2)  # (N, 2, 2)
        moved = np.einsum("nij,mj->nmi", rot, lrel) + t[:, None, :]
        axes = np.einsum("nij,aj->nai", rot, l_axes0)
        return np.count_nonzero(~_separated(kv, k_axes, moved, axes))

    frac, se = hit_fraction(seed, samples, kernel, workers)
    measure = 2.0 * math.pi * (2.0 * half) ** 2
    details = {
        "window": {"translation_center": center.tolist(), "half_width": half, "reach": reach,
                   "covers_all_motions": covers, "misses_all_motions": misses, "measure": measure},
        "oracle": validate_kinematic_constants(),
        "reference_formula": "2*pi*(area(K)+area(L)) + perimeter(K)*perimeter(L)",
        "closed_form": closed,
    }
    if covers:
        reference = closed
    elif misses:
        reference = 0.0
        details["reference_formula"] = "0 (no motion in the window brings L onto K)"
    else:
        reference = float("nan")
        details["reference_formula"] = "none: window cuts through the intersecting motions"
    return MCReport(measure * frac, measure * se, reference, samples, seed, details=details)
