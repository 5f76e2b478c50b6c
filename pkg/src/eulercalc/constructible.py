"""Constructible functions: rational combinations of convex polyhedral indicators.

A :class:`ConstructibleFn` on R^n is ``sum a_i 1_{K_i}`` with closed convex
supports. The ring operations act on the term lists; anything that needs the
function as a set map (extensional equality, compact support, the χ_c cell
sum) goes through :func:`normalize`, which refines the union of supports by
the arrangement of all facet hyperplanes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import arrangement as arr
from . import polytope as pt
from . import rational as rq
from .errors import (
    AmbientMismatch,
    ArrangementTooLarge,
    NotCompactlySupported,
    UnboundedTerm,
)
from .polytope import AffineMap, Polytope

MAX_HYPERPLANES = 24


@dataclass(frozen=True, eq=False)
class ConstructibleFn:
    ambient_dim: int
    terms: tuple  # of (Fraction weight, Polytope support)

    def __post_init__(self):
        merged: dict[Polytope, Fraction] = {}
        for w, k in self.terms:
            if k.ambient_dim != self.ambient_dim:
                raise AmbientMismatch(
                    f"support in R^{k.ambient_dim} inside a function on R^{self.ambient_dim}"
                )
            w = Fraction(w)
            if w == 0 or k.is_empty:
                continue
            merged[k] = merged.get(k, Fraction(0)) + w
        clean = tuple((w, k) for k, w in merged.items() if w != 0)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def indicator(cls, k: Polytope, weight=1) -> "ConstructibleFn":
        return cls(k.ambient_dim, ((Fraction(weight), k),))

    @classmethod
    def zero(cls, n: int) -> "ConstructibleFn":
        return cls(n, ())

    @classmethod
    def constant(cls, n: int, value=1) -> "ConstructibleFn":
        """``value`` times the indicator of all of R^n (not compactly supported)."""
        return cls(n, ((Fraction(value), pt.from_halfspaces([], n)),))

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def __add__(self, other: "ConstructibleFn") -> "ConstructibleFn":
        _same_ambient(self, other)
        return ConstructibleFn(self.ambient_dim, self.terms + other.terms)

    def __neg__(self) -> "ConstructibleFn":
        return ConstructibleFn(self.ambient_dim, tuple((-w, k) for w, k in self.terms))

    def __sub__(self, other: "ConstructibleFn") -> "ConstructibleFn":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ConstructibleFn):
            return multiply(self, other)
        c = Fraction(other)
        return ConstructibleFn(self.ambient_dim, tuple((c * w, k) for w, k in self.terms))

    __rmul__ = __mul__

    def __repr__(self):
        parts = [f"{rq.format_rational(w)}*{k!r}" for w, k in self.terms]
        return f"ConstructibleFn(R^{self.ambient_dim}: " + " + ".join(parts or ["0"]) + ")"

    @property
    def bounded_terms(self) -> bool:
        return all(k.bounded for _, k in self.terms)

    @cached_property
    def compactly_supported(self) -> bool:
        if self.bounded_terms:
            return True
        return all(c.bounded or v == 0 for c, v in _decomposition_cells(self))

    def equals(self, other: "ConstructibleFn") -> bool:
        return extensionally_equal(self, other)


def _same_ambient(a: ConstructibleFn, b: ConstructibleFn) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"functions live on R^{a.ambient_dim} and R^{b.ambient_dim}")


def evaluate(phi: ConstructibleFn, x: Sequence) -> Fraction:
    x = rq.vec(x)
    if len(x) != phi.ambient_dim:
        raise AmbientMismatch(f"point of length {len(x)} for a function on R^{phi.ambient_dim}")
    return sum((w for w, k in phi.terms if pt.contains(k, x)), Fraction(0))


def multiply(phi: ConstructibleFn, psi: ConstructibleFn) -> ConstructibleFn:
    """Pointwise product; ``1_K * 1_L = 1_{K ∩ L}`` term by term."""
    _same_ambient(phi, psi)
    terms = []
    for a, k in phi.terms:
        for b, l in psi.terms:
            kl = k if k == l else pt.intersect(k, l)
            if not kl.is_empty:
                terms.append((a * b, kl))
    return ConstructibleFn(phi.ambient_dim, tuple(terms))


def euler_integral(phi: ConstructibleFn) -> Fraction:
    """``∫ φ dχ = Σ a_i χ(K_i)`` with χ = 1 on every nonempty closed convex set.

    Valid for compactly supported φ even when individual terms are unbounded:
    the discrepancy between χ and χ_c on unbounded convex sets only sees the
    function near infinity, where φ vanishes.
    """
    if not phi.compactly_supported:
        raise NotCompactlySupported("Euler integral needs a compactly supported function")
    return sum((w for w, _ in phi.terms), Fraction(0))


def euler_integral_cells(phi: ConstructibleFn) -> Fraction:
    """Same integral computed independently as ``Σ value·(-1)^dim`` over cells."""
    if not phi.compactly_supported:
        raise NotCompactlySupported("Euler integral needs a compactly supported function")
    return normalize(phi).euler_integral()


def pullback(phi: ConstructibleFn, f: AffineMap) -> ConstructibleFn:
    """``f^*φ = φ ∘ f``: term-wise preimages."""
    if f.target_dim != phi.ambient_dim:
        raise AmbientMismatch(f"map lands in R^{f.target_dim}, function lives on R^{phi.ambient_dim}")
    return ConstructibleFn(f.source_dim, tuple((w, pt.preimage(k, f)) for w, k in phi.terms))


def pushforward(phi: ConstructibleFn, f: AffineMap) -> ConstructibleFn:
    """Fiberwise Euler integration ``(f_*φ)(y) = ∫_{f^{-1}(y)} φ dχ``.

    Every support must be bounded: then each fiber ``K_i ∩ f^{-1}(y)`` is compact
    convex, so ``f_* 1_{K_i} = 1_{f(K_i)}``.
    """
    if f.source_dim != phi.ambient_dim:
        raise AmbientMismatch(f"map expects R^{f.source_dim}, function lives on R^{phi.ambient_dim}")
    for _, k in phi.terms:
        if not k.bounded:
            raise UnboundedTerm("pushforward needs bounded supports")
    return ConstructibleFn(f.target_dim, tuple((w, pt.affine_image(k, f)) for w, k in phi.terms))


def exterior_product(phi: ConstructibleFn, psi: ConstructibleFn) -> ConstructibleFn:
    """``(φ ⊠ ψ)(x, y) = φ(x) ψ(y)`` on R^{m+n}."""
    terms = []
    for a, k in phi.terms:
        for b, l in psi.terms:
            terms.append((a * b, pt.product(k, l)))
    return ConstructibleFn(phi.ambient_dim + psi.ambient_dim, tuple(terms))


# --------------------------------------------------------------------------
# normal form


@dataclass(frozen=True)
class CellDecomposition:
    ambient_dim: int
    hyperplanes: tuple
    cells: tuple  # of (arr.Cell, Fraction value)

    def euler_integral(self) -> Fraction:
        return arr.euler_characteristic_c((c.dim, v) for c, v in self.cells)

    def is_zero(self) -> bool:
        return all(v == 0 for _, v in self.cells)

    def value_at(self, x) -> Fraction:
        signs = tuple(h.side(x) for h in self.hyperplanes)
        for c, v in self.cells:
            if c.signs == signs:
                return v
        return Fraction(0)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "hyperplanes": [
                {"normal": [rq.format_rational(c) for c in h.normal], "offset": rq.format_rational(h.offset)}
                for h in self.hyperplanes
            ],
            "cells": [
                {
                    "signs": list(c.signs),
                    "dim": c.dim,
                    "bounded": c.bounded,
                    "witness": [rq.format_rational(x) for x in c.witness],
                    "value": rq.format_rational(v),
                }
                for c, v in self.cells
            ],
        }


def normalize(phi: ConstructibleFn, max_hyperplanes: int = MAX_HYPERPLANES) -> CellDecomposition:
    """Refine the union of supports by the arrangement of all facet hyperplanes.

    Each relatively open cell is labelled by evaluating φ at a rational witness
    in the cell, so open/closed boundary behaviour is decided pointwise.
    """
    hps = arr.hyperplanes_of([k for _, k in phi.terms])
    if len(hps) > max_hyperplanes:
        raise ArrangementTooLarge(f"{len(hps)} hyperplanes exceed the cap of {max_hyperplanes}")
    found: dict[tuple, arr.Cell] = {}
    for _, k in phi.terms:
        for c in arr.cells(hps, phi.ambient_dim, region=k):
            found.setdefault(c.signs, c)
    cells = tuple(
        (c, evaluate(phi, c.witness)) for _, c in sorted(found.items(), key=lambda kv: kv[0])
    )
    return CellDecomposition(phi.ambient_dim, tuple(hps), cells)


def _decomposition_cells(phi: ConstructibleFn):
    return [(c, v) for c, v in normalize(phi).cells]


def extensionally_equal(phi: ConstructibleFn, psi: ConstructibleFn) -> bool:
    """Pointwise equality everywhere, decided on the joint arrangement."""
    _same_ambient(phi, psi)
    return normalize(phi - psi).is_zero()


# --------------------------------------------------------------------------
# one-dimensional restrictions (shared by the fiber oracle and line transforms)


def _clip_to_line(k: Polytope, base, direction):
    """Parameter interval ``{s : base + s·direction ∈ k}`` as ``(lo, hi)``.

    ``None`` bounds are infinite; returns ``None`` for an empty slice.
    """
    lo = hi = None
    for h in k.halfspaces:
        alpha = rq.dot(h.normal, direction)
        beta = h.offset - rq.dot(h.normal, base)
        if alpha == 0:
            if beta < 0:
                return None
            continue
        bound = beta / alpha
        if alpha > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def _in_interval(s, iv) -> bool:
    lo, hi = iv
    return (lo is None or lo <= s) and (hi is None or s <= hi)


def line_restriction_integral(terms, base, direction) -> Fraction:
    """χ_c-integral of ``Σ w 1_K`` restricted to the line ``base + s·direction``.

    Exact 1-D arrangement: breakpoints are the interval endpoints, every point
    cell contributes ``+value`` and every open interval (bounded or not) ``-value``.
    """
    pieces = []
    points = set()
    for w, k in terms:
        iv = _clip_to_line(k, base, direction)
        if iv is None:
            continue
        pieces.append((w, iv))
        points.update(b for b in iv if b is not None)
    if not pieces:
        return Fraction(0)

    def value(s):
        return sum((w for w, iv in pieces if _in_interval(s, iv)), Fraction(0))

    pts = sorted(points)
    if not pts:
        return -value(Fraction(0))
    total = Fraction(0)
    for p in pts:
        total += value(p)
    witnesses = [pts[0] - 1] + [(a + b) / 2 for a, b in zip(pts, pts[1:])] + [pts[-1] + 1]
    for s in witnesses:
        total -= value(s)
    return total


def pushforward_fiber_oracle(phi: ConstructibleFn, f: AffineMap) -> ConstructibleFn:
    """Independent push-forward R^2 -> R^1 by explicit fiber integration.

    The critical values are the images of all support vertices; on each of them
    and on each open interval between consecutive ones the fiber integral is
    computed by :func:`line_restriction_integral` and the results are glued into
    a constructible function on R^1.
    """
    if phi.ambient_dim != 2 or f.source_dim != 2 or f.target_dim != 1:
        raise AmbientMismatch("fiber oracle handles maps R^2 -> R^1 only")
    if not phi.compactly_supported:
        raise NotCompactlySupported("fiber oracle needs a compactly supported function")
    a = f.matrix[0]
    if not any(a):
        raise ValueError("fiber oracle needs a nonconstant map")
    b = f.translation[0]
    norm2 = rq.dot(a, a)
    direction = (-a[1], a[0])

    def fiber(y):
        base = rq.scale((y - b) / norm2, a)
        return line_restriction_integral(phi.terms, base, direction)

    crit = sorted({f(v)[0] for _, k in phi.terms for v in k.vertices})
    if not crit:
        return ConstructibleFn.zero(1)
    if fiber(crit[0] - 1) != 0 or fiber(crit[-1] + 1) != 0:
        raise NotCompactlySupported("push-forward does not vanish outside the critical range")
    terms = []
    for c in crit:
        v = fiber(c)
        if v:
            terms.append((v, pt.point([c])))
    for lo, hi in zip(crit, crit[1:]):
        v = fiber((lo + hi) / 2)
        if v:
            terms.append((v, pt.from_vertices([[lo], [hi]])))
            terms.append((-v, pt.point([lo])))
            terms.append((-v, pt.point([hi])))
    return ConstructibleFn(1, tuple(terms))
