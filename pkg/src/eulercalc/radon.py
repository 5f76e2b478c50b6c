"""Euler-characteristic Radon transform on RP^n and its dual.

Functions on RP^n are rational combinations of indicators of convex bodies
plus a constant. The transform of ``1_K`` is the indicator of the hyperplanes
meeting ``K``, i.e. the complement of ``int(K^∨)``, so a transformed function
is kept symbolically as a list of dual bodies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import arrangement as arr
from . import projective as pj
from . import rational as rq
from .constructible import ConstructibleFn, _clip_to_line, line_restriction_integral
from .errors import DimensionUnsupported, NotCompactlySupported, AmbientMismatch
from .projective import ProjBody, chi_projective_space


@dataclass(frozen=True)
class ProjConstructibleFn:
    """``constant·1_{RP^n} + Σ weight·1_K`` on RP^n."""

    n: int
    terms: tuple = ()  # of (Fraction, ProjBody)
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        clean = []
        for w, k in self.terms:
            if k.n != self.n:
                raise AmbientMismatch(f"body in RP^{k.n} inside a function on RP^{self.n}")
            w = Fraction(w)
            if w != 0:
                clean.append((w, k))
        object.__setattr__(self, "terms", tuple(clean))
        object.__setattr__(self, "constant", Fraction(self.constant))

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def __add__(self, other: "ProjConstructibleFn") -> "ProjConstructibleFn":
        return ProjConstructibleFn(self.n, self.terms + other.terms, self.constant + other.constant)

    def __mul__(self, c) -> "ProjConstructibleFn":
        c = Fraction(c)
        return ProjConstructibleFn(self.n, tuple((c * w, k) for w, k in self.terms), c * self.constant)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (-1) * other


def indicator(k: ProjBody, weight=1) -> ProjConstructibleFn:
    return ProjConstructibleFn(k.n, ((Fraction(weight), k),))


def constant(n: int, value=1) -> ProjConstructibleFn:
    return ProjConstructibleFn(n, (), Fraction(value))


def evaluate(phi: ProjConstructibleFn, x: Sequence) -> Fraction:
    total = phi.constant
    for w, k in phi.terms:
        if k.contains(x):
            total += w
    return total


def euler_integral(phi: ProjConstructibleFn) -> Fraction:
    """Each convex body has χ = 1; the constant term contributes χ(RP^n)."""
    return phi.constant * chi_projective_space(phi.n) + sum((w for w, _ in phi.terms), Fraction(0))


@dataclass(frozen=True)
class RadonImage:
    """``constant + Σ weight·1_{RP^{n∨} \\ int(B)}`` with ``B = K^∨`` stored."""

    n: int
    terms: tuple = ()  # of (Fraction, ProjBody in the dual space)
    constant: Fraction = Fraction(0)


def radon(phi: ProjConstructibleFn) -> RadonImage:
    """Push-pull through the point/hyperplane incidence: ``1_K -> 1_{complement of int K^∨}``."""
    terms = tuple((w, pj.dual_body(k)) for w, k in phi.terms)
    return RadonImage(phi.n, terms, phi.constant * chi_projective_space(phi.n - 1))


def _hyperplane_hits(dual: ProjBody, h) -> bool:
    # H meets K  <=>  H is not an interior point of K^∨
    return pj.classify_point(dual, h) != pj.INTERIOR


def eval_radon(psi: RadonImage, h: Sequence) -> Fraction:
    total = psi.constant
    for w, b in psi.terms:
        if _hyperplane_hits(b, h):
            total += w
    return total


def _point_in_predual(dual: ProjBody, x) -> bool:
    """Whether ``x`` lies in ``K`` when only ``B = K^∨`` is known: ``K = B^∨``."""
    vals = [sum(Fraction(a) * c for a, c in zip(g, x)) for g in dual.cone_generators]
    return all(v >= 0 for v in vals) or all(v <= 0 for v in vals)


def pencil_coefficient(n: int, inside: bool) -> Fraction:
    """Euler integral of ``1_{complement of int K^∨}`` over the hyperplanes through x.

    Inside (or on) K the pencil never enters ``int K^∨``; outside, it cuts an
    open (n-1)-cell out of a copy of RP^{n-1}.
    """
    base = chi_projective_space(n - 1)
    return base if inside else base - (-1) ** (n - 1)


def dual_radon_eval(psi: RadonImage, x: Sequence) -> Fraction:
    """``(R^t ψ)(x)``: Euler integral of ψ over the pencil of hyperplanes through x."""
    total = psi.constant * chi_projective_space(psi.n - 1)
    for w, b in psi.terms:
        total += w * pencil_coefficient(psi.n, _point_in_predual(b, x))
    return total


# --------------------------------------------------------------------------
# brute-force oracle


def projective_euler_integral(f: Callable, forms: Sequence, k: int) -> Fraction:
    """χ_c-integral over RP^k of ``f`` (a function of homogeneous λ ∈ Q^{k+1}).

    ``f`` must be constant on the cells cut out by the linear ``forms``. RP^k is
    split as the affine chart ``λ_0 = 1`` plus a copy of RP^{k-1} at infinity,
    and each chart is decomposed by an exact affine arrangement.
    """
    if k == 0:
        return f((Fraction(1),))
    hps = set()
    for c in forms:
        normal = tuple(Fraction(v) for v in c[1:])
        if any(normal):
            hps.add(arr.Hyperplane.make(normal, -Fraction(c[0])))
    hps = sorted(hps, key=lambda h: (h.normal, h.offset))
    total = Fraction(0)
    for cell in arr.cells(hps, k):
        v = f((Fraction(1),) + tuple(cell.witness))
        total += v if cell.dim % 2 == 0 else -v
    at_infinity = [tuple(c[1:]) for c in forms]
    return total + projective_euler_integral(lambda lam: f((Fraction(0),) + tuple(lam)), at_infinity, k - 1)


def dual_radon_oracle(psi: RadonImage, x: Sequence) -> Fraction:
    """Brute-force ``(R^t ψ)(x)`` by cell decomposition of the pencil (n = 2, 3).

    The pencil of hyperplanes through x is parametrized by a basis of
    ``x^⊥``; each term is integrated separately (the Euler integral is linear)
    by evaluating incidence at a witness hyperplane of every cell.
    """
    n = psi.n
    if n not in (2, 3):
        raise DimensionUnsupported("the pencil oracle handles n = 2 and n = 3")
    basis = pj.pencil_basis(x)
    k = n - 1

    def hyperplane(lam):
        return tuple(sum(l * b[i] for l, b in zip(lam, basis)) for i in range(n + 1))

    total = psi.constant * projective_euler_integral(lambda lam: Fraction(1), [], k)
    for w, b in psi.terms:
        # incidence with K flips only where the hyperplane passes through a generator of K
        gens_k = b.dual_generators
        forms = [tuple(sum(Fraction(bi) * g for bi, g in zip(bv, gk)) for bv in basis) for gk in gens_k]

        def value(lam, b=b):
            return Fraction(1) if _hyperplane_hits(b, hyperplane(lam)) else Fraction(0)

        total += w * projective_euler_integral(value, forms, k)
    return total


# --------------------------------------------------------------------------
# inversion and kernel


@dataclass
class InversionReport:
    n: int
    euler_integral: Fraction
    points: list = field(default_factory=list)
    lhs: list = field(default_factory=list)
    rhs: list = field(default_factory=list)

    @property
    def residuals(self) -> list:
        return [a - b for a, b in zip(self.lhs, self.rhs)]

    @property
    def passed(self) -> bool:
        return all(r == 0 for r in self.residuals)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "euler_integral": rq.format_rational(self.euler_integral),
            "points": [list(p) for p in self.points],
            "lhs": [rq.format_rational(v) for v in self.lhs],
            "rhs": [rq.format_rational(v) for v in self.rhs],
            "residuals": [rq.format_rational(v) for v in self.residuals],
            "pass": self.passed,
        }


def verify_inversion(phi: ProjConstructibleFn, samples: Sequence) -> InversionReport:
    """Check ``(-1)^{n-1} R^t R φ = φ + ½((-1)^{n-1} - 1)(∫φ)`` exactly at each sample."""
    n = phi.n
    sign = (-1) ** (n - 1)
    psi = radon(phi)
    integral = euler_integral(phi)
    correction = Fraction(sign - 1, 2) * integral
    report = InversionReport(n, integral)
    for x in samples:
        x = tuple(x)
        report.points.append(x)
        report.lhs.append(sign * dual_radon_eval(psi, x))
        report.rhs.append(evaluate(phi, x) + correction)
    return report


@dataclass
class KernelReport:
    n: int
    hyperplanes: list
    values: list
    expected: Fraction
    mean_zero_probes: list = field(default_factory=list)  # (description, found_nonzero)

    @property
    def passed(self) -> bool:
        ok = all(v == self.expected for v in self.values)
        return ok and all(found for _, found in self.mean_zero_probes)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "expected": rq.format_rational(self.expected),
            "hyperplanes": [list(h) for h in self.hyperplanes],
            "values": [rq.format_rational(v) for v in self.values],
            "mean_zero_probes": [{"case": d, "nonzero_found": f} for d, f in self.mean_zero_probes],
            "pass": self.passed,
        }


def kernel_probe(n: int, seed: int = 0, count: int = 100, mean_zero_cases: int = 0) -> KernelReport:
    """Transform of the constant function at random hyperplanes.

    For even n it must vanish everywhere; for odd n it equals χ(RP^{n-1}) = 1.
    With ``mean_zero_cases`` > 0 (even n), also checks that random
    ``1_K - 1_L`` (integral zero, not constant) have a nonzero transform at
    some probed hyperplane.
    """
    from . import sampling

    if n not in (2, 3):
        raise DimensionUnsupported("kernel probe handles n = 2 and n = 3")
    rng = np.random.default_rng(seed)
    psi = radon(constant(n))
    hyperplanes = [sampling.random_hyperplane(rng, n) for _ in range(count)]
    values = [eval_radon(psi, h) for h in hyperplanes]
    report = KernelReport(n, hyperplanes, values, chi_projective_space(n - 1))
    for i in range(mean_zero_cases):
        k, l = sampling.distinct_body_pair(rng, n)
        phi = indicator(k) - indicator(l)
        image = radon(phi)
        probes = hyperplanes + sampling.probe_hyperplanes(rng, [k, l])
        found = any(eval_radon(image, h) != 0 for h in probes)
        report.mean_zero_probes.append((f"1_K - 1_L #{i}", found))
    return report


# --------------------------------------------------------------------------
# affine line transforms on R^2


def _line_frame(normal, offset):
    normal = rq.vec(normal)
    if len(normal) != 2:
        raise AmbientMismatch("line transforms live on R^2")
    n2 = rq.dot(normal, normal)
    if n2 == 0:
        raise ValueError("line normal must be nonzero")
    base = rq.scale(Fraction(offset) / n2, normal)
    direction = (-normal[1], normal[0])
    return base, direction


def radon_affine_line(phi: ConstructibleFn, normal: Sequence, offset) -> Fraction:
    """Euler integral of φ restricted to the line ``normal·x = offset``."""
    if phi.ambient_dim != 2:
        raise AmbientMismatch("line transforms live on R^2")
    if not phi.compactly_supported:
        raise NotCompactlySupported("line transform needs a compactly supported function")
    base, direction = _line_frame(normal, offset)
    return line_restriction_integral(phi.terms, base, direction)


def chord_length(k, normal, offset) -> float:
    """Length of ``k ∩ {normal·x = offset}``: exact clipping, one square root."""
    base, direction = _line_frame(normal, offset)
    iv = _clip_to_line(k, base, direction)
    if iv is None:
        return 0.0
    lo, hi = iv
    if lo is None or hi is None:
        raise NotCompactlySupported("unbounded chord")
    return float(hi - lo) * math.sqrt(float(rq.dot(direction, direction)))


def classical_sinogram(phi: ConstructibleFn, angles: Sequence[float], offsets: Sequence[float]) -> np.ndarray:
    """Lebesgue-kernel line transform: entry ``(i, j)`` is ``Σ a·length(K ∩ ℓ(θ_i, p_j))``.

    ``ℓ(θ, p) = {x : x·(cos θ, sin θ) = p}``; the float angle and offset are
    converted exactly to rationals before clipping.
    """
    if phi.ambient_dim != 2:
        raise AmbientMismatch("sinograms live on R^2")
    if not phi.bounded_terms:
        raise NotCompactlySupported("sinogram needs bounded supports")
    out = np.zeros((len(angles), len(offsets)))
    for i, theta in enumerate(angles):
        normal = (Fraction(math.cos(theta)), Fraction(math.sin(theta)))
        for j, p in enumerate(offsets):
            total = 0.0
            for w, k in phi.terms:
                total += float(w) * chord_length(k, normal, Fraction(p))
            out[i, j] = total
    return out
