"""Exact Euler calculus on polytopal constructible functions.

Modules
-------
polytope, arrangement
    Exact rational polytopes (double description) and hyperplane arrangements.
constructible
    Constructible functions on R^n: products, pull-back, push-forward, Euler integral.
projective, radon
    Convex bodies in RP^n, duality, and the Euler-characteristic Radon transform.
integral_geometry, montecarlo
    Intrinsic volumes and Monte Carlo Steiner / Crofton / kinematic checks.
io, cli
    JSON formats and the batch command line.
"""
from .constructible import ConstructibleFn
from .errors import EulerCalcError
from .polytope import AffineMap, Polytope
from .projective import ProjBody
from .radon import ProjConstructibleFn, RadonImage

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "ConstructibleFn",
    "EulerCalcError",
    "Polytope",
    "ProjBody",
    "ProjConstructibleFn",
    "RadonImage",
]
