"""JSON encoding of polytopes, constructible functions and projective data.

Rationals travel as ``"p/q"`` strings (plain integers are accepted on input).
Parse errors carry a JSONPath-like pointer to the offending field.
"""
from __future__ import annotations

import json
from fractions import Fraction

from . import polytope as pt
from . import projective as pj
from . import radon as rd
from .constructible import ConstructibleFn
from .errors import EulerCalcError, ParseError, ValidationError
from .polytope import AffineMap, Polytope
from .rational import format_rational, parse_rational


def _obj(data, path, required=(), optional=()):
    if not isinstance(data, dict):
        raise ParseError("expected an object", path)
    unknown = set(data) - set(required) - set(optional)
    if unknown:
        raise ValidationError(f"unknown field(s): {sorted(unknown)}", path)
    for key in required:
        if key not in data:
            raise ParseError(f"missing field {key!r}", path)
    return data


def _list(data, path):
    if not isinstance(data, list):
        raise ParseError("expected a list", path)
    return data


def _int(data, path):
    if isinstance(data, bool) or not isinstance(data, int):
        raise ParseError("expected an integer", path)
    return data


def parse_vector(data, path="$") -> tuple:
    return tuple(parse_rational(x, f"{path}[{i}]") for i, x in enumerate(_list(data, path)))


def parse_vectors(data, path="$") -> list:
    return [parse_vector(v, f"{path}[{i}]") for i, v in enumerate(_list(data, path))]


def _fmt_vec(v) -> list:
    return [format_rational(Fraction(x)) for x in v]


# --------------------------------------------------------------------------
# polytopes and maps


def parse_polytope(data, path="$") -> Polytope:
    d = _obj(data, path, ("ambient_dim",), ("vertices", "rays", "halfspaces"))
    n = _int(d["ambient_dim"], f"{path}.ambient_dim")
    if "vertices" not in d and "halfspaces" not in d:
        raise ParseError("polytope needs vertices or halfspaces", path)
    from_v = from_h = None
    try:
        if "vertices" in d:
            verts = parse_vectors(d["vertices"], f"{path}.vertices")
            rays = parse_vectors(d.get("rays", []), f"{path}.rays")
            for i, v in enumerate(verts):
                if len(v) != n:
                    raise ValidationError(f"vertex has length {len(v)}, expected {n}", f"{path}.vertices[{i}]")
            from_v = pt.from_vertices(verts, rays, n)
        if "halfspaces" in d:
            hs = []
            for i, h in enumerate(_list(d["halfspaces"], f"{path}.halfspaces")):
                hp = f"{path}.halfspaces[{i}]"
                _obj(h, hp, ("normal", "offset"))
                normal = parse_vector(h["normal"], f"{hp}.normal")
                if len(normal) != n:
                    raise ValidationError(f"normal has length {len(normal)}, expected {n}", f"{hp}.normal")
                hs.append((normal, parse_rational(h["offset"], f"{hp}.offset")))
            from_h = pt.from_halfspaces(hs, n)
    except (ParseError, ValidationError):
        raise
    except EulerCalcError as exc:
        raise ValidationError(str(exc), path) from exc
    if from_v is not None and from_h is not None and from_v != from_h:
        raise ValidationError("vertex and halfspace descriptions disagree", path)
    return from_v if from_v is not None else from_h


def dump_polytope(p: Polytope) -> dict:
    out = {
        "ambient_dim": p.ambient_dim,
        "vertices": [_fmt_vec(v) for v in p.vertices],
        "halfspaces": [{"normal": _fmt_vec(h.normal), "offset": format_rational(h.offset)} for h in p.halfspaces],
    }
    if p.rays:
        out["rays"] = [_fmt_vec(r) for r in p.rays]
    return out


def parse_affine_map(data, path="$") -> AffineMap:
    d = _obj(data, path, ("matrix",), ("translation", "source_dim"))
    m = parse_vectors(d["matrix"], f"{path}.matrix")
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise ValidationError("ragged matrix", f"{path}.matrix")
    t = parse_vector(d["translation"], f"{path}.translation") if "translation" in d else None
    if t is not None and len(t) != len(m):
        raise ValidationError("translation length must match matrix rows", f"{path}.translation")
    src = _int(d["source_dim"], f"{path}.source_dim") if "source_dim" in d else None
    if src is None and not m:
        raise ValidationError("a map with no rows needs source_dim", path)
    if src is not None and widths and widths != {src}:
        raise ValidationError("matrix width disagrees with source_dim", f"{path}.source_dim")
    return AffineMap.make(m, t, src)


def dump_affine_map(f: AffineMap) -> dict:
    return {"matrix": [_fmt_vec(r) for r in f.matrix], "translation": _fmt_vec(f.translation),
            "source_dim": f.source_dim}


# --------------------------------------------------------------------------
# constructible functions


def parse_constructible(data, path="$") -> ConstructibleFn:
    d = _obj(data, path, ("ambient_dim", "terms"))
    n = _int(d["ambient_dim"], f"{path}.ambient_dim")
    terms = []
    for i, t in enumerate(_list(d["terms"], f"{path}.terms")):
        tp = f"{path}.terms[{i}]"
        _obj(t, tp, ("weight", "support"))
        w = parse_rational(t["weight"], f"{tp}.weight")
        k = parse_polytope(t["support"], f"{tp}.support")
        if k.ambient_dim != n:
            raise ValidationError(f"support lives in R^{k.ambient_dim}, expected R^{n}", f"{tp}.support")
        terms.append((w, k))
    return ConstructibleFn(n, tuple(terms))


def parse_affine_input(data, path="$") -> ConstructibleFn:
    """A constructible function, or a bare polytope read as its indicator."""
    if isinstance(data, dict) and "terms" not in data and "ambient_dim" in data:
        return ConstructibleFn.indicator(parse_polytope(data, path))
    return parse_constructible(data, path)


def dump_constructible(phi: ConstructibleFn) -> dict:
    return {
        "ambient_dim": phi.ambient_dim,
        "terms": [{"weight": format_rational(w), "support": dump_polytope(k)} for w, k in phi.terms],
    }


# --------------------------------------------------------------------------
# projective


def parse_proj_body(data, path="$") -> pj.ProjBody:
    d = _obj(data, path, ("n", "cone_generators"), ("witness",))
    n = _int(d["n"], f"{path}.n")
    gens = parse_vectors(d["cone_generators"], f"{path}.cone_generators")
    for i, g in enumerate(gens):
        if len(g) != n + 1:
            raise ValidationError(f"generator has length {len(g)}, expected {n + 1}", f"{path}.cone_generators[{i}]")
    w = parse_vector(d["witness"], f"{path}.witness") if "witness" in d else None
    try:
        return pj.make_body(gens, w, n)
    except ValidationError as exc:
        raise ValidationError(str(exc), path) from exc
    except EulerCalcError as exc:
        raise ValidationError(str(exc), path) from exc


def dump_proj_body(k: pj.ProjBody) -> dict:
    return {"n": k.n, "cone_generators": [list(g) for g in k.cone_generators], "witness": list(k.witness)}


def parse_proj_fn(data, path="$") -> rd.ProjConstructibleFn:
    d = _obj(data, path, ("n", "terms"), ("constant",))
    n = _int(d["n"], f"{path}.n")
    terms = []
    for i, t in enumerate(_list(d["terms"], f"{path}.terms")):
        tp = f"{path}.terms[{i}]"
        _obj(t, tp, ("weight", "body"))
        w = parse_rational(t["weight"], f"{tp}.weight")
        k = parse_proj_body(t["body"], f"{tp}.body")
        if k.n != n:
            raise ValidationError(f"body lives in RP^{k.n}, expected RP^{n}", f"{tp}.body")
        terms.append((w, k))
    c = parse_rational(d.get("constant", 0), f"{path}.constant")
    return rd.ProjConstructibleFn(n, tuple(terms), c)


def dump_proj_fn(phi: rd.ProjConstructibleFn) -> dict:
    return {
        "n": phi.n,
        "constant": format_rational(phi.constant),
        "terms": [{"weight": format_rational(w), "body": dump_proj_body(k)} for w, k in phi.terms],
    }


def parse_radon_image(data, path="$") -> rd.RadonImage:
    d = _obj(data, path, ("n", "terms"), ("constant",))
    n = _int(d["n"], f"{path}.n")
    terms = []
    for i, t in enumerate(_list(d["terms"], f"{path}.terms")):
        tp = f"{path}.terms[{i}]"
        _obj(t, tp, ("weight", "dual_body"))
        terms.append((parse_rational(t["weight"], f"{tp}.weight"), parse_proj_body(t["dual_body"], f"{tp}.dual_body")))
    return rd.RadonImage(n, tuple(terms), parse_rational(d.get("constant", 0), f"{path}.constant"))


def dump_radon_image(psi: rd.RadonImage) -> dict:
    return {
        "n": psi.n,
        "constant": format_rational(psi.constant),
        "terms": [{"weight": format_rational(w), "dual_body": dump_proj_body(b)} for w, b in psi.terms],
    }


def parse_proj_points(data, n: int, path="$") -> list:
    out = []
    for i, v in enumerate(parse_vectors(data, path)):
        if len(v) == n:
            v = (1,) + v  # affine chart point
        if len(v) != n + 1:
            raise ValidationError(f"point needs {n} affine or {n + 1} homogeneous coordinates", f"{path}[{i}]")
        if not any(v):
            raise ValidationError("homogeneous coordinates must not all vanish", f"{path}[{i}]")
        out.append(pj.proj(v))
    return out


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})", "$") from exc
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", "$") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def parse_proj_input(data, path="$") -> rd.ProjConstructibleFn:
    """A function on RP^n, or an affine function/polytope lifted through the chart x -> [1 : x]."""
    if isinstance(data, dict) and "ambient_dim" in data:
        phi = parse_affine_input(data, path)
        terms = []
        for i, (w, k) in enumerate(phi.terms):
            if not k.bounded:
                raise ValidationError("chart inputs need bounded supports", f"{path}.terms[{i}].support")
            terms.append((w, pj.from_chart_polytope(k)))
        return rd.ProjConstructibleFn(phi.ambient_dim, tuple(terms))
    return parse_proj_fn(data, path)
