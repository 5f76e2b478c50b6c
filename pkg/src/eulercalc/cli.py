"""Batch command line: ``eulercalc <command> --fn FILE [options]``.

Exit codes: 0 success, 2 invalid input (a JSON error object is printed),
3 a verification command found a nonzero residual or failed its tolerance.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import constructible as cf
from . import integral_geometry as ig
from . import io
from . import montecarlo as mc
from . import radon as rd
from .errors import EulerCalcError, ParseError, ValidationError, VerificationFailed
from .rational import format_rational

COMMANDS = (
    "euler-integral", "multiply", "pushforward", "pullback", "radon", "dual-radon",
    "invert-check", "kernel-probe", "sinogram", "intrinsic-volumes", "steiner-check",
    "crofton-check", "kinematic-check", "normalize",
)

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 2, 3

# which inputs / params each command accepts
_ALLOWED = {
    "euler-integral": ({"fn"}, set()),
    "multiply": ({"fn", "fn2"}, set()),
    "pushforward": ({"fn", "map"}, set()),
    "pullback": ({"fn", "map"}, set()),
    "radon": ({"fn", "hyperplanes"}, set()),
    "dual-radon": ({"fn", "points"}, {"check_oracle"}),
    "invert-check": ({"fn", "points"}, {"n"}),
    "kernel-probe": (set(), {"n", "seed", "samples", "mean_zero"}),
    "sinogram": ({"fn"}, {"angles", "offsets"}),
    "intrinsic-volumes": ({"fn"}, set()),
    "steiner-check": ({"fn"}, {"epsilons", "samples", "seed", "workers"}),
    "crofton-check": ({"fn"}, {"samples", "seed", "workers"}),
    "kinematic-check": ({"fn", "fn2"}, {"samples", "seed", "window", "workers"}),
    "normalize": ({"fn"}, set()),
}
_REQUIRED = {
    "multiply": {"fn", "fn2"}, "pushforward": {"fn", "map"}, "pullback": {"fn", "map"},
    "dual-radon": {"fn", "points"}, "invert-check": {"fn", "points"}, "kinematic-check": {"fn", "fn2"},
}


@dataclass
class JobSpec:
    command: str
    inputs: dict = field(default_factory=dict)  # name -> file path
    params: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "json"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}", "command")
        ins, ps = _ALLOWED[self.command]
        for k in self.inputs:
            if k not in ins:
                raise ValidationError(f"{self.command} does not take --{k}", f"inputs.{k}")
        for k in self.params:
            if k not in ps:
                raise ValidationError(f"{self.command} does not take --{k.replace('_', '-')}", f"params.{k}")
        needed = _REQUIRED.get(self.command, {"fn"} if "fn" in ins else set())
        for k in needed:
            if k not in self.inputs:
                raise ValidationError(f"{self.command} requires --{k}", f"inputs.{k}")
        if self.format not in ("json", "csv"):
            raise ValidationError("format must be json or csv", "format")
        if self.format == "csv" and self.command != "sinogram":
            raise ValidationError("csv output is only available for sinogram", "format")


def _load(job, key, parser):
    path = job.inputs[key]
    data = io.load_json(path)
    try:
        return parser(data, "$")
    except (ParseError, ValidationError) as exc:
        exc.path = f"{key}:{exc.path}"
        raise


def _polytope_or_fn(data, path):
    """Polytope inputs may also be given as a single-term constructible function."""
    if isinstance(data, dict) and "terms" in data:
        phi = io.parse_affine_input(data, path)
        if len(phi.terms) != 1 or phi.terms[0][0] != 1:
            raise ValidationError("expected a polytope (or a single weight-1 indicator)", path)
        return phi.terms[0][1]
    return io.parse_polytope(data, path)


def _any_fn(data, path):
    if isinstance(data, dict) and "n" in data:
        return io.parse_proj_fn(data, path)
    return io.parse_affine_input(data, path)


def _sinogram_grid(phi, n_angles: int, n_offsets: int):
    radius = max(
        math.sqrt(sum(float(c) ** 2 for c in v)) for _, k in phi.terms for v in k.vertices
    ) if phi.terms else 1.0
    angles = [math.pi * i / n_angles for i in range(n_angles)]
    if n_offsets == 1:
        offsets = [0.0]
    else:
        offsets = [-radius + 2 * radius * j / (n_offsets - 1) for j in range(n_offsets)]
    return angles, offsets


def execute(job: JobSpec):
    """Run a validated job; returns ``(payload, verification_ok)``."""
    cmd, p = job.command, job.params
    if cmd == "euler-integral":
        phi = _load(job, "fn", _any_fn)
        if isinstance(phi, rd.ProjConstructibleFn):
            return {"value": format_rational(rd.euler_integral(phi))}, True
        return {"value": format_rational(cf.euler_integral(phi)),
                "cell_value": format_rational(cf.euler_integral_cells(phi))}, True
    if cmd == "multiply":
        phi, psi = _load(job, "fn", io.parse_affine_input), _load(job, "fn2", io.parse_affine_input)
        return io.dump_constructible(cf.multiply(phi, psi)), True
    if cmd in ("pushforward", "pullback"):
        phi, f = _load(job, "fn", io.parse_affine_input), _load(job, "map", io.parse_affine_map)
        op = cf.pushforward if cmd == "pushforward" else cf.pullback
        return io.dump_constructible(op(phi, f)), True
    if cmd == "normalize":
        return cf.normalize(_load(job, "fn", io.parse_affine_input)).to_json(), True
    if cmd == "radon":
        phi = _load(job, "fn", io.parse_proj_input)
        psi = rd.radon(phi)
        out = {"image": io.dump_radon_image(psi)}
        if "hyperplanes" in job.inputs:
            hs = _load(job, "hyperplanes", lambda d, path: io.parse_proj_points(d, phi.n, path))
            out["hyperplanes"] = [list(h) for h in hs]
            out["values"] = [format_rational(rd.eval_radon(psi, h)) for h in hs]
        return out, True
    if cmd == "dual-radon":
        data = io.load_json(job.inputs["fn"])
        if isinstance(data, dict) and ("ambient_dim" in data or not any(
                "dual_body" in t for t in data.get("terms", []) if isinstance(t, dict))):
            psi = rd.radon(_load(job, "fn", io.parse_proj_input))
        else:
            psi = _load(job, "fn", io.parse_radon_image)
        xs = _load(job, "points", lambda d, path: io.parse_proj_points(d, psi.n, path))
        values = [rd.dual_radon_eval(psi, x) for x in xs]
        out = {"points": [list(x) for x in xs], "values": [format_rational(v) for v in values]}
        ok = True
        if p.get("check_oracle"):
            oracle = [rd.dual_radon_oracle(psi, x) for x in xs]
            out["oracle"] = [format_rational(v) for v in oracle]
            ok = oracle == values
            out["pass"] = ok
        return out, ok
    if cmd == "invert-check":
        phi = _load(job, "fn", io.parse_proj_input)
        if "n" in p and p["n"] != phi.n:
            raise ValidationError(f"--n {p['n']} does not match the function on RP^{phi.n}", "params.n")
        xs = _load(job, "points", lambda d, path: io.parse_proj_points(d, phi.n, path))
        report = rd.verify_inversion(phi, xs)
        return report.to_json(), report.passed
    if cmd == "kernel-probe":
        n = p.get("n", 2)
        report = rd.kernel_probe(n, seed=p.get("seed", 0), count=p.get("samples") or 100,
                                 mean_zero_cases=p.get("mean_zero", 0))
        out = report.to_json()
        out["seed"] = p.get("seed", 0)
        return out, report.passed
    if cmd == "sinogram":
        phi = _load(job, "fn", io.parse_affine_input)
        angles, offsets = _sinogram_grid(phi, p.get("angles", 180), p.get("offsets", 256))
        sino = rd.classical_sinogram(phi, angles, offsets)
        return {"angles": angles, "offsets": offsets, "values": sino.tolist()}, True
    if cmd == "intrinsic-volumes":
        k = _load(job, "fn", _polytope_or_fn)
        return ig.intrinsic_volumes(k).to_json(), True
    seed, samples, workers = p.get("seed", 0), p.get("samples") or 10**6, p.get("workers", 1)
    if cmd == "steiner-check":
        k = _load(job, "fn", _polytope_or_fn)
        reports = mc.steiner_check(k, p.get("epsilons", [0.05, 0.1, 0.2]), samples, seed, workers)
        ok = all(r.passed for r in reports)
        return {"reports": [r.to_json() for r in reports], "pass": ok, "seed": seed}, ok
    if cmd == "crofton-check":
        k = _load(job, "fn", _polytope_or_fn)
        r = mc.cauchy_crofton_check(k, samples, seed, workers)
        return r.to_json(), r.passed
    if cmd == "kinematic-check":
        k, l = _load(job, "fn", _polytope_or_fn), _load(job, "fn2", _polytope_or_fn)
        r = mc.kinematic_check_R2(k, l, samples, seed, p.get("window"), workers)
        ok = r.passed and r.details["oracle"]["validated"]
        return r.to_json(), ok
    raise ValidationError(f"unknown command {cmd!r}", "command")


def _render(job: JobSpec, payload) -> str:
    if job.format == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([repr(o) for o in payload["offsets"]])
        for row in payload["values"]:
            w.writerow([repr(v) for v in row])
        return buf.getvalue()
    return io.dumps(payload)


def _emit(job: JobSpec, text: str) -> None:
    if job.out:
        with open(job.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(job: JobSpec) -> int:
    """Validate, execute and write results; returns the process exit code."""
    try:
        job.validate()
        payload, ok = execute(job)
    except VerificationFailed as exc:
        sys.stdout.write(io.dumps({"error": {"type": "VerificationFailed", "message": str(exc)}}))
        return EXIT_VERIFY
    except EulerCalcError as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "path", ""):
            err["path"] = exc.path
        sys.stdout.write(io.dumps({"error": err}))
        print(f"error: {err['message']}", file=sys.stderr)
        return EXIT_INVALID
    _emit(job, _render(job, payload))
    return EXIT_OK if ok else EXIT_VERIFY


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eulercalc", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--fn", help="main input JSON file")
    parser.add_argument("--fn2", help="second input (multiply, kinematic-check)")
    parser.add_argument("--map", dest="map", help="affine map JSON (pushforward, pullback)")
    parser.add_argument("--points", help="JSON list of sample points")
    parser.add_argument("--hyperplanes", help="JSON list of hyperplanes to evaluate a Radon image at")
    parser.add_argument("--n", type=int, help="projective dimension")
    parser.add_argument("--seed", type=int, help="random seed (u64)")
    parser.add_argument("--samples", type=int, help="Monte Carlo samples / probe count")
    parser.add_argument("--epsilons", type=_float_list, help="comma-separated tube radii")
    parser.add_argument("--angles", type=int, help="number of sinogram angles in [0, pi)")
    parser.add_argument("--offsets", type=int, help="number of sinogram offsets")
    parser.add_argument("--window", type=float, help="kinematic translation half-width")
    parser.add_argument("--mean-zero", dest="mean_zero", type=int, help="kernel-probe: mean-zero test cases")
    parser.add_argument("--check-oracle", dest="check_oracle", action="store_true", default=None,
                        help="dual-radon: compare with the brute-force pencil oracle")
    parser.add_argument("--workers", type=int, help="Monte Carlo worker threads")
    parser.add_argument("--out", help="output file (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    return parser


_INPUT_FLAGS = ("fn", "fn2", "map", "points", "hyperplanes")
_PARAM_FLAGS = ("n", "seed", "samples", "epsilons", "angles", "offsets", "window", "mean_zero",
                "check_oracle", "workers")


def job_from_args(args: argparse.Namespace) -> JobSpec:
    inputs = {k: getattr(args, k) for k in _INPUT_FLAGS if getattr(args, k) is not None}
    params = {k: getattr(args, k) for k in _PARAM_FLAGS if getattr(args, k) is not None}
    fmt = args.format or ("csv" if args.command == "sinogram" else "json")
    return JobSpec(args.command, inputs, params, args.out, fmt)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None and not 0 <= args.seed < 2**64:
        sys.stdout.write(io.dumps({"error": {"type": "ValidationError", "message": "seed must be a u64",
                                             "path": "params.seed"}}))
        return EXIT_INVALID
    return run(job_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
