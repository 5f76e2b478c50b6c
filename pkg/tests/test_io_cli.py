import csv
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from eulercalc import cli, io
from eulercalc import polytope as pt
from eulercalc import radon as rd
from eulercalc import sampling
from eulercalc.constructible import ConstructibleFn
from eulercalc.errors import ParseError, ValidationError

F = Fraction

SQUARE = {"ambient_dim": 2, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}
TRIANGLE = {"ambient_dim": 2, "vertices": [[0, 0], ["2", 0], [0, "2"]]}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------- io


def test_polytope_roundtrip():
    p = pt.from_vertices([(0, 0), (F(1, 2), 0), (0, F(3, 4))])
    assert io.parse_polytope(json.loads(io.dumps(io.dump_polytope(p)))) == p
    by_h = {"ambient_dim": 1, "halfspaces": [{"normal": [1], "offset": "3/2"}, {"normal": [-1], "offset": 0}]}
    assert io.parse_polytope(by_h) == pt.from_vertices([(0,), (F(3, 2),)])


def test_polytope_consistency_check():
    both = dict(SQUARE, halfspaces=[{"normal": [1, 0], "offset": 2}, {"normal": [-1, 0], "offset": 0},
                                    {"normal": [0, 1], "offset": 1}, {"normal": [0, -1], "offset": 0}])
    with pytest.raises(ValidationError):
        io.parse_polytope(both)


def test_error_paths():
    bad = {"ambient_dim": 2, "terms": [{"weight": 1, "support": {"ambient_dim": 2, "vertices": [[0, "1/0"]]}}]}
    with pytest.raises(ParseError) as info:
        io.parse_constructible(bad)
    assert info.value.path == "$.terms[0].support.vertices[0][1]"
    with pytest.raises(ValidationError) as info:
        io.parse_constructible({"ambient_dim": 2, "terms": [], "extra": 1})
    assert info.value.path == "$"
    with pytest.raises(ParseError):
        io.parse_polytope({"ambient_dim": 2, "vertices": [[0.5, 0]]})


def test_constructible_and_projective_roundtrip(rng):
    phi = ConstructibleFn(2, ((F(2), pt.cube(2)), (F(-1, 3), pt.simplex(2))))
    assert io.parse_constructible(json.loads(io.dumps(io.dump_constructible(phi)))).equals(phi)
    f = sampling.random_proj_fn(rng, 3, with_constant=True)
    g = io.parse_proj_fn(json.loads(io.dumps(io.dump_proj_fn(f))))
    assert g.constant == f.constant and g.terms == f.terms
    psi = rd.radon(f)
    back = io.parse_radon_image(json.loads(io.dumps(io.dump_radon_image(psi))))
    assert back.terms == psi.terms and back.constant == psi.constant


def test_affine_map_to_point():
    f = io.parse_affine_map({"matrix": [], "source_dim": 3})
    assert f.source_dim == 3 and f.target_dim == 0
    with pytest.raises(ValidationError):
        io.parse_affine_map({"matrix": []})


# ---------------------------------------------------------------- cli


def test_invert_check_triangle(tmp_path, capsys):
    fn = write(tmp_path, "triangle.json", TRIANGLE)
    pts = write(tmp_path, "pts.json", [[0, 0], ["1/3", "1/3"], [5, 5], [1, 0, 0], [0, 1, -1], [1, 1]])
    code, out = run_cli(capsys, "invert-check", "--n", "2", "--fn", fn, "--points", pts)
    assert code == 0
    assert set(json.loads(out)["residuals"]) == {"0"}


def test_invert_check_n_mismatch(tmp_path, capsys):
    fn = write(tmp_path, "triangle.json", TRIANGLE)
    pts = write(tmp_path, "pts.json", [[0, 0]])
    code, out = run_cli(capsys, "invert-check", "--n", "3", "--fn", fn, "--points", pts)
    assert code == 2 and json.loads(out)["error"]["path"] == "params.n"


def test_bad_rational_exit_code(tmp_path, capsys):
    fn = write(tmp_path, "bad.json", {"ambient_dim": 2, "vertices": [[0, "1/0"], [1, 1]]})
    code, out = run_cli(capsys, "euler-integral", "--fn", fn)
    assert code == 2
    err = json.loads(out)["error"]
    assert err["type"] == "ParseError" and err["path"] == "fn:$.vertices[0][1]"


def test_missing_and_unknown_inputs(tmp_path, capsys):
    fn = write(tmp_path, "sq.json", SQUARE)
    assert run_cli(capsys, "multiply", "--fn", fn)[0] == 2
    assert run_cli(capsys, "intrinsic-volumes", "--fn", fn, "--map", fn)[0] == 2
    assert run_cli(capsys, "euler-integral", "--fn", str(tmp_path / "nope.json"))[0] == 2
    assert run_cli(capsys, "intrinsic-volumes", "--fn", fn, "--format", "csv")[0] == 2


def test_sinogram_csv(tmp_path, capsys):
    fn = write(tmp_path, "square.json", SQUARE)
    out = tmp_path / "s.csv"
    code, _ = run_cli(capsys, "sinogram", "--fn", fn, "--angles", "180", "--offsets", "256", "--out", str(out))
    assert code == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert len(rows) == 181 and all(len(r) == 256 for r in rows)
    values = [[float(x) for x in r] for r in rows[1:]]
    assert max(max(r) for r in values) == pytest.approx(2 ** 0.5, rel=1e-2)


def test_json_commands(tmp_path, capsys):
    sq = write(tmp_path, "sq.json", SQUARE)
    tri = write(tmp_path, "tri.json", TRIANGLE)
    code, out = run_cli(capsys, "euler-integral", "--fn", sq)
    assert code == 0 and json.loads(out)["value"] == "1"
    code, out = run_cli(capsys, "multiply", "--fn", sq, "--fn2", tri)
    prod = io.parse_constructible(json.loads(out))
    assert prod((F(1, 2), F(1, 2))) == 1 and prod((F(3, 2), 0)) == 0
    m = write(tmp_path, "map.json", {"matrix": [[1, 0]]})
    code, out = run_cli(capsys, "pushforward", "--fn", sq, "--map", m)
    assert code == 0 and json.loads(out)["ambient_dim"] == 1
    m1 = write(tmp_path, "map1.json", {"matrix": [[1], [0]], "translation": [0, "1/2"]})
    code, out = run_cli(capsys, "pullback", "--fn", sq, "--map", m1)
    assert io.parse_constructible(json.loads(out))((F(1, 2),)) == 1
    code, out = run_cli(capsys, "normalize", "--fn", sq)
    assert code == 0 and json.loads(out)["cells"]
    code, out = run_cli(capsys, "intrinsic-volumes", "--fn", sq)
    assert json.loads(out)["values"] == pytest.approx([1, 2, 1])


def test_radon_and_dual_radon(tmp_path, capsys):
    tri = write(tmp_path, "tri.json", TRIANGLE)
    hs = write(tmp_path, "hs.json", [[-5, 1, 0], [-1, 1, 1]])
    code, out = run_cli(capsys, "radon", "--fn", tri, "--hyperplanes", hs)
    res = json.loads(out)
    assert code == 0 and res["values"] == ["0", "1"]
    image = write(tmp_path, "image.json", res["image"])
    pts = write(tmp_path, "pts.json", [[3, 1, 1], [1, 5, 5]])
    code, out = run_cli(capsys, "dual-radon", "--fn", image, "--points", pts, "--check-oracle")
    res = json.loads(out)
    assert code == 0 and res["values"] == ["0", "1"] and res["pass"]


def test_kernel_probe_and_mc_commands(tmp_path, capsys):
    code, out = run_cli(capsys, "kernel-probe", "--n", "2", "--seed", "3", "--samples", "30", "--mean-zero", "2")
    assert code == 0 and json.loads(out)["pass"]
    sq = write(tmp_path, "sq.json", SQUARE)
    code, out = run_cli(capsys, "crofton-check", "--fn", sq, "--samples", "50000", "--seed", "1")
    assert code == 0 and json.loads(out)["seed"] == 1
    code, out = run_cli(capsys, "steiner-check", "--fn", sq, "--samples", "50000", "--epsilons", "0.1,0.2")
    assert code == 0 and len(json.loads(out)["reports"]) == 2
    code, out = run_cli(capsys, "kinematic-check", "--fn", sq, "--fn2", sq, "--samples", "50000")
    assert code == 0 and json.loads(out)["oracle"]["validated"]


def test_verification_failure_exit_code(tmp_path, capsys):
    sq = write(tmp_path, "sq.json", SQUARE)
    far = write(tmp_path, "far.json", {"ambient_dim": 2, "vertices": [[5, 5], [6, 5], [6, 6]]})
    # a window that cuts through the intersecting motions has no reference value
    code, out = run_cli(capsys, "kinematic-check", "--fn", sq, "--fn2", far, "--samples", "1000", "--window", "6")
    assert code == 3 and json.loads(out)["pass"] is False


def test_determinism_subprocess(tmp_path):
    sq = write(tmp_path, "sq.json", SQUARE)
    outs = []
    for i in range(2):
        target = tmp_path / f"o{i}.json"
        subprocess.run([sys.executable, "-m", "eulercalc", "crofton-check", "--fn", sq, "--samples", "20000",
                        "--seed", "11", "--out", str(target)], check=True)
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_seed_range(capsys):
    code, out = run_cli(capsys, "kernel-probe", "--seed", str(2 ** 64))
    assert code == 2


def test_jobspec_rejects_unknown_param():
    job = cli.JobSpec("euler-integral", {"fn": "x.json"}, {"seed": 1})
    with pytest.raises(ValidationError):
        job.validate()
