import json
import subprocess
import sys

import pytest

from algspline import __version__
from algspline.cli import main
from algspline.fixtures import fixture_path, load_fixture
from algspline.linalg import set_rank_limits


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_dim_th(capsys):
    out = run_json(capsys, "dim", "--complex", "th.json", "-r", "1", "-d", "12")
    assert out["dim"] == 226
    meta = out["meta"]
    assert meta["version"] == __version__ and meta["seed"] == 0
    assert len(meta["input_sha256"]) == 64
    assert meta["config"]["r"] == 1 and meta["config"]["degree"] == 12


def test_dim_from_path_and_alphas_file(capsys, tmp_path):
    c = load_fixture("fexm")
    alphas = tmp_path / "a.json"
    alphas.write_text(json.dumps({"alpha": [{"face": list(c.face_vertices(1, e)), "r": 1} for e in c.interior(1)]}))
    out = run_json(capsys, "dim", "--complex", str(fixture_path("fexm")), "--alphas", str(alphas), "-d", "2")
    assert out["dim"] == 7
    assert "alphas_sha256" in out["meta"]


def test_output_is_deterministic(capsys):
    a = run(capsys, "series", "--complex", "generic", "-r", "1", "--max-degree", "6", "--fit")
    b = run(capsys, "series", "--complex", "generic", "-r", "1", "--max-degree", "6", "--fit")
    assert a == b


def test_series_fit(capsys):
    out = run_json(capsys, "series", "--complex", "th_perturbed", "-r", "1", "--max-degree", "14", "--fit")
    assert out["hilbert_polynomial"]["polynomial"] == "2d^2-6d+7"
    assert [row["degree"] for row in out["dims"]] == list(range(15))


def test_planar_main_report(capsys):
    out = run_json(capsys, "formula", "planar-main", "--complex", "th", "-r", "0")
    assert out["polynomial"] == "2d^2+2"
    assert out["cycle_total"] == "4" and out["cycles"]
    assert all(isinstance(x, str) for x in out["coefficients"])


def test_table_format(capsys):
    code, out, _ = run(capsys, "formula", "planar-main", "--complex", "th", "-r", "2", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# algspline")
    assert "2d^2-12d+32" in out


def test_homology_and_freeness(capsys):
    out = run_json(capsys, "homology", "--complex", "morgan_scott", "-r", "1", "--max-degree", "3")
    assert out["homology"]["H1"] == [0, 0, 1, 0]
    out = run_json(capsys, "freeness", "--complex", "morgan_scott", "-r", "1", "--bound", "3")
    assert out["verdict"] == "not-free" and out["witness"] == [1, 2, 1]
    out = run_json(capsys, "homology", "--complex", "fexm", "-r", "1", "--max-degree", "3",
                   "--variant", "ri", "--index", "2")
    assert out["homology"] == {"H2": [1, 3, 7, 15]}


def test_local_series(capsys):
    out = run_json(capsys, "local-series", "--complex", "octahedron", "-r", "0", "--max-degree", "10")
    assert out["series"]["numerator"] == [1, 3, 3, 1]
    code, _, err = run(capsys, "local-series", "--complex", "octahedron", "-r", "1", "--max-degree", "4")
    assert code == 4 and "max-degree" in err


def test_xi(capsys):
    out = run_json(capsys, "xi", "--complex", "th", "--min-lines", "3", "-r", "1")
    assert len(out["loci"]) == 4
    assert all(loc["cycle_ideals"][0]["c"] == "3" for loc in out["loci"])


def test_formula_closed_forms(capsys):
    out = run_json(capsys, "formula", "schumaker", "--complex", "fexm", "-r", "1", "-d", "2")
    assert out["values"] == [{"degree": 2, "value": 7}]
    out = run_json(capsys, "formula", "star", "--complex", "star_n3", "-r", "1", "--max-degree", "3")
    assert len(out["values"]) == 4
    out = run_json(capsys, "formula", "plf", "--alpha", "2,2,2,2", "-d", "2")
    assert out["values"][0]["ideal_dim"] == 3 and out["minimal_generators"] == [2, 2, 2]
    out = run_json(capsys, "formula", "resolution", "--alpha", "2,2,2")
    assert out["omega"] == 2 and out["a"] == 2
    assert out["resolution"] == "0 -> S(-3)^2 -> S(-2)^3 -> J -> 0"


def test_fatpoints(capsys, tmp_path):
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps({"points": [[1, 0, 1], [0, 1, 1]]}))
    out = run_json(capsys, "fatpoints", "--points", str(pts), "--mults", "2,2", "--degree-range", "0..4")
    row = out["rows"][2]
    assert row["hf"] == row["annihilator"] == row["span"] == 5
    assert row["deficit"] == 1
    out = run_json(capsys, "fatpoints", "--general", "5", "--seed", "1", "--degree-range", "4..4")
    assert out["rows"][0]["deficit"] == 1 and out["meta"]["seed"] == 1


def test_experiment(capsys):
    out = run_json(capsys, "experiment", "nine-planes", "--max-degree", "4", "--seed", "2")
    assert out["seed"] == 2 and len(out["hilbert_function"]) == 5


def test_goldens_suite(capsys):
    out = run_json(capsys, "goldens", "planar-main")
    assert out["passed"] == out["total"] == 10


def test_malformed_json_reports_byte_offset(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_bytes('{"name": "é", "vertices": [1,'.encode("utf-8"))
    code, _, err = run(capsys, "dim", "--complex", str(bad), "-r", "1", "-d", "2")
    assert code == 2
    assert f"byte {len(bad.read_bytes())}" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "dim", "--complex", "no_such_complex", "-r", "1", "-d", "2")
    assert code == 2


def test_invalid_complex(capsys, tmp_path):
    bad = tmp_path / "fold.json"
    bad.write_text(json.dumps({"vertices": [[0, 0], [1, 0], [0, 1], [1, 1]],
                               "maximal_faces": [[0, 1, 2], [1, 2, 3], [0, 1, 3]]}))
    code, _, err = run(capsys, "dim", "--complex", str(bad), "-r", "1", "-d", "2")
    assert code == 3 and "invalid" in err


def test_missing_smoothness(capsys):
    code, _, _ = run(capsys, "dim", "--complex", "fexm", "-d", "2")
    assert code == 3


def test_computation_limit(capsys):
    old = set_rank_limits(max_entries=10)
    try:
        code, _, err = run(capsys, "dim", "--complex", "generic", "-r", "1", "-d", "6")
    finally:
        set_rank_limits(**{"bareiss": old["bareiss"], "flint_exact": old["flint"], "max_entries": old["max_entries"]})
    assert code == 4 and "limit" in err


def test_argument_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["dim"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "algspline", "formula", "plf", "--alpha", "2,3", "-d", "3"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["values"][0]["ideal_dim"] == 3
