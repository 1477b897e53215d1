import csv
import io
import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from charexp.cli import build_parser, main
from charexp.expansion import EXPANSION_SCHEMA
from charexp.haar import INTEGRAL_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_char_fundamental(capsys):
    code, out, _ = run(capsys, "char", "--N", "2", "--label", "1,0", "--phases", "0.0,3.14159265")
    doc = json.loads(out)
    assert code == 0
    assert abs(complex(*doc["value"])) < 1e-8
    assert doc["difference"] < 1e-12


def test_char_degenerate_reports_jacobi_trudi_only(capsys):
    code, out, _ = run(capsys, "char", "--N", "3", "--label", "2,0,0", "--phases", "0,0,0")
    doc = json.loads(out)
    assert code == 0 and doc["weyl"] is None
    assert complex(*doc["value"]) == pytest.approx(6)


def test_char_with_det_power(capsys):
    code, out, _ = run(capsys, "char", "--N", "2", "--label", "1,0@-1", "--phases", "0.5,1.5")
    t = np.exp(1j * np.array([0.5, 1.5]))
    assert complex(*json.loads(out)["value"]) == pytest.approx(t.sum() / t.prod())


def test_expand_geometric(capsys):
    code, out, _ = run(capsys, "expand", "--N", "2", "--seq", "geometric", "--param", "z=0.5",
                       "--max-boxes", "3")
    doc = json.loads(out)
    jsonschema.validate(doc, EXPANSION_SCHEMA)
    nonzero = [(r["label"], r["coefficient"][0]) for r in doc["terms"] if not r["flagged_zero"]]
    assert [lab for lab, _ in nonzero] == ["0,0", "1,0", "2,0", "3,0"]
    assert [c for _, c in nonzero] == pytest.approx([1, 0.5, 0.25, 0.125])


def test_expand_csv_and_table(capsys):
    args = ["expand", "--N", "1", "--seq", "bessel", "--param", "x=0.5", "--max-boxes", "0",
            "--det-power-range=-2,2"]
    code, out, _ = run(capsys, *args, "--output", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["label"] for r in rows] == ["0@-2", "0@-1", "0", "0@1", "0@2"]
    assert float(rows[0]["re"]) == float(rows[4]["re"])
    code, out, _ = run(capsys, *args, "--output", "table")
    assert code == 0 and "0@-2" in out


def test_expand_complex_parameter(capsys):
    code, out, _ = run(capsys, "expand", "--N", "2", "--seq", "geometric", "--param",
                       "z=0.5+0.2j", "--max-boxes", "1")
    doc = json.loads(out)
    assert doc["terms"][1]["coefficient"] == pytest.approx([0.5, 0.2])


def test_reconstruct_geometric(capsys):
    code, out, _ = run(capsys, "reconstruct", "--N", "2", "--seq", "geometric", "--param", "z=0.5",
                       "--phases", "0,3.141592653589793", "--max-boxes", "60", "--tolerance", "1e-8")
    doc = json.loads(out)
    assert code == 0
    assert complex(*doc["direct_product"]) == pytest.approx(4 / 3)
    assert doc["abs_error"] < 1e-8


def test_reconstruct_tolerance_failure(capsys):
    code, out, err = run(capsys, "reconstruct", "--N", "2", "--seq", "exponential", "--param",
                         "x=1", "--phases", "0.2,1", "--max-boxes", "2", "--tolerance", "1e-10")
    assert code == 1 and "FAILED" in err
    assert json.loads(out)["abs_error"] > 1e-10


def test_verify_orthogonality_torus(capsys):
    code, out, _ = run(capsys, "verify-orthogonality", "--N", "2", "--max-boxes", "3")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["max_deviation"] < 1e-6
    assert len(doc["labels"]) == 6


def test_verify_orthogonality_mc(capsys):
    code, out, _ = run(capsys, "verify-orthogonality", "--N", "3", "--max-boxes", "2",
                       "--integrator", "mc", "--samples", "20000", "--seed", "3")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 3


def test_verify_orthogonality_fails_on_coarse_grid(capsys):
    # alternant exponents reach 9 > grid, so the rectangle rule aliases
    code, _, err = run(capsys, "verify-orthogonality", "--N", "2", "--max-boxes", "8",
                       "--grid", "8")
    assert code == 1 and "FAILED" in err


def test_extract(capsys):
    code, out, _ = run(capsys, "extract", "--N", "2", "--seq", "geometric", "--param", "z=0.5",
                       "--label", "2,0", "--grid", "128", "--tolerance", "1e-6")
    doc = json.loads(out)
    assert code == 0
    jsonschema.validate(doc["integral"], INTEGRAL_SCHEMA)
    assert doc["abs_difference"] < 1e-6


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "--N", "2", "--seq", "geometric", "--param", "z=1.5", "--max-boxes", "2"],
        ["expand", "--N", "2", "--seq", "bessel", "--param", "x=0.5", "--max-boxes", "2"],
        ["expand", "--N", "2", "--seq", "chebyshev-u", "--param", "z=0.5", "--max-boxes", "2"],
        ["char", "--N", "2", "--label", "1,2", "--phases", "0,1"],
        ["char", "--N", "3", "--label", "1,0", "--phases", "0,1,2"],
        ["char", "--N", "2", "--label", "1,0", "--phases", "0,1,2"],
        ["verify-orthogonality", "--N", "4"],
    ],
)
def test_user_errors_exit_nonzero(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "--N", "2", "--seq", "nope", "--max-boxes", "2"],
        ["char", "--N", "2", "--label", "1,0", "--phases", "0,1", "--bogus"],
        ["char", "--N", "2", "--lab", "1,0", "--phases", "0,1"],
        ["frobnicate"],
    ],
)
def test_bad_flags_are_hard_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_every_flag_documented():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.__class__.__name__ == "_SubParsersAction")
    assert set(sub.choices) == {"char", "expand", "reconstruct", "verify-orthogonality", "extract"}
    for name, p in sub.choices.items():
        for action in p._actions:
            if action.option_strings and action.dest != "help":
                assert action.help, f"{name} {action.option_strings} lacks help"


def test_out_file(tmp_path, capsys):
    path = tmp_path / "e.json"
    code, out, _ = run(capsys, "expand", "--N", "2", "--seq", "quadratic", "--param", "x=0.3",
                       "--max-boxes", "4", "--out", str(path))
    assert code == 0 and out == ""
    jsonschema.validate(json.loads(path.read_text()), EXPANSION_SCHEMA)


def test_seed_from_environment(monkeypatch, capsys):
    argv = ["extract", "--N", "1", "--seq", "exponential", "--param", "x=1", "--label", "0@1",
            "--integrator", "mc", "--samples", "1000"]
    monkeypatch.setenv("CHAREXP_SEED", "41")
    _, out, _ = run(capsys, *argv)
    assert json.loads(out)["integral"]["seed"] == 41


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "charexp", "char", "--N", "1", "--label", "0@3", "--phases", "0.5"],
        capture_output=True, text=True, check=True,
    )
    assert complex(*json.loads(proc.stdout)["value"]) == pytest.approx(np.exp(1.5j))
