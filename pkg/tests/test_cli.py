import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ultrafun.cli import run, to_json


def _json(argv):
    code, out, err = run(argv)
    assert code == 0, err
    return json.loads(out)


def test_project_gaussian_converges():
    rep = _json(["project", "--fn", "exp(-x^2/2)", "--levels", "8,16"])
    assert rep["schema"] == 1
    assert rep["convergence"][0]["max_diff"] <= 1e-8
    assert len(rep["levels"][0]["samples"]) == 601


def test_project_constant_coefficients():
    rep = _json(["project", "--fn", "1", "--levels", "4,8", "--emit", "coeffs"])
    for level in rep["levels"]:
        for l, k, re, im in level["coeffs"]:
            want = 1.0 if l == 0 else 0.0
            assert abs(re - want) < 1e-12 and abs(im) < 1e-12


def test_project_csv_has_header_and_summary():
    code, out, _ = run(["project", "--fn", "gauss(x)", "--levels", "4,8", "--format", "csv",
                        "--range", "-1:1:0.5"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema 1"
    assert lines[1] == "n,x,re,im"
    rows = list(csv.reader(io.StringIO("\n".join(l for l in lines[1:] if not l.startswith("#")))))
    assert len(rows) == 1 + 2 * 5
    assert any(l.startswith("# convergence 4->8") for l in lines)


def test_syntax_error_exit_code_and_json():
    code, out, err = run(["project", "--fn", "x *", "--levels", "4"])
    assert code == 2 and out == ""
    e = json.loads(err)
    assert e["error"] == "SyntaxError" and e["offset"] == 3 and e["schema"] == 1


def test_unknown_function_and_eval_failure():
    code, _, err = run(["project", "--fn", "tanh(x)", "--levels", "4"])
    assert code == 2 and json.loads(err)["error"] == "UnknownFunction"
    code, _, err = run(["project", "--fn", "1/x", "--levels", "4"])
    assert code == 2 and json.loads(err)["error"] == "DivisionByZero"


def test_pair_dirac_shadow():
    rep = _json(["pair", "--dist", "dirac", "--test", "exp(-x^2/2)"])
    value = rep["shadow"]["value"]
    assert rep["shadow"]["finite"]
    assert abs(complex(*value) - 1) < 1e-8
    assert [lv["n"] for lv in rep["levels"]] == [4, 8, 16, 32]


def test_pair_heaviside_and_odd():
    rep = _json(["pair", "--dist", "heaviside", "--test", "exp(-x^2/2)", "--levels", "8,16"])
    assert abs(complex(*rep["shadow"]["value"]) - math.sqrt(math.pi / 2)) < 1e-6
    rep = _json(["pair", "--dist", "dirac", "--test", "x*exp(-x^2)", "--levels", "8,16"])
    assert abs(complex(*rep["shadow"]["value"])) < 1e-8


def test_pair_with_spec_file(tmp_path):
    spec = tmp_path / "heaviside.json"
    spec.write_text(json.dumps({"order": 1, "base": "ramp(x)", "label": "H"}))
    rep = _json(["pair", "--dist", str(spec), "--test", "exp(-x^2/2)", "--levels", "16"])
    assert rep["dist"]["label"] == "H"
    assert abs(rep["levels"][0]["value"][0] - math.sqrt(math.pi / 2)) < 1e-4


def test_fourier_gaussian_between_lattice_points():
    rep = _json(["fourier", "--fn", "exp(-x^2/2)", "--at", "1", "--levels", "8"])
    at = rep["levels"][0]["at"][0]
    assert abs(at["value"][0] - math.exp(-0.5)) <= 1e-6
    assert at["nearest_k"] == pytest.approx(2 * math.sqrt(math.pi) / 8 * 2.5, rel=0.2)
    assert at["offset"] == pytest.approx(1 - at["nearest_k"])


def test_fourier_plane_wave_spike():
    eta = math.sqrt(math.pi) / 8
    q = 3 * eta
    rep = _json(["fourier", "--fn", f"exp(i*x*{q!r})", "--at", repr(q), "--levels", "8"])
    at = rep["levels"][0]["at"][0]
    assert at["offset"] == 0
    assert at["value_at_nearest"][0] == pytest.approx(math.sqrt(2 * math.pi) / eta)


def test_fourier_dirac_at_zero_is_zero():
    # the catalog representation D^2 ramp keeps a boundary jump; see the projection tests
    rep = _json(["fourier", "--dist", "dirac", "--at", "0", "--levels", "16"])
    assert abs(complex(*rep["levels"][0]["at"][0]["value"])) < 1e-10


def test_fourier_full_spectrum_csv():
    code, out, _ = run(["fourier", "--fn", "gauss(x)", "--levels", "2", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[1] == "n,k,re,im"
    assert len([l for l in out.splitlines() if l.startswith("2,")]) == 8


def test_fourier_rejects_symmetric_grid():
    code, _, err = run(["fourier", "--fn", "gauss(x)", "--levels", "4", "--grid", "symmetric"])
    assert code == 2 and json.loads(err)["error"] == "GridVariantError"


def test_verify_delta_and_fourier():
    rep = _json(["verify", "--suite", "delta", "--levels", "4"])
    gram = [c for c in rep["checks"] if c["name"] == "gram_full"][0]
    assert gram["passed"] and gram["residual"] <= 1e-9
    rep = _json(["verify", "--suite", "fourier", "--levels", "4"])
    parseval = [c for c in rep["checks"] if c["name"] == "parseval"][0]
    assert parseval["residual"] <= 1e-10


def test_verify_all_passes():
    code, out, _ = run(["verify", "--suite", "all", "--levels", "4,8,16"])
    assert code == 0 and json.loads(out)["passed"]


def test_verify_failure_exit_code(monkeypatch):
    import ultrafun.cli as cli
    from ultrafun.verify import Check
    monkeypatch.setattr(cli, "run_suite", lambda *a: [Check("grid", "forced", 4, 1.0, 0.0)])
    code, out, _ = run(["verify", "--suite", "grid", "--levels", "4"])
    assert code == 1 and not json.loads(out)["passed"]


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "all", "--levels", ""],
    ["verify", "--levels", "8,4"],
    ["project", "--levels", "4"],
    ["frobnicate"],
    ["pair", "--dist", "nosuch", "--test", "x"],
    ["project", "--fn", "x", "--range", "3:1:0.1"],
    ["project", "--fn", "x", "--oversampling", "1"],
])
def test_usage_errors(argv):
    code, out, err = run(argv)
    assert code == 2 and out == ""
    assert json.loads(err)["schema"] == 1


def test_reports_are_byte_identical(monkeypatch):
    argv = ["pair", "--dist", "dirac", "--test", "exp(-x^2/2)", "--levels", "4,8,16"]
    monkeypatch.setenv("UF_THREADS", "1")
    serial = run(argv)
    monkeypatch.setenv("UF_THREADS", "3")
    parallel = run(argv)
    assert serial == parallel


def test_bad_thread_setting(monkeypatch):
    monkeypatch.setenv("UF_THREADS", "zero")
    code, _, err = run(["project", "--fn", "x", "--levels", "4"])
    assert code == 2 and "UF_THREADS" in json.loads(err)["message"]


def test_output_file(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(["project", "--fn", "1", "--levels", "4", "--output", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["command"] == "project"


def test_floats_use_17_significant_digits():
    assert to_json({"v": 0.1, "z": 1 + 2j, "bad": float("nan")}) == \
        '{"v": 0.10000000000000001, "z": [1, 2], "bad": null}'


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ultrafun.cli", "project", "--fn", "x *"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stderr)["error"] == "SyntaxError"


def test_negative_values_after_flags():
    rep = _json(["fourier", "--fn", "exp(-x^2/2)", "--at", "-1,1", "--levels", "8"])
    a, b = rep["levels"][0]["at"]
    assert a["value"][0] == pytest.approx(b["value"][0], abs=1e-12)
