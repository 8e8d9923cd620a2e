import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import numpy as np
import pytest

from hbdirichlet.cli import EXIT_ERROR, EXIT_FAILS, EXIT_OK, EXIT_USAGE, GRID_ENV, parse_complex_list, parse_measure, run

SCHEMA = json.loads(resources.files("hbdirichlet").joinpath("schema/report.schema.json").read_text())


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    payload = json.loads(text)
    jsonschema.validate(payload, SCHEMA)
    return code, payload


class TestExamples:
    def test_sarason_equality(self):
        code, rep = call_json("certify", "--theorem", "C", "--pair", "sarason", "--zeta", "1,0", "--mu", "atoms:1,0")
        assert code == EXIT_OK and rep["verdict"] == "holds"

    def test_factor(self):
        code, rep = call_json("factor", "--coeffs", "1,0;2,0;1,0", "--n", "1")
        assert code == EXIT_OK
        coeffs = np.array([complex(*c) for c in rep["p"]["coeffs"]])
        assert np.allclose(coeffs, [1, 1], atol=1e-8)
        assert rep["residual"] <= 1e-10

    def test_kernel_norms(self):
        code, rep = call_json("kernel-norms", "--mu", "atoms:1,0", "--w", "0.5,0")
        assert code == EXIT_OK
        assert rep["dmu"]["value"] == pytest.approx(8 / 3)


class TestExitCodes:
    def test_fails_is_two(self):
        code, rep = call_json("certify", "--theorem", "C", "--pair", "costara-ransford", "--atoms", "1,0", "--mu", "atoms:1,0;-1,0")
        assert code == EXIT_FAILS and rep["verdict"] == "fails"

    def test_domain_error_is_one(self):
        code, rep = call_json("example", "sarason", "--zeta", "0.5,0")
        assert code == EXIT_ERROR and rep["error"]["kind"]

    def test_usage_is_64(self, capsys):
        code, text = call("certify", "--theorem", "Z")
        assert code == EXIT_USAGE and text == ""
        assert call("no-such-command")[0] == EXIT_USAGE

    def test_bad_complex(self):
        assert call("potential", "--mu", "atoms:1,0", "--z", "x,y")[0] in (EXIT_ERROR, EXIT_USAGE)


@pytest.mark.parametrize(
    "argv",
    [
        ("example", "sarason"),
        ("example", "costara-ransford", "--atoms", "roots_of_unity:3"),
        ("example", "poly-type", "--atoms", "1,0", "--mults", "2"),
        ("example", "exponential", "--n", "2", "-G", "1024"),
        ("potential", "--mu", "atoms:1,0;-1,0", "--z", "0,1", "--z", "0.5,0"),
        ("dnorm", "--mu", "atoms:1,0", "--f", '{"type": "poly", "coeffs": [[0, 0], [0, 0], [1, 0]]}'),
        ("dnorm", "--mu", "atoms:1,0", "--form", "area", "--seminorm", "--f", '{"type": "poly", "coeffs": [[0, 0], [1, 0]]}'),
        ("kernel-norms", "--mu", "atoms:1,0", "--w", "0.5,0", "--pair", "sarason", "--quadrature"),
        ("mate", "--b", '{"type": "poly", "coeffs": [[0.5, 0], [0.5, 0]]}', "--at", "0.5,0", "-G", "1024"),
        ("certify", "--theorem", "A", "--pair", "costara-ransford", "--atoms", "1,0", "--mu", "atoms:1,0"),
        ("certify", "--theorem", "B", "--pair", "sarason", "--mu", "atoms:1,0", "--radii", "16", "--angles", "64"),
        ("certify", "--theorem", "D", "--pair", "poly-type", "--atoms", "1,0", "--mults", "2"),
        ("certify", "--theorem", "continuous", "--pair", "costara-ransford", "--atoms", "1,0", "--mu", "atoms:1,0"),
        ("certify", "--theorem", "corona", "--pair", "costara-ransford", "--atoms", "1,0"),
        ("clark", "--pair", "costara-ransford", "--atoms", "1,0", "--lam", "0,1"),
    ],
)
def test_reports_validate_and_are_deterministic(argv):
    first = call(*argv)
    second = call(*argv)
    assert first == second
    jsonschema.validate(json.loads(first[1]), SCHEMA)
    assert first[0] in (EXIT_OK, EXIT_FAILS)


def test_console_script_is_byte_identical():
    argv = [sys.executable, "-m", "hbdirichlet.cli", "certify", "--theorem", "C", "--pair", "sarason", "--mu", "atoms:1,0"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and b"holds" in a


def test_grid_env_is_echoed(monkeypatch):
    monkeypatch.setenv(GRID_ENV, "2048")
    _, rep = call_json("certify", "--theorem", "A", "--pair", "sarason", "--mu", "atoms:1,0")
    assert rep["grid_meta"]["cli"]["grid_size"] == 2048
    assert rep["grid_meta"]["cli"]["grid_size_env"] == {"variable": GRID_ENV, "value": "2048"}


def test_bad_grid_env(monkeypatch):
    monkeypatch.setenv(GRID_ENV, "1000")
    assert call("example", "sarason")[0] in (EXIT_ERROR, EXIT_USAGE)


def test_csv_and_figures(tmp_path):
    code, rep = call_json("certify", "--theorem", "B", "--pair", "sarason", "--mu", "atoms:1,0", "--radii", "8", "--angles", "32",
                          "--csv", str(tmp_path / "csv"), "--figures", str(tmp_path / "fig"))
    assert code == EXIT_OK
    for f in rep["extras"]["csv_files"]:
        assert open(f).readline().strip() in ("theta,value", "re,im,value")
    pngs = rep["extras"]["figure_files"]
    assert pngs
    for f in pngs:
        assert open(f, "rb").read(8) == b"\x89PNG\r\n\x1a\n"


def test_figures_are_reproducible(tmp_path):
    argv = ("clark", "--pair", "costara-ransford", "--atoms", "1,0", "--lam", "0,1")
    call(*argv, "--figures", str(tmp_path / "a"))
    call(*argv, "--figures", str(tmp_path / "b"))
    a = sorted((tmp_path / "a").iterdir())
    b = sorted((tmp_path / "b").iterdir())
    assert [p.name for p in a] == [p.name for p in b]
    assert all(x.read_bytes() == y.read_bytes() for x, y in zip(a, b))


def test_csv_stdout_format():
    code, text = call("clark", "--pair", "costara-ransford", "--atoms", "1,0", "--lam", "-1,0", "--format", "csv")
    assert code == EXIT_OK
    assert text.splitlines()[0] == "theta,value"


def test_mate_from_profile(tmp_path):
    theta = 2 * np.pi * np.arange(1024) / 1024
    path = tmp_path / "p.csv"
    rows = "\n".join(f"{t!r},{v!r}" for t, v in zip(theta.tolist(), np.full(1024, np.log(0.5)).tolist()))
    path.write_text("theta,value\n" + rows + "\n")
    code, rep = call_json("mate", "--profile", str(path), "--at", "0.3,0.2")
    assert code == EXIT_OK
    assert rep["values"][0]["a"][0] == pytest.approx(0.5)


def test_selftest_subset(capsys):
    code, rep = call_json("selftest", "--criteria", "3,7")
    assert code == EXIT_OK and rep["passed"]
    err = capsys.readouterr().err
    assert "[PASS] criterion 3" in err and "[PASS] criterion 7" in err


def test_negative_values_are_not_flags():
    code, rep = call_json("potential", "--mu", "atoms:-1,0", "--z", "-0.5,-.25")
    assert code == EXIT_OK


def test_parsers():
    assert np.allclose(parse_complex_list("roots_of_unity:4"), [1, 1j, -1, -1j])
    mu = parse_measure('{"atoms": [[0, 1]], "masses": [2]}')
    assert mu.masses[0] == 2
    mu = parse_measure("atoms:1,0;-1,0", "1,3")
    assert list(mu.masses) == [1, 3]
