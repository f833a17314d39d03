import csv
import json

import pytest

from qspline.cli import EXIT_ARG, EXIT_IO, EXIT_OK, main, parse_grid, ArgumentProblem


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_grid():
    assert parse_grid("0:0.5:5") == (0.0, 0.5, 5)
    for bad in ("0:0.5", "0:-1:5", "0:1:0", "a:1:3"):
        with pytest.raises(ArgumentProblem):
            parse_grid(bad)


def test_eval_stdout_hat(capsys):
    code, out, _ = run(capsys, "eval", "--q", "2", "--grid", "0:0.5:5")
    assert code == EXIT_OK
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["t_or_xi", "scalar", "v1", "v2", "v3", "modulus"]
    assert [r[1] for r in rows[1:]] == ["0", "0.5", "1", "0.5", "0"]


def test_eval_file_and_manifest(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code, _, _ = run(capsys, "eval", "--q", "3+1/5e1-0.3e2+0.4e3", "--grid", "0:0.1:40", "--out", str(out))
    assert code == EXIT_OK
    first = out.read_bytes()
    manifest = json.loads((tmp_path / "b.csv.manifest.json").read_text())
    assert manifest["orders"] == ["3+0.2e1-0.3e2+0.4e3"]
    assert manifest["grid"] == {"t0": 0.0, "dt": 0.1, "n": 40}
    assert set(manifest) == {"command", "orders", "grid", "config", "outputs", "timing"}
    run(capsys, "eval", "--q", "3+1/5e1-0.3e2+0.4e3", "--grid", "0:0.1:40", "--out", str(out))
    assert out.read_bytes() == first
    assert b"\r" not in first and len(first.splitlines()) == 41


def test_eval_fourier(capsys):
    code, out, _ = run(capsys, "eval", "--q", "0.8+e1", "--domain", "fourier", "--grid", "0:1:3")
    assert code == EXIT_OK
    rows = list(csv.reader(out.splitlines()))
    assert len(rows[0]) == 10
    assert rows[1][1] == "1" and rows[1][5] == "1"


@pytest.mark.parametrize("argv", [
    ("eval", "--q", "0.4", "--grid", "0:1:3"),
    ("eval", "--q", "1+e1", "--grid", "0:1:3"),
    ("eval", "--q", "3+x", "--grid", "0:1:3"),
    ("eval", "--q", "3", "--grid", "0:-1:3"),
    ("gamma", "--q", "-2"),
    ("gamma", "--q", "nonsense"),
    ("verify", "--suite", "nope"),
])
def test_invalid_arguments(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_ARG


def test_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "x.csv"
    assert run(capsys, "eval", "--q", "3", "--grid", "0:1:3", "--out", str(target))[0] == EXIT_IO


def test_gamma_output(capsys):
    code, out, _ = run(capsys, "gamma", "--q", "5")
    assert code == EXIT_OK and out.strip() == "24 + 0 e1 + 0 e2 + 0 e3"
    code, out, err = run(capsys, "gamma", "--q", "-2")
    assert "pole" in err


def test_gamma_cross_check(capsys):
    code, out, _ = run(capsys, "gamma", "--q", "2.5+0.5e1", "--cross-check", "--gauss-n", "1000000")
    assert code == EXIT_OK
    dev = float(out.strip().splitlines()[-1].split(":")[1])
    assert dev < 1e-5


def test_figures(tmp_path, capsys):
    code, out, _ = run(capsys, "figures", "--out", str(tmp_path), "--svg")
    assert code == EXIT_OK
    names = {p.name for p in tmp_path.iterdir()}
    for stem in ("fig1_modulus_scalar", "fig2_vector_parts", "fig3_phase", "fig4_v1_v2"):
        assert {f"{stem}.csv", f"{stem}.svg", f"{stem}.csv.manifest.json"} <= names
    assert "amplitude monotone in m: True" in out


def test_verify_algebra(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "algebra")
    assert code == EXIT_OK
    assert "FAIL" not in out
