"""Command line behavior: output shape, determinism, exit codes."""

import json

import numpy as np
import pytest

from selflink.cli import entry
from selflink.curves import RationalComponent, RationalLink
from selflink.fileio import load_link, save_link


def gmat(*rows):
    d = max(len(r) for r in rows)
    return np.array([list(r) + [0.0] * (d - len(r)) for r in rows], dtype=float)


@pytest.fixture
def cubic_file(tmp_path):
    path = tmp_path / "cubic.json"
    save_link(path, RationalLink([RationalComponent(np.eye(4))]))
    return str(path)


@pytest.fixture
def invalid_file(tmp_path):
    # every coordinate vanishes at the parameter origin
    path = tmp_path / "pinched.json"
    save_link(path, RationalLink([RationalComponent(
        gmat([0, 1], [0, 0, 1], [0, 0, 0, 1], [0, 1, 1]))]))
    return str(path)


def test_sl_prints_value_then_report(cubic_file, capsys):
    assert entry(["sl", cubic_file]) == 0
    out = capsys.readouterr().out
    first, rest = out.split("\n", 1)
    assert int(first) == 1
    report = json.loads(rest)
    assert report["value"] == 1
    assert report["seed"] == 0
    assert sum(report["census"].values()) == len(report["perPoint"])


def test_sl_explicit_center(cubic_file, capsys):
    assert entry(["sl", cubic_file, "--center", "0,1,1,0"]) == 0
    report = json.loads(capsys.readouterr().out.split("\n", 1)[1])
    assert report["census"] == {"crossings": 0, "solitary": 1,
                                "imaginaryPairs": 0}
    assert report["value"] == 1


def test_sl_deterministic_per_seed(cubic_file, capsys):
    entry(["sl", cubic_file, "--seed", "11"])
    first = capsys.readouterr().out
    entry(["sl", cubic_file, "--seed", "11"])
    assert capsys.readouterr().out == first
    entry(["sl", cubic_file, "--seed", "12"])
    other = capsys.readouterr().out
    assert json.loads(other.split("\n", 1)[1])["value"] == 1


def test_sl_nongeneric_center_exit(cubic_file, capsys):
    # the chosen point lies on a tangent line of the curve
    assert entry(["sl", cubic_file, "--center", "0,1,2,3"]) == 2
    assert "center" in capsys.readouterr().err


def test_invalid_curve_exit(invalid_file, capsys):
    assert entry(["sl", invalid_file]) == 3
    assert "invalid curve" in capsys.readouterr().err


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    assert entry(["sl", str(bad)]) == 4
    assert "parse error" in capsys.readouterr().err
    assert entry(["sl", str(tmp_path / "missing.json")]) == 4


def test_malformed_center_rejected(cubic_file):
    with pytest.raises(SystemExit):
        entry(["sl", cubic_file, "--center", "1,2,3"])
    with pytest.raises(SystemExit):
        entry(["sl", cubic_file, "--center", "a,b,c,d"])


def test_verify_constant(cubic_file, capsys):
    assert entry(["verify", cubic_file, "--trials", "4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["constant"] is True
    assert payload["values"] == [1, 1, 1, 1]
    assert all(sum(c.values()) >= 1 for c in payload["censuses"])


def test_mirror_round_trip(cubic_file, tmp_path, capsys):
    out = str(tmp_path / "mirror.json")
    assert entry(["mirror", cubic_file, "--out", out]) == 0
    mirrored = load_link(out)
    np.testing.assert_allclose(mirrored.components[0].coeff_matrix[3],
                               [0.0, 0.0, 0.0, -1.0])
    capsys.readouterr()
    assert entry(["sl", out]) == 0
    assert int(capsys.readouterr().out.split("\n", 1)[0]) == -1


def test_diagram_writes_svg(cubic_file, tmp_path, capsys):
    out = str(tmp_path / "cubic.svg")
    assert entry(["diagram", cubic_file, "--out", out,
                  "--center", "0,1,1,0"]) == 0
    text = open(out).read()
    assert text.startswith("<svg")
    assert 'class="solitary-point"' in text
    assert "wrote" in capsys.readouterr().out


def test_scan_without_walls(cubic_file, tmp_path, capsys):
    rng = np.random.default_rng(21)
    nearby = RationalLink([RationalComponent(
        np.eye(4) + 0.01 * rng.standard_normal((4, 4)))])
    other = str(tmp_path / "nearby.json")
    save_link(other, nearby)
    assert entry(["scan", cubic_file, other, "--steps", "6"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["events"] == []
    assert payload["jumpSum"] == 0
    assert set(payload["values"]) == {1}
