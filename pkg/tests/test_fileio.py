"""Curve file parsing, round trips, and report serialization."""

import json

import numpy as np
import pytest

from selflink.curves import RationalComponent, RationalLink
from selflink.errors import ParseError
from selflink.fileio import (
    component_from_dict,
    dumps_report,
    link_from_dict,
    link_to_dict,
    load_link,
    report_to_dict,
    save_link,
)
from selflink.writhe import self_linking


def gmat(*rows):
    d = max(len(r) for r in rows)
    return np.array([list(r) + [0.0] * (d - len(r)) for r in rows], dtype=float)


def trefoil_link():
    return RationalLink([RationalComponent(
        gmat([1], [0, -3, 0, 1], [0, 0, -4, 0, 1], [0, -10, 0, 0, 0, 1]))])


def two_component_link():
    line = gmat([1, 0], [3, 0], [0, 0], [0, 1])
    circle = gmat([1, 0, 1], [1, 0, -1], [0, 2], [0, 0])
    return RationalLink([RationalComponent(line), RationalComponent(circle)])


# ---------------------------------------------------------------------------
# curve files


def test_round_trip(tmp_path):
    path = tmp_path / "trefoil.json"
    save_link(path, trefoil_link(), metadata={"name": "trefoil"})
    loaded = load_link(path)
    assert len(loaded.components) == 1
    np.testing.assert_allclose(loaded.components[0].coeff_matrix,
                               trefoil_link().components[0].coeff_matrix)
    data = json.loads(path.read_text())
    assert data["metadata"] == {"name": "trefoil"}


def test_round_trip_two_components(tmp_path):
    path = tmp_path / "pair.json"
    save_link(path, two_component_link())
    loaded = load_link(path)
    assert len(loaded.components) == 2
    for got, want in zip(loaded.components, two_component_link().components):
        np.testing.assert_allclose(got.coeff_matrix, want.coeff_matrix)


def test_rows_padded_to_longest():
    comp = component_from_dict({"w": [1.0], "x": [0.0, 1.0],
                                "y": [0.0, 0.0, 1.0], "z": [2.0]})
    assert comp.coeff_matrix.shape == (4, 3)
    np.testing.assert_allclose(comp.coeff_matrix[0], [1.0, 0.0, 0.0])
    np.testing.assert_allclose(comp.coeff_matrix[3], [2.0, 0.0, 0.0])


def test_integer_coefficients_accepted():
    comp = component_from_dict({"w": [1], "x": [0, 1], "y": [0, 0, 1],
                                "z": [0, 0, 0, 1]})
    assert comp.coeff_matrix.dtype == float


def test_missing_file():
    with pytest.raises(ParseError, match="cannot read"):
        load_link("/nonexistent/curve.json")


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{components: [")
    with pytest.raises(ParseError, match="not valid JSON"):
        load_link(path)


@pytest.mark.parametrize("data", [
    [1, 2, 3],
    {"metadata": {}},
    {"components": []},
    {"components": "nope"},
])
def test_top_level_shape_rejected(data):
    with pytest.raises(ParseError):
        link_from_dict(data)


def test_component_missing_coordinate():
    with pytest.raises(ParseError, match="missing coordinate 'z'"):
        component_from_dict({"w": [1.0], "x": [1.0], "y": [1.0]})


def test_component_not_an_object():
    with pytest.raises(ParseError, match="must be an object"):
        component_from_dict([1.0, 2.0], index=3)


@pytest.mark.parametrize("row", [[], "abc", [1.0, "x"], [float("nan")],
                                 [float("inf"), 1.0]])
def test_bad_coefficient_rows(row):
    data = {"w": [1.0], "x": [1.0], "y": [1.0], "z": row}
    with pytest.raises(ParseError, match="'z'"):
        component_from_dict(data)


def test_identically_zero_component():
    data = {k: [0.0, 0.0] for k in "wxyz"}
    with pytest.raises(ParseError, match="identically zero"):
        component_from_dict(data)


def test_link_to_dict_shape():
    out = link_to_dict(trefoil_link())
    assert set(out) == {"components"}
    assert set(out["components"][0]) == {"w", "x", "y", "z"}
    assert out["components"][0]["z"] == [0.0, -10.0, 0.0, 0.0, 0.0, 1.0]


# ---------------------------------------------------------------------------
# reports


def test_report_serialization_structure():
    report = self_linking(trefoil_link(), rng=np.random.default_rng(7))
    out = report_to_dict(report, seed=7)
    assert out["value"] == report.value
    assert out["seed"] == 7
    assert len(out["center"]) == 4
    census = out["census"]
    assert sum(census.values()) == len(out["perPoint"])
    for entry in out["perPoint"]:
        assert entry["kind"] in ("crossing", "solitary", "imaginary_pair")
        assert len(entry["params"]) == 2
        assert all(len(z) == 2 for z in entry["params"])
        if entry["included"]:
            assert entry["writhe"] in (-1, 1)
        else:
            assert entry["writhe"] is None
    json.dumps(out)  # every leaf must be a native type


def test_report_excluded_entries():
    report = self_linking(two_component_link(), rng=np.random.default_rng(3))
    out = report_to_dict(report)
    assert out["value"] == 0
    assert all(not e["included"] for e in out["perPoint"])
    assert out["seed"] is None
    json.dumps(out)


def test_dumps_report_deterministic():
    a = dumps_report(self_linking(trefoil_link(), rng=np.random.default_rng(5)),
                     seed=5)
    b = dumps_report(self_linking(trefoil_link(), rng=np.random.default_rng(5)),
                     seed=5)
    assert a == b
    assert a.startswith("{")
    parsed = json.loads(a)
    assert parsed["seed"] == 5


def test_dumps_report_with_tolerances():
    report = self_linking(trefoil_link(), rng=np.random.default_rng(5))
    text = dumps_report(report, seed=5)
    from selflink.config import DEFAULT_TOL
    with_tol = dumps_report(report, seed=5, tolerances=DEFAULT_TOL)
    assert text != with_tol
    parsed = json.loads(with_tol)
    assert parsed["tolerances"]["det_guard"] == DEFAULT_TOL.det_guard
