"""Curve files and report serialization.

A curve file is JSON: {"components": [{"w": [...], "x": [...], "y":
[...], "z": [...]}, ...], "metadata": {...}}. Each coordinate list
holds polynomial coefficients in ascending powers; lists inside one
component may have different lengths and are padded to the longest.
Reports serialize to JSON with sorted keys so a fixed seed reproduces
the output byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import asdict

import numpy as np

from .config import Tolerances
from .curves import RationalComponent, RationalLink
from .errors import ParseError
from .writhe import SelfLinkingReport

_COORD_KEYS = ("w", "x", "y", "z")


def _coeff_row(value, key, index):
    if not isinstance(value, list) or not value:
        raise ParseError(
            f"component {index}: coordinate {key!r} must be a nonempty list"
        )
    try:
        row = [float(v) for v in value]
    except (TypeError, ValueError):
        raise ParseError(
            f"component {index}: coordinate {key!r} has a non-numeric entry"
        ) from None
    if not all(np.isfinite(row)):
        raise ParseError(
            f"component {index}: coordinate {key!r} has a non-finite entry"
        )
    return row


def component_from_dict(data, index=0) -> RationalComponent:
    if not isinstance(data, dict):
        raise ParseError(f"component {index} must be an object")
    rows = []
    for key in _COORD_KEYS:
        if key not in data:
            raise ParseError(f"component {index} is missing coordinate {key!r}")
        rows.append(_coeff_row(data[key], key, index))
    width = max(len(r) for r in rows)
    mat = np.zeros((4, width))
    for i, row in enumerate(rows):
        mat[i, :len(row)] = row
    if not np.any(mat):
        raise ParseError(f"component {index} is identically zero")
    return RationalComponent(mat)


def link_from_dict(data) -> RationalLink:
    if not isinstance(data, dict) or "components" not in data:
        raise ParseError("curve file must be an object with a components list")
    comps = data["components"]
    if not isinstance(comps, list) or not comps:
        raise ParseError("components must be a nonempty list")
    return RationalLink([component_from_dict(c, i) for i, c in enumerate(comps)])


def load_link(path) -> RationalLink:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    return link_from_dict(data)


def link_to_dict(link: RationalLink, metadata: dict = None) -> dict:
    comps = []
    for comp in link.components:
        mat = comp.coeff_matrix
        comps.append({key: [float(v) for v in mat[i]]
                      for i, key in enumerate(_COORD_KEYS)})
    out = {"components": comps}
    if metadata:
        out["metadata"] = metadata
    return out


def save_link(path, link: RationalLink, metadata: dict = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(link_to_dict(link, metadata), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# reports


def _complex_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def report_to_dict(report: SelfLinkingReport, seed=None,
                   tolerances: Tolerances = None) -> dict:
    per_point = []
    for c in report.contributions:
        p = c.point
        img = np.asarray(p.image)
        if np.iscomplexobj(img):
            image = [_complex_pair(v) for v in img]
        else:
            image = [float(v) for v in img]
        per_point.append({
            "components": [int(p.comp_a), int(p.comp_b)],
            "kind": p.kind,
            "params": [_complex_pair(z) for z in p.params],
            "image": image,
            "residual": float(p.residual),
            "writhe": None if c.writhe is None else int(c.writhe),
            "included": c.included,
        })
    census = report.census
    out = {
        "value": int(report.value),
        "census": {
            "crossings": census["crossings"],
            "solitary": census["solitary"],
            "imaginaryPairs": census["imaginaryPairs"],
        },
        "perPoint": per_point,
        "center": [float(v) for v in report.center],
        "seed": seed,
    }
    if tolerances is not None:
        out["tolerances"] = {k: (float(v) if isinstance(v, float) else v)
                             for k, v in asdict(tolerances).items()}
    return out


def dumps_report(report: SelfLinkingReport, seed=None,
                 tolerances: Tolerances = None) -> str:
    return json.dumps(report_to_dict(report, seed, tolerances),
                      indent=2, sort_keys=True)
