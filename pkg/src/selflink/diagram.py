"""Hand-rolled SVG diagrams of projected links.

The image curve is sampled along the parameter circle, drawn as clipped
polylines in the affine chart of the first plane coordinate, and cut
open around every crossing on the strand that passes below. Solitary
double points get a signed dot: they are honest double points of the
image even though no real strand crosses there. Marker counts always
match the census of the report the diagram was drawn from.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import DEFAULT_TOL, Tolerances
from .curves import RationalLink
from .projection import CROSSING, SOLITARY, build_projection
from .writhe import SelfLinkingReport

_PALETTE = ("#1f6f8b", "#b0413e", "#3e7a3e", "#8450a8", "#a8671e")


def _affine_samples(gmat, n):
    """Affine image points over the half-open angle grid, NaN where invalid."""
    thetas = -np.pi / 2 + (np.arange(n) + 0.5) * (np.pi / n)
    vals = npoly.polyval(np.tan(thetas), gmat.T)  # (3, n)
    out = np.full((n, 2), np.nan)
    norms = np.linalg.norm(vals, axis=0)
    ok = np.abs(vals[0]) > 1e-9 * norms
    out[ok, 0] = vals[1, ok] / vals[0, ok]
    out[ok, 1] = vals[2, ok] / vals[0, ok]
    return thetas, out


def _affine_point(vec3):
    if abs(vec3[0]) <= 1e-9 * np.linalg.norm(vec3):
        return None
    return np.array([vec3[1] / vec3[0], vec3[2] / vec3[0]])


def _image_tangent(gmat, u):
    """Affine velocity of the image curve in the drawing chart."""
    g = npoly.polyval(u, gmat.T)
    dg = npoly.polyval(u, npoly.polyder(gmat.T))
    return (dg[1:] * g[0] - dg[0] * g[1:]) / g[0] ** 2


def _fiber_height(projection, image, point4):
    """Height of a branch point along the fiber over a fixed image lift."""
    p = image / np.linalg.norm(image)
    k = int(np.argmax(np.abs(p)))
    p = p * np.sign(p[k])  # canonical representative
    basis = np.stack([projection.embedding @ p, projection.center], axis=1)
    coef, *_ = np.linalg.lstsq(basis, point4 / np.linalg.norm(point4),
                               rcond=None)
    return coef[1] / coef[0]


def _under_branch(link, projection, point, writhe, gmats):
    """(component, parameter) of the strand that passes below.

    For a same-component crossing the assignment is forced by the
    computed writhe through the tangent-determinant rule, so the drawn
    diagram always reproduces the invariant. A crossing of two
    different components carries no writhe; there the branch with the
    smaller fiber height goes below.
    """
    s, t = (z.real for z in point.params)
    if point.is_self and writhe is not None:
        ts = _image_tangent(gmats[point.comp_a], s)
        tt = _image_tangent(gmats[point.comp_a], t)
        d = ts[0] * tt[1] - ts[1] * tt[0]
        s_over = (1 if d > 0 else -1) == writhe
        return (point.comp_a, t) if s_over else (point.comp_a, s)
    comp_a = link.components[point.comp_a]
    comp_b = link.components[point.comp_b]
    ha = _fiber_height(projection, point.image, comp_a.point(s))
    hb = _fiber_height(projection, point.image, comp_b.point(t))
    if ha >= hb:
        return (point.comp_b, t)
    return (point.comp_a, s)


def _segments(points, keep):
    """Index runs of consecutive kept samples, split at large jumps."""
    runs = []
    current = []
    for i in range(points.shape[0]):
        ok = keep[i] and np.all(np.isfinite(points[i]))
        if ok and current and np.linalg.norm(points[i] - points[current[-1]]) > 1.0:
            runs.append(current)
            current = []
        if ok:
            current.append(i)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return [r for r in runs if len(r) >= 2]


def render_svg(link: RationalLink, report: SelfLinkingReport, *,
               samples: int = 1500, size: int = 640,
               tolerances: Tolerances = DEFAULT_TOL) -> str:
    projection = build_projection(report.center)
    gmats = [projection.project(c.coeff_matrix / c.norm)
             for c in link.components]

    marks = []  # (kind, xy, writhe)
    gaps = []   # (component, under param, over param or None, xy)
    for c in report.contributions:
        xy = _affine_point(c.point.image)
        if xy is None:
            continue
        if c.point.kind == CROSSING:
            comp, param = _under_branch(link, projection, c.point, c.writhe,
                                        gmats)
            other = None
            if c.point.is_self:
                other = next(z.real for z in c.point.params
                             if z.real != param)
            gaps.append((comp, param, other, xy))
            marks.append((CROSSING, xy, c.writhe))
        elif c.point.kind == SOLITARY:
            marks.append((SOLITARY, xy, c.writhe))

    sampled = [_affine_samples(g, samples) for g in gmats]
    finite = np.concatenate([pts[np.all(np.isfinite(pts), axis=1)]
                             for _, pts in sampled])
    anchor = np.array([xy for _, xy, _ in marks]) if marks else finite[:1]
    radius = max(2.0, 1.4 * float(np.max(np.abs(anchor))))
    gap_r = 0.03 * radius

    half = size / 2.0
    scale = (half - 12.0) / radius

    def to_svg(xy):
        return (half + scale * xy[0], half - scale * xy[1])

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]

    for ci, (thetas, pts) in enumerate(sampled):
        clipped = pts / radius
        keep = np.ones(len(thetas), dtype=bool)
        with np.errstate(invalid="ignore"):
            keep &= np.all(np.abs(clipped) <= 1.0, axis=1)
        for comp, under, over, xy in gaps:
            if comp != ci:
                continue
            with np.errstate(invalid="ignore"):
                near = np.linalg.norm(pts - np.asarray(xy), axis=1) < gap_r
            if over is not None:
                # keep the over strand: cut only samples whose parameter
                # is closer to the under branch than to the over branch
                du = np.abs(thetas - np.arctan(under))
                du = np.minimum(du, np.pi - du)
                do = np.abs(thetas - np.arctan(over))
                do = np.minimum(do, np.pi - do)
                near &= du < do
            keep &= ~near
        color = _PALETTE[ci % len(_PALETTE)]
        for run in _segments(clipped, keep):
            coords = " ".join(
                "{:.2f},{:.2f}".format(*to_svg(clipped[i])) for i in run)
            parts.append(
                f'<polyline class="strand c{ci}" points="{coords}" '
                f'fill="none" stroke="{color}" stroke-width="2.2" '
                'stroke-linecap="round"/>')

    for kind, xy, writhe in marks:
        x, y = to_svg(np.asarray(xy) / radius)
        sign = "" if writhe is None else (
            f'<text x="{x + 7:.2f}" y="{y - 6:.2f}" font-size="15" '
            f'font-family="sans-serif" fill="#222">'
            f'{"+" if writhe > 0 else chr(0x2212)}</text>')
        if kind == SOLITARY:
            parts.append(
                f'<g class="solitary-point"><circle cx="{x:.2f}" '
                f'cy="{y:.2f}" r="4.5" fill="#222"/>{sign}</g>')
        else:
            # invisible anchor keeps the marker countable; excluded
            # crossings of two components carry no sign
            parts.append(
                f'<g class="crossing-point"><circle cx="{x:.2f}" '
                f'cy="{y:.2f}" r="7" fill="none" stroke="none"/>'
                f'{sign}</g>')

    census = report.census
    legend = (f'value {report.value}, {census["crossings"]} crossings, '
              f'{census["solitary"]} solitary, '
              f'{census["imaginaryPairs"]} imaginary pairs')
    parts.append(
        f'<text class="legend" x="12" y="{size - 14}" font-size="14" '
        f'font-family="sans-serif" fill="#444">{legend}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def save_svg(path, link: RationalLink, report: SelfLinkingReport,
             **kwargs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(link, report, **kwargs))
