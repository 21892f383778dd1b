"""Local writhes of projected double points and their invariant total.

The self-linking number of a nonsingular rational link is read off one
generic plane projection: each same-component crossing of the image
contributes the orientation of a 3-frame built inside an affine chart,
each solitary double point (a real image point carried by two conjugate
complex branches) contributes the orientation of a frame built from the
complex branch through the upper fiber height, and everything else --
crossings joining two different components, and double points with no
real image -- contributes nothing. The total does not depend on the
center, which the verification harness checks numerically.

All determinants are computed in functional charts and multiplied by the
chart's orientation sign, so every internal choice of chart drops out;
the tests exercise that independence directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .charts import (
    FunctionalChart,
    embed_real,
    householder_basis,
    pivot_chart,
    realify,
)
from .config import DEFAULT_TOL, Tolerances
from .curves import (
    RationalComponent,
    RationalLink,
    mobius_parameter_map,
    reparametrize,
    rotation_mobius,
)
from .errors import DegenerateFrame
from .projection import (
    CROSSING,
    SOLITARY,
    PlaneProjection,
    ProjectionAnalysis,
    _phase_normalize,
    analyze_projection,
    generic_analysis,
)

# beyond this, evaluations at the raw parameter lose too many digits and
# the point is recomputed on a rotated copy of the parameter line
_PARAM_BOUND = 1e3
_ROTATION = 0.9


def _sign(x) -> int:
    return 1 if x > 0 else -1


def _guarded_det(rows, tolerances: Tolerances, what: str) -> float:
    m = np.vstack(rows)
    d = float(np.linalg.det(m))
    scale = float(np.prod([np.linalg.norm(r) for r in rows]))
    if abs(d) <= tolerances.det_guard * scale:
        raise DegenerateFrame(f"{what} frame is numerically degenerate")
    return d


def _segment_functionals(a, b, center, segment):
    """Candidate chart functionals for the two fiber-segment conventions.

    The fiber of the image point is a projective line through a, b and
    the center. A functional vanishing on the center cuts the line at
    the center itself, so its affine chart shows exactly the a-to-b arc
    avoiding the center; a functional vanishing on a + b (or a - b)
    shows the complementary kind of arc instead.
    """
    cands = []
    if segment == "avoid":
        for q in (a + b, a - b, a, b):
            u = q - (q @ center) * center
            n = np.linalg.norm(u)
            if n > 1e-8:
                cands.append(u / n)
        cands.extend(householder_basis(center))
    elif segment == "through":
        for q in (a + b, a - b):
            qh = q / np.linalg.norm(q)
            u = center - (center @ qh) * qh
            n = np.linalg.norm(u)
            if n > 1e-8:
                cands.append(u / n)
    else:
        raise ValueError(f"unknown segment convention {segment!r}")
    return cands


def crossing_writhe(component: RationalComponent, projection: PlaneProjection,
                    s: float, t: float, *, segment: str = "avoid",
                    chart_index: int = 0,
                    tolerances: Tolerances = DEFAULT_TOL) -> int:
    """Local writhe of a self-crossing with real branch parameters s, t.

    Works in an affine chart containing both branch points and one full
    segment of the fiber line, and returns the orientation of the frame
    (velocity at s, segment direction, velocity at t) corrected by the
    chart's own orientation sign. segment and chart_index select among
    equivalent internal choices; every selection returns the same value.
    """
    c = projection.center
    a = np.asarray(component.point(s), dtype=float)
    b = np.asarray(component.point(t), dtype=float)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)

    chosen = None
    remaining = chart_index
    for u in _segment_functionals(a, b, c, segment):
        chart = FunctionalChart(u, householder_basis(u))
        if chart.contains(a, 1e-8) and chart.contains(b, 1e-8):
            if remaining == 0:
                chosen = chart
                break
            remaining -= 1
    if chosen is None:
        raise DegenerateFrame("no usable chart for the crossing frame")

    va = chosen.velocity(a, np.asarray(component.velocity(s), dtype=float))
    vb = chosen.velocity(b, np.asarray(component.velocity(t), dtype=float))
    seg = chosen.affine(b) - chosen.affine(a)
    n = np.linalg.norm(seg)
    if n <= 1e-12:
        raise DegenerateFrame("branch points coincide in the chart")
    vb_perp = vb - (vb @ seg / n**2) * seg  # row operation, same determinant
    d = _guarded_det([va, seg, vb_perp], tolerances, "crossing")
    return chosen.sign * _sign(d)


def solitary_writhe(component: RationalComponent, projection: PlaneProjection,
                    tau: complex, *, space_chart: FunctionalChart = None,
                    plane_chart: FunctionalChart = None,
                    tolerances: Tolerances = DEFAULT_TOL) -> int:
    """Local writhe of a solitary double point with branch parameter tau.

    The image point is real but both branches through it are complex
    conjugates. The construction works with the branch whose fiber
    height has positive imaginary part, orients the real projection
    plane by comparing against the complex orientation of that branch's
    realified tangent, pushes the resulting plane frame into space, and
    reads its orientation against the direction of increasing fiber
    height. Optional chart overrides exist for the independence tests;
    any chart containing the relevant point gives the same answer.
    """
    tau = complex(tau)
    if tau.imag < 0:
        tau = np.conj(tau)
    g = projection.project(component.coeff_matrix / component.norm)
    z = npoly.polyval(tau, g.T)
    p, defect = _phase_normalize(z)
    if defect > tolerances.phase_imag:
        raise DegenerateFrame(
            f"image of the conjugate pair is not real (defect {defect:.2e})"
        )
    p = p / np.linalg.norm(p)
    x4 = projection.embedding @ p
    c4 = projection.center

    # fiber height of the branch: f(tau) = alpha x4 + gamma c4 over C
    fval = np.asarray(component.point(tau), dtype=complex)
    fval = fval / np.max(np.abs(fval))
    basis = np.stack([x4, c4], axis=1).astype(complex)
    coef, *_ = np.linalg.lstsq(basis, fval, rcond=None)
    alpha, gamma = coef
    if np.linalg.norm(basis @ coef - fval) > 1e-6:
        raise DegenerateFrame("branch point does not sit on the fiber")
    if abs(alpha) <= 1e-12:
        raise DegenerateFrame("branch point projects onto the center")
    lam = gamma / alpha
    if abs(lam.imag) <= 1e-9 * (1 + abs(lam)):
        raise DegenerateFrame("fiber height of the branch is real")
    if lam.imag < 0:
        tau = np.conj(tau)

    space = pivot_chart(x4) if space_chart is None else space_chart
    if not space.contains(x4, 1e-8):
        raise DegenerateFrame("space chart does not contain the image lift")
    fiber_dir = space.velocity(x4, c4)

    plane = pivot_chart(p) if plane_chart is None else plane_chart
    if not plane.contains(p, 1e-8):
        raise DegenerateFrame("plane chart does not contain the image point")
    zt = npoly.polyval(tau, g.T)
    dzt = npoly.polyval(tau, npoly.polyder(g, axis=1).T)
    uhat = plane.velocity(zt, dzt)  # complex branch tangent in the chart

    u1 = realify(uhat)
    u2 = realify(1j * uhat)
    o1 = np.array([1.0, 0.0])
    o2 = np.array([0.0, 1.0])
    d4 = _guarded_det([embed_real(o1), embed_real(o2), u1, u2],
                      tolerances, "solitary orientation")
    if d4 < 0:
        o1, o2 = o2, o1

    push = [space.velocity(x4, projection.embedding @ plane.lift(o))
            for o in (o1, o2)]
    d = _guarded_det([push[0], push[1], fiber_dir], tolerances, "solitary")
    return space.sign * _sign(d)


# ---------------------------------------------------------------------------
# assembling the invariant


@dataclass(frozen=True)
class PointContribution:
    point: object          # the classified double point
    writhe: int | None     # None exactly when the point is excluded
    included: bool


@dataclass
class SelfLinkingReport:
    value: int
    center: np.ndarray
    contributions: tuple

    @property
    def census(self):
        out = {"crossings": 0, "solitary": 0, "imaginaryPairs": 0}
        for c in self.contributions:
            if c.point.kind == CROSSING:
                out["crossings"] += 1
            elif c.point.kind == SOLITARY:
                out["solitary"] += 1
            else:
                out["imaginaryPairs"] += 1
        return out

    @property
    def excluded(self):
        return [c for c in self.contributions if not c.included]


def _point_writhe(link: RationalLink, projection: PlaneProjection, point,
                  tolerances: Tolerances) -> int:
    """Local writhe of one included double point, rotation-guarded.

    A parameter far out on the parameter line is recomputed on a rotated
    copy of the component; the rotation preserves orientation, so the
    writhe is unchanged while the evaluations stay well conditioned.
    """
    comp = link.components[point.comp_a]
    params = point.params
    if max(abs(params[0]), abs(params[1])) > _PARAM_BOUND:
        mob = rotation_mobius(_ROTATION)
        back = mobius_parameter_map(rotation_mobius(-_ROTATION))
        comp = reparametrize(comp, mob)
        params = tuple(back(z) for z in params)
    if point.kind == CROSSING:
        return crossing_writhe(comp, projection, params[0].real, params[1].real,
                               tolerances=tolerances)
    return solitary_writhe(comp, projection, params[0], tolerances=tolerances)


def self_linking(link: RationalLink, center=None, *, rng=None,
                 analysis: ProjectionAnalysis = None,
                 tolerances: Tolerances = DEFAULT_TOL) -> SelfLinkingReport:
    """Self-linking number of a validated link from one generic projection.

    Included contributions are the same-component crossings and all
    solitary points; crossings joining two components and double points
    without a real image are recorded but contribute nothing. Pass a
    center, a prepared analysis, or an rng to sample a generic center.
    """
    if analysis is None:
        if center is not None:
            analysis = analyze_projection(link, center, tolerances=tolerances)
        elif rng is not None:
            analysis = generic_analysis(rng, link, tolerances=tolerances)
        else:
            raise ValueError("need a center, an analysis, or an rng")

    contributions = []
    total = 0
    for point in analysis.points:
        included = (point.kind == CROSSING and point.is_self) or \
            point.kind == SOLITARY
        if included:
            w = _point_writhe(link, analysis.projection, point, tolerances)
            total += w
            contributions.append(PointContribution(point, w, True))
        else:
            contributions.append(PointContribution(point, None, False))
    return SelfLinkingReport(total, analysis.projection.center.copy(),
                             tuple(contributions))
