"""Numerical verification of the invariance properties of the total.

The self-linking number should not care which generic center the
projection uses, should transform with the determinant sign under
projective changes of coordinates, should survive the local move that
trades a crossing for a solitary point, and should jump by exactly two
when a deformation path drives the curve through a self-intersection.
Everything here measures one of those statements on concrete families
so the tests can assert them wholesale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .curves import ProjectiveTransform, RationalComponent, RationalLink, validate
from .errors import (
    DegenerateFrame,
    ExhaustedRetries,
    NonGenericCenter,
    UnresolvedEvent,
)
from .writhe import self_linking

_EVENT_WIDTH = 1e-8
_BISECT_FRACS = (0.5, 0.37, 0.63, 0.25, 0.75)


# ---------------------------------------------------------------------------
# center independence


@dataclass(frozen=True)
class TrialRecord:
    center: np.ndarray
    value: int
    census: dict


@dataclass
class IndependenceReport:
    records: tuple

    @property
    def values(self):
        return [r.value for r in self.records]

    @property
    def constant(self) -> bool:
        return len(set(self.values)) == 1

    @property
    def censuses(self):
        return {tuple(sorted(r.census.items())) for r in self.records}


def verify_center_independence(link: RationalLink, trials: int = 10,
                               seed: int = 0, *,
                               tolerances: Tolerances = DEFAULT_TOL
                               ) -> IndependenceReport:
    """Recompute the total from independently sampled generic centers."""
    rng = np.random.default_rng(seed)
    records = []
    for _ in range(trials):
        rep = self_linking(link, rng=rng, tolerances=tolerances)
        records.append(TrialRecord(rep.center, rep.value, rep.census))
    return IndependenceReport(tuple(records))


# ---------------------------------------------------------------------------
# projective equivariance


def random_transform(rng, det_sign: int = None) -> ProjectiveTransform:
    """Haar-ish random orthogonal change of coordinates, det sign on demand."""
    q, r = np.linalg.qr(rng.standard_normal((4, 4)))
    q = q * np.sign(np.diag(r))
    if det_sign is not None and np.linalg.det(q) * det_sign < 0:
        q = q.copy()
        q[:, 0] = -q[:, 0]
    return ProjectiveTransform(q)


@dataclass(frozen=True)
class EquivarianceRecord:
    det_sign: int
    base_value: int
    moved_value: int

    @property
    def ok(self) -> bool:
        return self.moved_value == self.det_sign * self.base_value


def verify_transform_equivariance(link: RationalLink, n_transforms: int = 10,
                                  seed: int = 0, *,
                                  tolerances: Tolerances = DEFAULT_TOL):
    """Push the link through random coordinate changes of both signs.

    Orientation-preserving transforms must keep the total, reversing
    ones must negate it; the alternating det signs guarantee both kinds
    appear in every run.
    """
    rng = np.random.default_rng(seed)
    base = self_linking(link, rng=rng, tolerances=tolerances).value
    out = []
    for k in range(n_transforms):
        t = random_transform(rng, det_sign=1 if k % 2 == 0 else -1)
        moved = link.transformed(t.matrix)
        value = self_linking(moved, rng=rng, tolerances=tolerances).value
        out.append(EquivarianceRecord(t.det_sign, base, value))
    return out


# ---------------------------------------------------------------------------
# the crossing <-> solitary trade move


MOVE1_CENTER = np.array([0.0, 0.0, 0.0, 1.0])


def move1_component(t: float, epsilon: float = 0.1) -> RationalComponent:
    """Cubic family trading a crossing for a solitary point at t = 0.

    The curve (1 : t - u^2 : u(t - u^2) : epsilon u) projected from the
    last coordinate direction has exactly one double point, at the
    parameters u with u^2 = t: a real crossing for positive t, a
    solitary point for negative t. The family is the local model of the
    move, lifted off the plane by a small last coordinate so the space
    curve stays embedded throughout.
    """
    rows = np.array([
        [1.0, 0.0, 0.0, 0.0],
        [t, 0.0, -1.0, 0.0],
        [0.0, t, 0.0, -1.0],
        [0.0, epsilon, 0.0, 0.0],
    ])
    return RationalComponent(rows)


def move1_link(t: float, epsilon: float = 0.1) -> RationalLink:
    return RationalLink([move1_component(t, epsilon)])


@dataclass(frozen=True)
class Move1Report:
    value_pos: int
    value_neg: int
    kinds_pos: tuple
    kinds_neg: tuple

    @property
    def ok(self) -> bool:
        return self.value_pos == self.value_neg and \
            self.kinds_pos == ("crossing",) and self.kinds_neg == ("solitary",)


def move1_family_check(t_pos: float = 1.0, t_neg: float = -1.0, *,
                       epsilon: float = 0.1,
                       tolerances: Tolerances = DEFAULT_TOL) -> Move1Report:
    """Values and double-point kinds on both sides of the move."""
    sides = []
    for t in (t_pos, t_neg):
        rep = self_linking(move1_link(t, epsilon), MOVE1_CENTER,
                           tolerances=tolerances)
        kinds = tuple(c.point.kind for c in rep.contributions)
        sides.append((rep.value, kinds))
    return Move1Report(sides[0][0], sides[1][0], sides[0][1], sides[1][1])


def move1_refuses(t: float, *, epsilon: float = 0.1,
                  tolerances: Tolerances = DEFAULT_TOL) -> bool:
    """Whether the pipeline refuses the family this close to the wall."""
    try:
        self_linking(move1_link(t, epsilon), MOVE1_CENTER,
                     tolerances=tolerances)
    except (NonGenericCenter, DegenerateFrame):
        return True
    return False


# ---------------------------------------------------------------------------
# scanning a deformation path for wall jumps


def random_link(rng, degree: int, attempts: int = 32) -> RationalLink:
    """Random embedded curve of the given degree, for path waypoints.

    A straight interpolation between a curve and its own mirror image
    degenerates halfway, so scans route through a generic intermediate
    curve instead; a random draw is embedded with high probability and
    is redrawn until validation passes.
    """
    for _ in range(attempts):
        link = RationalLink([RationalComponent(
            rng.standard_normal((4, degree + 1)))])
        if validate(link).ok:
            return link
    raise ExhaustedRetries("no embedded random curve found")


def interpolate(a: RationalLink, b: RationalLink, tau: float) -> RationalLink:
    """Componentwise straight-line interpolation of coefficient matrices."""
    if len(a.components) != len(b.components):
        raise ValueError("links must have the same number of components")
    comps = []
    for ca, cb in zip(a.components, b.components):
        wa, wb = ca.coeff_matrix, cb.coeff_matrix
        width = max(wa.shape[1], wb.shape[1])
        pa = np.zeros((4, width))
        pb = np.zeros((4, width))
        pa[:, :wa.shape[1]] = wa
        pb[:, :wb.shape[1]] = wb
        comps.append(RationalComponent((1.0 - tau) * pa + tau * pb))
    return RationalLink(comps)


@dataclass(frozen=True)
class JumpEvent:
    param: float       # path parameter of the wall, located to 1e-8
    delta: int         # value to the right minus value to the left
    pair_kind: str     # "real", "conjugate", or "unlocated"
    pair: tuple        # near-incident curve parameters at the wall


@dataclass
class ScanReport:
    params: list
    values: list       # None where the path curve was invalid or refused
    events: list
    waypoints: int

    @property
    def jump_sum(self) -> int:
        return sum(e.delta for e in self.events)


def _wall_pair(link: RationalLink, tolerances: Tolerances):
    """Recover the nearly incident parameter pair of an on-wall curve."""
    report = validate(link, tolerances=tolerances)
    pairs = [(s, t) for ci, cj, s, t in report.double_points if ci == cj]
    if not pairs:
        pairs = [(s, t) for _, _, s, t in report.double_points]
    if not pairs:
        return "unlocated", ()
    s, t = pairs[0]
    real = (abs(complex(s).imag) <= 1e-6 * (1 + abs(s))
            and abs(complex(t).imag) <= 1e-6 * (1 + abs(t)))
    return ("real" if real else "conjugate"), (complex(s), complex(t))


class _PathSampler:
    """Evaluates the invariant along a piecewise-linear path of links."""

    def __init__(self, waypoints, seed, tolerances):
        self.legs = list(zip(waypoints[:-1], waypoints[1:]))
        self.seed = seed
        self.tolerances = tolerances
        self.calls = 0

    def link_at(self, tau: float) -> RationalLink:
        pos = min(max(tau, 0.0), 1.0) * len(self.legs)
        i = min(int(pos), len(self.legs) - 1)
        return interpolate(self.legs[i][0], self.legs[i][1], pos - i)

    def value_at(self, tau: float):
        link = self.link_at(tau)
        if not validate(link, tolerances=self.tolerances).ok:
            return None
        self.calls += 1
        rng = np.random.default_rng([self.seed, self.calls])
        try:
            return self_linking(link, rng=rng, tolerances=self.tolerances).value
        except (ExhaustedRetries, NonGenericCenter, DegenerateFrame):
            return None


def jump_scan(start: RationalLink, end: RationalLink, n_steps: int = 30,
              seed: int = 0, via=(), *,
              tolerances: Tolerances = DEFAULT_TOL) -> ScanReport:
    """Locate and measure every jump of the invariant along a path.

    The path runs through the optional waypoints with a straight
    coefficient interpolation on each leg. Jumps between neighboring
    samples are bisected to width 1e-8; midpoints landing on invalid or
    refused curves are replaced by off-center fallbacks, and an interval
    none of the fallbacks resolve is recorded as an unlocated event of
    the full observed jump rather than raised.
    """
    waypoints = [start, *via, end]
    sampler = _PathSampler(waypoints, seed, tolerances)

    params = [j / n_steps for j in range(n_steps + 1)]
    values = [sampler.value_at(tau) for tau in params]

    anchors = [(tau, v) for tau, v in zip(params, values) if v is not None]
    if not anchors or anchors[0][0] != 0.0 or anchors[-1][0] != 1.0:
        raise UnresolvedEvent("path endpoints could not be evaluated")

    events = []

    def bisect(ta, va, tb, vb):
        if tb - ta <= _EVENT_WIDTH:
            kind, pair = _wall_pair(sampler.link_at(0.5 * (ta + tb)),
                                    tolerances)
            events.append(JumpEvent(0.5 * (ta + tb), vb - va, kind, pair))
            return
        for frac in _BISECT_FRACS:
            tm = ta + frac * (tb - ta)
            vm = sampler.value_at(tm)
            if vm is not None:
                break
        else:
            # every fallback landed on an invalid curve: the whole
            # remaining interval sits inside the wall's failure window
            mid = 0.5 * (ta + tb)
            kind, pair = _wall_pair(sampler.link_at(mid), tolerances)
            events.append(JumpEvent(mid, vb - va, kind, pair))
            return
        if vm != va:
            bisect(ta, va, tm, vm)
        if vm != vb:
            bisect(tm, vm, tb, vb)

    for (ta, va), (tb, vb) in zip(anchors[:-1], anchors[1:]):
        if va != vb:
            bisect(ta, va, tb, vb)

    events.sort(key=lambda e: e.param)
    return ScanReport(params, values, events, len(waypoints))
