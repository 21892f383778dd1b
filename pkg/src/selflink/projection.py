"""Plane projections of space curves and their double points.

A projection is determined by its real center: a 3x4 matrix M with the
center spanning its kernel sends the curve to a plane curve g = M f, and
a 4x3 right inverse E embeds the projection plane back into projective
3-space (the plane never meets the center). Double points of the
complexified image are parameter pairs (s, t) with g(s) parallel to
g(t); they are found by eliminating the antisymmetric incidence system
built from the cross product g(s) x g(t), and classified by the reality
pattern of the pair:

 - both parameters real: an honest crossing of two real branches;
 - conjugate parameters: a solitary real point of the image, the two
   branches through it imaginary;
 - anything else: an imaginary double point, occurring in conjugate
   pairs within the full list.

Everything is solved in an affine parameter after a deterministic
rotation of the parameter circle, retried with different rotations when
a double point lands too close to the rotated infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import DEFAULT_TOL, Tolerances
from .curves import (
    RationalLink,
    _common_complex_roots,
    _substitute_mobius,
    mobius_parameter_map,
    rotation_mobius,
)
from .errors import ExhaustedRetries, NonGenericCenter
from .polynomials import BivariatePolynomial, divide_out_diagonal, common_zeros

CROSSING = "crossing"
SOLITARY = "solitary"
IMAGINARY_PAIR = "imaginary_pair"

_SOLVE_ANGLES = (0.0, 0.83521, 2.10974)  # parameter rotations tried in order


@dataclass(frozen=True)
class PlaneProjection:
    """Projection from a real center onto an embedded plane."""

    center: np.ndarray   # unit 4-vector spanning ker(matrix)
    matrix: np.ndarray   # (3, 4), rank 3
    embedding: np.ndarray  # (4, 3) with matrix @ embedding = identity

    def project(self, coeff_matrix) -> np.ndarray:
        """Coefficient rows of the projected curve."""
        return self.matrix @ np.asarray(coeff_matrix)


def projection_matrix(center):
    """Deterministic (M, E) for a center: M c = 0 and M E = I exactly.

    Pivot on the largest center coordinate k: the rows of M are
    e_i - (c_i / c_k) e_k for the other three indices in order, and E
    selects those three coordinates. The products in M E hit only exact
    zeros and ones, so the identity holds without rounding, and E's image
    is the plane x_k = 0, which misses the center.
    """
    c = np.asarray(center, dtype=float)
    if c.shape != (4,) or np.linalg.norm(c) == 0.0:
        raise ValueError("center must be a nonzero 4-vector")
    c = c / np.linalg.norm(c)
    k = int(np.argmax(np.abs(c)))
    others = [i for i in range(4) if i != k]
    m = np.zeros((3, 4))
    e = np.zeros((4, 3))
    for r, i in enumerate(others):
        m[r, i] = 1.0
        m[r, k] = -c[i] / c[k]
        e[i, r] = 1.0
    return m, e


def build_projection(center) -> PlaneProjection:
    m, e = projection_matrix(center)
    c = np.asarray(center, dtype=float)
    c = c / np.linalg.norm(c)
    return PlaneProjection(c, m, e)


@dataclass(frozen=True)
class DoublePoint:
    comp_a: int
    comp_b: int
    params: tuple          # (tau1, tau2), canonically ordered
    kind: str
    image: np.ndarray      # homogeneous plane 3-vector (real for crossings/solitary)
    residual: float

    @property
    def is_self(self) -> bool:
        return self.comp_a == self.comp_b


def _phase_normalize(z):
    """Rotate a complex 3-vector by a unit scalar to make it (nearly) real.

    Returns (real vector, achieved imaginary norm / vector norm).
    """
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    g = np.array([[y @ y, -(x @ y)], [-(x @ y), x @ x]])
    vals, vecs = np.linalg.eigh(g)
    ct, st = vecs[:, 0]
    mu = complex(ct, -st)  # e^{-i theta}
    w = mu * z
    scale = np.linalg.norm(z) + 1e-300
    defect = np.linalg.norm(w.imag) / scale
    return w.real.copy(), defect


def _classify_self(pair, g, tolerances):
    s, t = pair
    snap = tolerances.real_snap
    real_s = abs(s.imag) <= snap * (1 + abs(s))
    real_t = abs(t.imag) <= snap * (1 + abs(t))
    if real_s and real_t:
        a, b = sorted((s.real, t.real))
        return (complex(a), complex(b)), CROSSING, npoly.polyval(a, g.T).real
    if abs(t - np.conj(s)) <= tolerances.conj_pair * (1 + abs(s)):
        tau = s if s.imag > 0 else t
        return (tau, np.conj(tau)), SOLITARY, None
    ordered = tuple(sorted((s, t), key=lambda z: (z.real, z.imag)))
    return ordered, IMAGINARY_PAIR, None


def _dedupe_unordered(pairs, tol):
    out = []
    for s, t, res in pairs:
        hit = False
        for entry in out:
            u, v, res2 = entry
            same = (
                abs(s - u) <= tol * (1 + abs(s)) and abs(t - v) <= tol * (1 + abs(t))
            ) or (
                abs(s - v) <= tol * (1 + abs(s)) and abs(t - u) <= tol * (1 + abs(t))
            )
            if same:
                entry[2] = min(res2, res)
                hit = True
                break
        if not hit:
            out.append([s, t, res])
    return out


def _cross_minor_polys(ga, gb):
    mats = []
    for i, j in combinations(range(3), 2):
        mats.append(np.outer(ga[i], gb[j]) - np.outer(ga[j], gb[i]))
    return mats


def _solve_attempt_self(g, tolerances):
    """Unordered parameter pairs (s, t, residual) for one rotated copy."""
    mats = _cross_minor_polys(g, g)
    hs = []
    for m in mats:
        if np.max(np.abs(m)) <= 1e-12:
            continue
        hs.append(divide_out_diagonal(BivariatePolynomial(m), tolerances=tolerances))
    sol = common_zeros(hs, tolerances=tolerances,
                       residual_tol=tolerances.h_residual)
    if sol.degenerate:
        raise NonGenericCenter("incidence system is positive-dimensional")
    near_diag = [z for z in sol.zeros
                 if abs(z[0] - z[1]) <= tolerances.collision * (1 + abs(z[0]))]
    if near_diag:
        raise NonGenericCenter("double point collapsing onto the diagonal")
    return _dedupe_unordered(sol.zeros, tolerances.collision)


def _solve_attempt_cross(ga, gb, tolerances):
    mats = [m for m in _cross_minor_polys(ga, gb) if np.max(np.abs(m)) > 1e-12]
    polys = [BivariatePolynomial(m) for m in mats]
    if len(polys) < 2:
        raise NonGenericCenter("cross incidence system collapsed")
    sol = common_zeros(polys, tolerances=tolerances,
                       residual_tol=tolerances.h_residual)
    if sol.degenerate:
        raise NonGenericCenter("cross incidence is positive-dimensional")
    merged = []
    for s, t, res in sol.zeros:  # ordered pairs here: s on A, t on B
        hit = False
        for entry in merged:
            if abs(s - entry[0]) <= tolerances.collision * (1 + abs(s)) and \
               abs(t - entry[1]) <= tolerances.collision * (1 + abs(t)):
                entry[2] = min(entry[2], res)
                hit = True
                break
        if not hit:
            merged.append([s, t, res])
    return merged


def _params_back(pairs, mobius, bound=1e9):
    fwd = mobius_parameter_map(mobius)
    out = []
    for s, t, res in pairs:
        s0, t0 = fwd(s), fwd(t)
        if not (np.isfinite(s0) and np.isfinite(t0)):
            return None
        if max(abs(s0), abs(t0)) > bound:
            return None
        out.append((complex(s0), complex(t0), float(res)))
    return out


def _rotated(gmat, theta):
    deg = gmat.shape[1] - 1
    return _substitute_mobius(gmat, rotation_mobius(theta), deg)


def double_points_self(g, comp_index: int = 0, *,
                       tolerances: Tolerances = DEFAULT_TOL):
    """All double points of one projected component.

    g: (3, d+1) coefficient rows of the plane curve. Returns exactly
    (d-1)(d-2)/2 classified points for a generic projection; raises
    NonGenericCenter when the count cannot be realized.
    """
    g = np.asarray(g, dtype=float)
    d = g.shape[1] - 1
    expected = (d - 1) * (d - 2) // 2
    if d < 3 or expected == 0:
        return []
    failure = None
    for theta in _SOLVE_ANGLES:
        try:
            pairs = _solve_attempt_self(_rotated(g, theta), tolerances)
        except NonGenericCenter as err:
            failure = err
            continue
        pairs = _params_back(pairs, rotation_mobius(theta))
        if pairs is None:
            failure = NonGenericCenter("double point at parameter infinity")
            continue
        if len(pairs) != expected:
            failure = NonGenericCenter(
                f"found {len(pairs)} double points, expected {expected}"
            )
            continue
        return _classified_points(pairs, g, comp_index, comp_index, tolerances)
    raise failure if failure is not None else NonGenericCenter("no solver attempt ran")


def double_points_cross(ga, gb, index_a: int, index_b: int, *,
                        tolerances: Tolerances = DEFAULT_TOL):
    """Double points joining two distinct projected components."""
    ga = np.asarray(ga, dtype=float)
    gb = np.asarray(gb, dtype=float)
    expected = (ga.shape[1] - 1) * (gb.shape[1] - 1)
    failure = None
    for theta in _SOLVE_ANGLES:
        try:
            pairs = _solve_attempt_cross(_rotated(ga, theta), _rotated(gb, theta),
                                         tolerances)
        except NonGenericCenter as err:
            failure = err
            continue
        pairs = _params_back(pairs, rotation_mobius(theta))
        if pairs is None:
            failure = NonGenericCenter("double point at parameter infinity")
            continue
        if len(pairs) != expected:
            failure = NonGenericCenter(
                f"found {len(pairs)} cross double points, expected {expected}"
            )
            continue
        return _classified_points(pairs, ga, index_a, index_b, tolerances,
                                  cross=True)
    raise failure if failure is not None else NonGenericCenter("no solver attempt ran")


def _classified_points(pairs, g, ia, ib, tolerances, cross=False):
    points = []
    for s, t, res in pairs:
        if cross:
            snap = tolerances.real_snap
            if abs(s.imag) <= snap * (1 + abs(s)) and abs(t.imag) <= snap * (1 + abs(t)):
                params = (complex(s.real), complex(t.real))
                kind = CROSSING
                image = npoly.polyval(params[0].real, g.T).real
            else:
                params, kind, image = (s, t), IMAGINARY_PAIR, None
        else:
            params, kind, image = _classify_self((s, t), g, tolerances)
        if kind == SOLITARY:
            z = npoly.polyval(params[0], g.T)
            image, defect = _phase_normalize(z)
            if defect > tolerances.phase_imag:
                raise NonGenericCenter(
                    f"conjugate-pair image not real (defect {defect:.2e})"
                )
        elif image is None:
            image = npoly.polyval(params[0], g.T)
        points.append(DoublePoint(ia, ib, params, kind, image, res))
    points.sort(key=lambda p: (p.params[0].real, p.params[0].imag,
                               p.params[1].real, p.params[1].imag))
    return points


# ---------------------------------------------------------------------------
# genericity


@dataclass
class GenericityVerdict:
    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, message):
        self.ok = False
        self.failures.append(message)


def _image_tangent_line(g, dg, tau):
    """Dual coordinates of the image's tangent line at parameter tau."""
    p = npoly.polyval(tau, g.T)
    v = npoly.polyval(tau, dg.T)
    return np.cross(p, v)


def _cusp_params(g, tol):
    """Complex parameters where the image tangent degenerates.

    The cross product of g with its derivative has degree at most
    2 deg(g) - 2 in each component (the leading terms cancel exactly), so
    the rows are homogenized to precisely that bound; vanishing of every
    bound-degree coefficient then correctly encodes a degenerate tangent
    at the parameter at infinity instead of forcing a fake shared root
    there.
    """
    dg = npoly.polyder(g, axis=1)
    rows = [
        np.convolve(g[1], dg[2]) - np.convolve(g[2], dg[1]),
        np.convolve(g[2], dg[0]) - np.convolve(g[0], dg[2]),
        np.convolve(g[0], dg[1]) - np.convolve(g[1], dg[0]),
    ]
    width = max(2 * (g.shape[1] - 1) - 1, 1)
    mat = np.zeros((3, width))
    for i, r in enumerate(rows):
        n = min(r.size, width)
        mat[i, :n] = r[:n]
    found = []
    for mobius in (np.eye(2), np.array([[1.0, 1.0], [-1.0, 1.0]])):
        moved = _substitute_mobius(mat, mobius, width - 1)
        hit = _common_complex_roots(list(moved), tol)
        if hit is None:
            return None  # tangent degenerates identically
        back = mobius_parameter_map(mobius)
        for z in hit:
            w = back(z)
            if not any(abs(w - u) <= 1e-6 * (1 + abs(w)) for u in found):
                found.append(w)
    return found


def genericity_check(projected, points, *,
                     tolerances: Tolerances = DEFAULT_TOL) -> GenericityVerdict:
    """Certify the projection hypotheses the writhe computation needs.

    projected: list of (3, d+1) plane-curve matrices, one per component.
    points: the full classified double-point list for all component pairs.
    """
    verdict = GenericityVerdict()

    for ci, g in enumerate(projected):
        cusps = _cusp_params(g, tolerances.validate_residual)
        if cusps is None:
            verdict.fail(f"component {ci}: image velocity vanishes identically")
        else:
            for z in cusps:
                verdict.fail(f"component {ci}: image cusp at parameter {z}")

    # triple point: one parameter on one component participating in two
    # incidences whose images agree
    events = []
    for p in points:
        events.append((p.comp_a, p.params[0], p))
        events.append((p.comp_b, p.params[1], p))
    for (c1, t1, p1), (c2, t2, p2) in combinations(events, 2):
        if p1 is p2 or c1 != c2:
            continue
        if abs(t1 - t2) <= tolerances.collision * (1 + abs(t1)):
            im1, im2 = np.asarray(p1.image), np.asarray(p2.image)
            crossmag = np.linalg.norm(np.cross(im1, im2))
            if crossmag <= tolerances.image_separation * (
                np.linalg.norm(im1) * np.linalg.norm(im2) + 1e-300
            ):
                verdict.fail(
                    f"triple point: parameter {t1} of component {c1} "
                    "meets two coincident incidences"
                )

    derivs = [npoly.polyder(g, axis=1) for g in projected]
    for p in points:
        la = _image_tangent_line(projected[p.comp_a], derivs[p.comp_a], p.params[0])
        lb = _image_tangent_line(projected[p.comp_b], derivs[p.comp_b], p.params[1])
        denom = np.linalg.norm(la) * np.linalg.norm(lb) + 1e-300
        sine = np.linalg.norm(np.cross(la, lb)) / denom
        if sine <= tolerances.tangent_sine:
            verdict.fail(
                f"tangent branches at double point {p.params}: relative sine {sine:.2e}"
            )

    counts = {}
    for p in points:
        key = (p.comp_a, p.comp_b)
        counts[key] = counts.get(key, 0) + 1
    for ci, g in enumerate(projected):
        d = g.shape[1] - 1
        expected = (d - 1) * (d - 2) // 2 if d >= 3 else 0
        if counts.get((ci, ci), 0) != expected:
            verdict.fail(
                f"component {ci}: {counts.get((ci, ci), 0)} self double points, "
                f"expected {expected}"
            )
    for ia, ib in combinations(range(len(projected)), 2):
        expected = (projected[ia].shape[1] - 1) * (projected[ib].shape[1] - 1)
        if counts.get((ia, ib), 0) != expected:
            verdict.fail(
                f"components {ia},{ib}: {counts.get((ia, ib), 0)} cross points, "
                f"expected {expected}"
            )

    for p in points:
        want = tuple(sorted((np.conj(p.params[0]), np.conj(p.params[1])),
                            key=lambda z: (z.real, z.imag)))
        ok = False
        for q in points:
            if q.comp_a != p.comp_a or q.comp_b != p.comp_b or q.kind != p.kind:
                continue
            have = tuple(sorted(q.params, key=lambda z: (z.real, z.imag)))
            if all(abs(a - b) <= 1e-6 * (1 + abs(a)) for a, b in zip(want, have)):
                ok = True
                break
        if not ok:
            verdict.fail(f"double point {p.params} lacks its conjugate partner")

    return verdict


# ---------------------------------------------------------------------------
# full-projection analysis and center sampling


@dataclass
class ProjectionAnalysis:
    projection: PlaneProjection
    projected: list   # (3, d+1) arrays per component
    points: list      # DoublePoint for every component pair
    genericity: GenericityVerdict


def analyze_projection(link: RationalLink, center, *,
                       tolerances: Tolerances = DEFAULT_TOL) -> ProjectionAnalysis:
    """Project, solve, classify, and certify one center; raises on failure."""
    proj = build_projection(center)
    projected = []
    for ci, comp in enumerate(link.components):
        g = proj.project(comp.coeff_matrix / comp.norm)
        keep = np.nonzero(np.any(np.abs(g) > 1e-12, axis=0))[0]
        if keep.size == 0 or keep[-1] != comp.degree:
            raise NonGenericCenter(
                f"projection drops the degree of component {ci}"
            )
        hit = _common_complex_roots(list(g), tolerances.validate_residual)
        if hit:
            raise NonGenericCenter(
                f"center lies on component {ci} (parameter {hit[0]})"
            )
        projected.append(g)

    points = []
    for ci, g in enumerate(projected):
        points.extend(double_points_self(g, ci, tolerances=tolerances))
    for ia, ib in combinations(range(len(projected)), 2):
        points.extend(double_points_cross(projected[ia], projected[ib], ia, ib,
                                          tolerances=tolerances))

    verdict = genericity_check(projected, points, tolerances=tolerances)
    if not verdict.ok:
        raise NonGenericCenter("; ".join(verdict.failures))
    return ProjectionAnalysis(proj, projected, points, verdict)


def random_center(rng, link: RationalLink, *,
                  tolerances: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """A uniformly sampled center whose projection passes every check."""
    return generic_analysis(rng, link, tolerances=tolerances).projection.center


def generic_analysis(rng, link: RationalLink, *,
                     tolerances: Tolerances = DEFAULT_TOL) -> ProjectionAnalysis:
    last = None
    for _ in range(tolerances.max_center_attempts):
        center = rng.standard_normal(4)
        center /= np.linalg.norm(center)
        try:
            return analyze_projection(link, center, tolerances=tolerances)
        except NonGenericCenter as err:
            last = err
    raise ExhaustedRetries(
        f"no generic center after {tolerances.max_center_attempts} attempts: {last}"
    )
