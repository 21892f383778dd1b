"""Rational space curves in projective 3-space: model, validation, symmetries.

A component is a 4-row matrix of ascending coefficient rows, the
homogeneous parametrization [f0(t) : f1(t) : f2(t) : f3(t)] of a curve by
the parameter line. A link is a tuple of components. Validation certifies
the standing hypotheses of everything downstream: no base points, an
immersed parametrization, and an embedded complexification (no two
parameters, on one component or two, with the same image point).

The parameter at infinity is handled by rerunning each check on Moebius
reparametrizations with distinct poles; every parameter pair is finite in
at least one of the three systems used, so nothing escapes the affine
solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from numpy.polynomial import polynomial as npoly

from .charts import householder_basis
from .config import DEFAULT_TOL, Tolerances
from .errors import (
    NotAntisymmetric,
    NotOnQuadric,
    PoleOnCurve,
    SingularMobius,
    SingularTransform,
    ValidationError,
)
from .polynomials import BivariatePolynomial, common_zeros, complex_roots, divide_out_diagonal

_TINY = 1e-300


@dataclass(frozen=True)
class RationalComponent:
    """One rational curve component, rows f0..f3 ascending in t."""

    coeff_matrix: np.ndarray

    def __post_init__(self):
        m = np.atleast_2d(np.asarray(self.coeff_matrix, dtype=float))
        if m.shape[0] != 4:
            raise ValueError("component needs exactly four coordinate rows")
        keep = np.nonzero(np.any(m != 0.0, axis=0))[0]
        if keep.size == 0:
            raise ValueError("component is identically zero")
        m = m[:, : keep[-1] + 1].copy()
        m.flags.writeable = False
        object.__setattr__(self, "coeff_matrix", m)

    @property
    def degree(self) -> int:
        return self.coeff_matrix.shape[1] - 1

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.coeff_matrix)))

    def point(self, t):
        """Homogeneous 4-vector at parameter t (t may be complex or array)."""
        return npoly.polyval(t, self.coeff_matrix.T)

    def velocity(self, t):
        if self.degree == 0:
            return np.zeros(4) if np.ndim(t) == 0 else np.zeros((4,) + np.shape(t))
        return npoly.polyval(t, npoly.polyder(self.coeff_matrix.T, axis=0))

    def row(self, i) -> np.ndarray:
        return self.coeff_matrix[i]

    def mirror(self) -> "RationalComponent":
        m = self.coeff_matrix.copy()
        m[3] = -m[3]
        return RationalComponent(m)

    def transformed(self, matrix) -> "RationalComponent":
        return RationalComponent(np.asarray(matrix, dtype=float) @ self.coeff_matrix)

    def normalized(self) -> "RationalComponent":
        return RationalComponent(self.coeff_matrix / self.norm)


@dataclass(frozen=True)
class RationalLink:
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("link needs at least one component")
        object.__setattr__(self, "components", comps)

    @property
    def degrees(self):
        return [c.degree for c in self.components]

    def mirror(self) -> "RationalLink":
        return RationalLink(tuple(c.mirror() for c in self.components))

    def transformed(self, matrix) -> "RationalLink":
        return RationalLink(tuple(c.transformed(matrix) for c in self.components))


@dataclass(frozen=True)
class ProjectiveTransform:
    """Invertible 4x4 real matrix acting on homogeneous coordinates."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise SingularTransform("transform must be a 4x4 matrix")
        scale = np.max(np.abs(m)) + _TINY
        if abs(np.linalg.det(m)) <= 1e-10 * scale**4:
            raise SingularTransform("transform is singular within tolerance")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def det_sign(self) -> int:
        return 1 if np.linalg.det(self.matrix) > 0 else -1


def transform(link: RationalLink, t: ProjectiveTransform) -> RationalLink:
    return link.transformed(t.matrix)


def _substitute_mobius(rows, mobius, deg) -> np.ndarray:
    """Rows of r((a t + b)/(c t + d)) * (c t + d)^deg for each row r.

    deg is the homogenization degree and must be at least every row's
    length minus one; a root of the output at the map's pole corresponds
    to a degree-deg root of the input at infinity.
    """
    m = np.asarray(mobius, dtype=float)
    if m.shape != (2, 2):
        raise SingularMobius("Moebius map must be a 2x2 matrix")
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    scale = np.max(np.abs(m)) + _TINY
    if abs(a * d - b * c) <= 1e-12 * scale**2:
        raise SingularMobius("Moebius matrix is singular within tolerance")
    num = np.array([b, a])
    den = np.array([d, c])
    num_pow = [np.ones(1)]
    den_pow = [np.ones(1)]
    for _ in range(deg):
        num_pow.append(np.convolve(num_pow[-1], num))
        den_pow.append(np.convolve(den_pow[-1], den))
    rows = [np.atleast_1d(np.asarray(r, dtype=float)) for r in rows]
    out = np.zeros((len(rows), deg + 1))
    for i, row in enumerate(rows):
        for k in range(row.size):
            if row[k] != 0.0:
                term = np.convolve(num_pow[k], den_pow[deg - k])
                out[i, : term.size] += row[k] * term
    return out


def reparametrize(comp: RationalComponent, mobius) -> RationalComponent:
    """Substitute t <- (a t + b)/(c t + d) and clear denominators.

    The image curve is unchanged; double-point parameters transform by
    the inverse map. Used to push interesting parameters away from
    infinity before running the affine solvers.
    """
    return RationalComponent(_substitute_mobius(comp.coeff_matrix, mobius, comp.degree))


def mobius_parameter_map(mobius):
    """The map new-parameter -> old-parameter used by reparametrize."""
    m = np.asarray(mobius, dtype=float)

    def forward(t):
        den = m[1, 0] * t + m[1, 1]
        if abs(den) <= 1e-300 * (1 + abs(t)):
            return complex(np.inf)
        return (m[0, 0] * t + m[0, 1]) / den

    return forward


def rotation_mobius(theta: float) -> np.ndarray:
    """Parameter-circle rotation; always invertible, moves infinity."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool = True
    failures: list = field(default_factory=list)
    base_points: list = field(default_factory=list)       # (component, param)
    non_immersion: list = field(default_factory=list)     # (component, param)
    double_points: list = field(default_factory=list)     # (compA, compB, s, t)

    def fail(self, message):
        self.ok = False
        self.failures.append(message)


# Moebius copies giving every parameter (and parameter pair) a system in
# which it is finite: the poles of (identity, copy1, copy2) are infinity,
# +1 and -1, and a pair can meet at most two of those.
_COVER_MAPS = [
    np.array([[1.0, 0.0], [0.0, 1.0]]),
    np.array([[1.0, 1.0], [-1.0, 1.0]]),
    np.array([[2.0, 1.0], [1.0, 1.0]]),
]


def _poly_relative_residual(coeffs, z):
    num = abs(npoly.polyval(z, coeffs))
    den = npoly.polyval(abs(z), np.abs(coeffs)) + _TINY
    return num / den


def _common_complex_roots(rows, tol):
    """Common roots of the nonzero members of a family of coefficient rows."""
    live = [np.asarray(r, dtype=float) for r in rows if np.max(np.abs(r)) > 0.0]
    if not live:
        return None  # everything vanished identically
    live = [r / np.max(np.abs(r)) for r in live]
    seed = min(live, key=lambda r: np.trim_zeros(r, "b").size)
    out = []
    for z in complex_roots(seed.astype(complex)):
        if all(_poly_relative_residual(r, z) <= tol for r in live):
            out.append(complex(z))
    return out


def _merge_params(found, new, tol=1e-6):
    for z in new:
        if not any(abs(z - w) <= tol * (1 + abs(z)) for w in found):
            found.append(z)


def _pair_seen(found, pair, tol=1e-6):
    s, t = pair
    for u, v in found:
        if (abs(s - u) <= tol * (1 + abs(s)) and abs(t - v) <= tol * (1 + abs(t))) or (
            abs(s - v) <= tol * (1 + abs(s)) and abs(t - u) <= tol * (1 + abs(t))
        ):
            return True
    return False


def _minor_rows(comp: RationalComponent):
    """The six 2x2 minors of [f, f'] as coefficient rows."""
    c = comp.coeff_matrix
    dc = npoly.polyder(c, axis=1) if comp.degree >= 1 else np.zeros((4, 1))
    out = []
    for i, j in combinations(range(4), 2):
        m = np.convolve(c[i], dc[j]) - np.convolve(c[j], dc[i])
        out.append(m)
    return out


def _pair_minor_matrices(ca, cb):
    """The six bivariate minors f_i(s) g_j(t) - f_j(s) g_i(t)."""
    out = []
    for i, j in combinations(range(4), 2):
        out.append(np.outer(ca[i], cb[j]) - np.outer(ca[j], cb[i]))
    return out


def _solve_incidence(polys, tolerances, tol):
    """Common zeros of the surviving system members.

    Returns (zeros, failure message or None). A single surviving nonzero
    constant means the system is inconsistent (no incidences), which is
    the healthy outcome for curves inside a line; a single nonconstant
    survivor has a positive-dimensional zero set and is fatal.
    """
    live = [p for p in polys if p.norm > 1e-12]
    if not live:
        return [], "incidence system vanished identically"
    if any(p.degree_s == 0 and p.degree_t == 0 for p in live):
        # a nonzero constant makes the system inconsistent: no incidences
        return [], None
    if len(live) == 1:
        return [], "incidence locus is positive-dimensional"
    sol = common_zeros(live, tolerances=tolerances, residual_tol=tol)
    if sol.degenerate:
        return [], "incidence locus is positive-dimensional"
    return sol.zeros, None


def validate(link: RationalLink, tol: float = None, *,
             tolerances: Tolerances = DEFAULT_TOL) -> ValidationReport:
    """Certify base-point freeness, immersion, and embeddedness.

    Any common zero of the pairwise minors, real or complex, is fatal:
    a real one is a self-intersection of the real link, a complex one a
    node of the complexification, and the construction downstream needs
    neither to exist.
    """
    if tol is None:
        tol = tolerances.validate_residual
    report = ValidationReport()
    comps = [c.normalized() for c in link.components]

    for ci, comp in enumerate(comps):
        copies = [(reparametrize(comp, m), mobius_parameter_map(m)) for m in _COVER_MAPS]

        found = []
        for copy, back in copies[:2]:
            hit = _common_complex_roots(list(copy.coeff_matrix), tol)
            if hit is None:
                report.fail(f"component {ci}: all four coordinates vanish identically")
                break
            _merge_params(found, [back(z) for z in hit])
        for z in found:
            report.base_points.append((ci, z))
            report.fail(f"component {ci}: base point at parameter {z}")

        found = []
        for copy, back in copies[:2]:
            hit = _common_complex_roots(_minor_rows(copy), tol)
            if hit is None:
                report.fail(f"component {ci}: parametrization degenerates to a point")
                break
            _merge_params(found, [back(z) for z in hit])
        for z in found:
            report.non_immersion.append((ci, z))
            report.fail(f"component {ci}: immersion fails at parameter {z}")

        found = []
        for copy, back in copies:
            mats = _pair_minor_matrices(copy.coeff_matrix, copy.coeff_matrix)
            hs = []
            malformed = False
            for m in mats:
                if np.max(np.abs(m)) <= 1e-12:
                    continue
                try:
                    hs.append(divide_out_diagonal(BivariatePolynomial(m),
                                                  tolerances=tolerances))
                except NotAntisymmetric:
                    malformed = True
            if malformed:
                report.fail(f"component {ci}: double-point system malformed")
                continue
            zeros, problem = _solve_incidence(hs, tolerances, tol)
            if problem:
                report.fail(
                    f"component {ci}: {problem} "
                    "(multiple cover or coincident branches)"
                )
                continue
            for s, t, _ in zeros:
                p = (back(s), back(t))
                if not _pair_seen(found, p):
                    found.append(p)
        for s, t in found:
            report.double_points.append((ci, ci, s, t))
            report.fail(
                f"component {ci}: parameters {s} and {t} map to the same point"
            )

    for ia, ib in combinations(range(len(comps)), 2):
        found = []
        for m in _COVER_MAPS:
            back = mobius_parameter_map(m)
            ca = reparametrize(comps[ia], m).coeff_matrix
            cb = reparametrize(comps[ib], m).coeff_matrix
            mats = [BivariatePolynomial(x) for x in _pair_minor_matrices(ca, cb)
                    if np.max(np.abs(x)) > 1e-12]
            zeros, problem = _solve_incidence(mats, tolerances, tol)
            if problem:
                report.fail(f"components {ia},{ib}: {problem} "
                            "(components coincide or overlap)")
                continue
            for s, t, _ in zeros:
                p = (back(s), back(t))
                if not any(
                    abs(p[0] - u) <= 1e-6 * (1 + abs(p[0]))
                    and abs(p[1] - v) <= 1e-6 * (1 + abs(p[1]))
                    for u, v in found
                ):
                    found.append(p)
        for s, t in found:
            report.double_points.append((ia, ib, s, t))
            report.fail(
                f"components {ia},{ib}: parameters {s} and {t} meet in one point"
            )

    return report


def require_valid(link: RationalLink, *, tolerances: Tolerances = DEFAULT_TOL) -> ValidationReport:
    report = validate(link, tolerances=tolerances)
    if not report.ok:
        raise ValidationError("; ".join(report.failures), report=report)
    return report


# ---------------------------------------------------------------------------
# sphere transfer


def stereographic_from_sphere(numerators, denominator, pole, *,
                              tolerances: Tolerances = DEFAULT_TOL) -> RationalLink:
    """Transfer a rational curve on the unit 3-sphere into projective space.

    numerators: four ascending coefficient rows p0..p3, denominator: one
    row q, with p(t)/q(t) on the unit sphere of R^4 identically, checked
    coefficientwise as sum p_i^2 = q^2. The image under stereographic
    projection from the pole is returned as a homogeneous rational curve:
    with an orthonormal basis (u1, u2, u3) of the pole's orthogonal
    complement, the image is [q - p.P : p.u1 : p.u2 : p.u3].
    """
    rows = [np.atleast_1d(np.asarray(r, dtype=float)) for r in numerators]
    if len(rows) != 4:
        raise ValueError("need exactly four numerator rows")
    q = np.atleast_1d(np.asarray(denominator, dtype=float))
    pole = np.asarray(pole, dtype=float)
    if pole.shape != (4,) or np.linalg.norm(pole) == 0.0:
        raise ValueError("pole must be a nonzero 4-vector")
    pole = pole / np.linalg.norm(pole)

    width = max(max(r.size for r in rows), q.size)
    padded = np.zeros((4, width))
    for i, r in enumerate(rows):
        padded[i, : r.size] = r
    qpad = np.zeros(width)
    qpad[: q.size] = q

    lhs = np.zeros(2 * width - 1)
    for i in range(4):
        lhs += np.convolve(padded[i], padded[i])
    lhs -= np.convolve(qpad, qpad)
    scale = max(np.max(np.abs(np.convolve(qpad, qpad))), _TINY)
    if np.max(np.abs(lhs)) > 1e-9 * scale:
        raise NotOnQuadric(
            "sum of squared numerators differs from squared denominator "
            f"(defect {np.max(np.abs(lhs)):.3e})"
        )

    # pole on curve <=> p(t) = q(t) P for some t, including t at infinity;
    # the substitution keeps the full homogenization degree so a root at
    # infinity (leading coefficients all vanishing) is not trimmed away
    hit_rows = np.vstack([padded[i] - pole[i] * qpad for i in range(4)])
    if np.max(np.abs(hit_rows)) <= 1e-12 * max(np.max(np.abs(padded)), 1.0):
        raise PoleOnCurve("curve sits at the pole identically")
    for m in _COVER_MAPS[:2]:
        moved = _substitute_mobius(hit_rows, m, width - 1)
        hit = _common_complex_roots(list(moved), tolerances.validate_residual)
        if hit:
            back = mobius_parameter_map(m)
            raise PoleOnCurve(f"pole met at parameter {back(hit[0])}")

    basis = householder_basis(pole)
    out = np.zeros((4, width))
    out[0] = qpad - sum(pole[i] * padded[i] for i in range(4))
    for k in range(3):
        out[1 + k] = sum(basis[k, i] * padded[i] for i in range(4))
    link = RationalLink((RationalComponent(out),))
    require_valid(link, tolerances=tolerances)
    return link
