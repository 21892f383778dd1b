"""Polynomial arithmetic, root finding, and bivariate elimination.

Univariate real polynomials are stored as ascending coefficient arrays.
Roots come from companion-matrix eigenvalues followed by Newton polishing,
with conjugate symmetry enforced explicitly so that downstream conjugation
arguments hold to working precision.

Bivariate polynomials c[i, j] * s**i * t**j support the two elimination
primitives the double-point solvers need: resultants computed by
evaluation and interpolation at Chebyshev nodes (scalar Sylvester
determinants at each node, never a polynomial-entry determinant), and
exact synthetic division of an antisymmetric polynomial by (s - t).
A small Gauss-Newton driver recovers common zeros of a system from the
resultant candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from numpy.polynomial import chebyshev as ncheb
from numpy.polynomial import polynomial as npoly

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    DegenerateLeadingCoefficient,
    IllConditioned,
    NotAntisymmetric,
)

_TINY = 1e-300


def _trim_exact(c):
    """Drop trailing coefficients that are exactly zero."""
    c = np.atleast_1d(np.asarray(c, dtype=float))
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        return np.zeros(0)
    return c[: nz[-1] + 1].copy()


def _trim_relative(c, rel=1e-12):
    """Drop trailing coefficients below rel * max|c|."""
    c = np.atleast_1d(np.asarray(c))
    if c.size == 0:
        return c
    m = np.max(np.abs(c))
    if m == 0:
        return c[:0]
    nz = np.nonzero(np.abs(c) > rel * m)[0]
    if nz.size == 0:
        return c[:0]
    return c[: nz[-1] + 1].copy()


@dataclass(frozen=True)
class RealPolynomial:
    """Univariate polynomial with real coefficients, ascending powers.

    The empty coefficient array is the zero polynomial (degree -1 by
    convention here). Trailing exact zeros are trimmed on construction,
    so the stored leading coefficient of a nonzero polynomial is nonzero.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim_exact(self.coeffs))
        self.coeffs.flags.writeable = False

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def __call__(self, z):
        if self.is_zero:
            return np.zeros_like(np.asarray(z), dtype=complex) if np.ndim(z) else 0.0
        return npoly.polyval(z, self.coeffs)

    def derivative(self) -> "RealPolynomial":
        if self.degree < 1:
            return RealPolynomial(np.zeros(0))
        return RealPolynomial(npoly.polyder(self.coeffs))

    def normalized(self) -> "RealPolynomial":
        """Scale so the largest absolute coefficient is 1."""
        if self.is_zero:
            return self
        return RealPolynomial(self.coeffs / np.max(np.abs(self.coeffs)))

    def __add__(self, other):
        return RealPolynomial(npoly.polyadd(self.coeffs, other.coeffs)
                              if not (self.is_zero or other.is_zero)
                              else (other.coeffs if self.is_zero else self.coeffs))

    def __sub__(self, other):
        if other.is_zero:
            return self
        if self.is_zero:
            return RealPolynomial(-other.coeffs)
        return RealPolynomial(npoly.polysub(self.coeffs, other.coeffs))

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return RealPolynomial(np.zeros(0))
        return RealPolynomial(npoly.polymul(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"RealPolynomial({np.array2string(self.coeffs, precision=6)})"


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial together with their relative residuals."""

    roots: np.ndarray
    residuals: np.ndarray
    tol: float

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if self.residuals.size else 0.0

    @property
    def ok(self) -> bool:
        return self.max_residual <= self.tol

    def real_roots(self, snap=1e-7) -> np.ndarray:
        r = self.roots
        mask = np.abs(r.imag) <= snap * (1.0 + np.abs(r))
        return np.sort(r[mask].real)


def _relative_residuals(c, r):
    """Backward-error style residual |p(r)| / sum_k |c_k| |r|^k."""
    c = np.asarray(c)
    r = np.atleast_1d(np.asarray(r, dtype=complex))
    num = np.abs(npoly.polyval(r, c))
    den = npoly.polyval(np.abs(r), np.abs(c)) + _TINY
    return num / den


def _companion_eigen_roots(c):
    """All roots of an ascending complex coefficient array, degree >= 1."""
    c = np.asarray(c, dtype=complex)
    n = c.size - 1
    if n == 1:
        return np.array([-c[0] / c[1]])
    monic = c / c[-1]
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -monic[:-1]
    return np.linalg.eigvals(comp)


def _newton_polish(c, r, max_iter=30):
    """Polish roots in place against the polynomial; keep best iterates."""
    c = np.asarray(c, dtype=complex)
    dc = npoly.polyder(c)
    cur = np.asarray(r, dtype=complex).copy()
    best = cur.copy()
    best_res = _relative_residuals(c, best)
    for _ in range(max_iter):
        p = npoly.polyval(cur, c)
        dp = npoly.polyval(cur, dc)
        ok = np.abs(dp) > _TINY
        step = np.zeros_like(cur)
        step[ok] = p[ok] / dp[ok]
        cur = cur - step
        res = _relative_residuals(c, cur)
        improved = res < best_res
        best[improved] = cur[improved]
        best_res[improved] = res[improved]
        if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(cur))):
            break
    return best, best_res


def complex_roots(c, max_iter=30):
    """Roots of an ascending complex coefficient array, polished.

    Internal workhorse shared by the real-polynomial front end and the
    bivariate solvers (which substitute complex values for one variable).
    Returns an empty array for constants and the zero polynomial.
    """
    c = _trim_relative(np.asarray(c, dtype=complex), 1e-14)
    if c.size <= 1:
        return np.zeros(0, dtype=complex)
    r = _companion_eigen_roots(c)
    r, _ = _newton_polish(c, r, max_iter)
    return r


def _pair_conjugates(r, pair_tol, snap_tol):
    """Snap near-real roots and enforce exact conjugate symmetry.

    Raises IllConditioned when a genuinely complex root has no partner
    within the pairing tolerance, since a real polynomial cannot have one.
    """
    r = np.asarray(r, dtype=complex).copy()
    near_real = np.abs(r.imag) <= snap_tol * (1.0 + np.abs(r))
    r[near_real] = r[near_real].real
    upper = np.nonzero(r.imag > 0)[0]
    lower = list(np.nonzero(r.imag < 0)[0])
    for i in upper:
        if not lower:
            raise IllConditioned("unpaired imaginary root %s" % r[i])
        dists = [abs(r[i] - np.conj(r[j])) for j in lower]
        k = int(np.argmin(dists))
        j = lower[k]
        if dists[k] > pair_tol * (1.0 + abs(r[i])):
            raise IllConditioned(
                "imaginary root %s has no conjugate partner within tolerance" % r[i]
            )
        z = 0.5 * (r[i] + np.conj(r[j]))
        r[i] = z
        r[j] = np.conj(z)
        lower.pop(k)
    if lower:
        raise IllConditioned("unpaired imaginary root %s" % r[lower[0]])
    order = np.lexsort((r.imag, r.real))
    return r[order]


def roots(p: RealPolynomial, tol: float = None, *,
          tolerances: Tolerances = DEFAULT_TOL) -> RootSet:
    """All complex roots of a real polynomial, conjugate-paired.

    Multiplicities are represented by repetition (a triple root appears as
    a cluster of three nearby values whose residuals are still small).
    Raises IllConditioned when the residual target cannot be met or when
    conjugate pairing fails.
    """
    if tol is None:
        tol = tolerances.root_residual
    q = p.normalized()
    if q.degree <= 0:
        return RootSet(np.zeros(0, dtype=complex), np.zeros(0), tol)
    c = q.coeffs.astype(complex)
    r = _companion_eigen_roots(c)
    r, _ = _newton_polish(c, r, tolerances.newton_max_iter)
    r = _pair_conjugates(r, tolerances.conj_pair, tolerances.conj_pair)
    res = _relative_residuals(c, r)
    if np.max(res) > tol:
        raise IllConditioned(
            "max root residual %.3e exceeds tolerance %.1e" % (np.max(res), tol)
        )
    return RootSet(r, res, tol)


# ---------------------------------------------------------------------------
# bivariate polynomials


def _trim2(c, rel=0.0):
    """Trim trailing rows/columns; rel=0 trims exact zeros only."""
    c = np.atleast_2d(np.asarray(c))
    if c.size == 0:
        return np.zeros((1, 1))
    m = np.max(np.abs(c))
    if m == 0:
        return np.zeros((1, 1))
    thresh = rel * m
    rows = np.nonzero(np.any(np.abs(c) > thresh, axis=1))[0]
    cols = np.nonzero(np.any(np.abs(c) > thresh, axis=0))[0]
    if rows.size == 0 or cols.size == 0:
        return np.zeros((1, 1))
    return c[: rows[-1] + 1, : cols[-1] + 1].copy()


@dataclass(frozen=True)
class BivariatePolynomial:
    """Real polynomial in (s, t); coeffs[i, j] multiplies s**i * t**j."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim2(self.coeffs).astype(float))
        self.coeffs.flags.writeable = False

    @property
    def degree_s(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def degree_t(self) -> int:
        return self.coeffs.shape[1] - 1

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    @property
    def is_zero(self) -> bool:
        return self.norm == 0.0

    def __call__(self, s, t):
        return npoly.polyval2d(s, t, self.coeffs)

    def t_coefficients_at(self, s0):
        """Coefficient array in t after substituting s = s0."""
        return npoly.polyval(s0, self.coeffs)

    def s_coefficients_at(self, t0):
        return npoly.polyval(t0, self.coeffs.T)

    def partial_s(self) -> "BivariatePolynomial":
        if self.degree_s < 1:
            return BivariatePolynomial(np.zeros((1, 1)))
        return BivariatePolynomial(npoly.polyder(self.coeffs, axis=0))

    def partial_t(self) -> "BivariatePolynomial":
        if self.degree_t < 1:
            return BivariatePolynomial(np.zeros((1, 1)))
        return BivariatePolynomial(npoly.polyder(self.coeffs, axis=1))

    def transpose(self) -> "BivariatePolynomial":
        return BivariatePolynomial(self.coeffs.T)

    def normalized(self) -> "BivariatePolynomial":
        if self.is_zero:
            return self
        return BivariatePolynomial(self.coeffs / self.norm)

    def _square(self):
        n = max(self.coeffs.shape)
        out = np.zeros((n, n))
        out[: self.coeffs.shape[0], : self.coeffs.shape[1]] = self.coeffs
        return out

    def antisymmetry_defect(self) -> float:
        """max |c + c^T| over the square padding, relative to the norm."""
        sq = self._square()
        if self.is_zero:
            return 0.0
        return float(np.max(np.abs(sq + sq.T)) / self.norm)

    def symmetry_defect(self) -> float:
        sq = self._square()
        if self.is_zero:
            return 0.0
        return float(np.max(np.abs(sq - sq.T)) / self.norm)

    def relative_residual(self, s, t) -> float:
        num = abs(npoly.polyval2d(s, t, self.coeffs))
        den = npoly.polyval2d(abs(s), abs(t), np.abs(self.coeffs)) + _TINY
        return float(num / den)


def multiply_bivariate(a: BivariatePolynomial, b: BivariatePolynomial) -> BivariatePolynomial:
    """Product of two bivariate polynomials (dense 2D convolution)."""
    ca, cb = a.coeffs, b.coeffs
    out = np.zeros((ca.shape[0] + cb.shape[0] - 1, ca.shape[1] + cb.shape[1] - 1))
    for i in range(ca.shape[0]):
        for j in range(ca.shape[1]):
            if ca[i, j] != 0.0:
                out[i : i + cb.shape[0], j : j + cb.shape[1]] += ca[i, j] * cb
    return BivariatePolynomial(out)


def multiply_diagonal(h: BivariatePolynomial) -> BivariatePolynomial:
    """Return (s - t) * h, the inverse of divide_out_diagonal."""
    c = h.coeffs
    out = np.zeros((c.shape[0] + 1, c.shape[1] + 1))
    out[1:, :-1] += c
    out[:-1, 1:] -= c
    return BivariatePolynomial(out)


def divide_out_diagonal(b: BivariatePolynomial, *,
                        tolerances: Tolerances = DEFAULT_TOL) -> BivariatePolynomial:
    """Divide an antisymmetric polynomial exactly by (s - t).

    Synthetic division in t with polynomial coefficients in s. The input
    must satisfy b(t, s) = -b(s, t); the remainder of the division is
    b(s, s), which vanishes for antisymmetric input, and both conditions
    are checked. The quotient is symmetric and is symmetrized to remove
    rounding skew before returning.
    """
    if b.is_zero:
        return BivariatePolynomial(np.zeros((1, 1)))
    defect = b.antisymmetry_defect()
    if defect > 1e-8:
        raise NotAntisymmetric("antisymmetry defect %.3e" % defect)
    sq = b._square()
    n = sq.shape[1] - 1
    if n < 1:
        raise NotAntisymmetric("nonzero constant cannot be antisymmetric")
    # synthetic division of sum_j b_j(s) t^j by (t - s); multiplying a
    # coefficient polynomial by s is an index shift
    qs = [None] * n
    q = np.zeros(sq.shape[0] + n)
    q[: sq.shape[0]] = sq[:, n]
    qs[n - 1] = q.copy()
    for j in range(n - 1, 0, -1):
        shifted = np.zeros_like(q)
        shifted[1:] = q[:-1]
        q = shifted
        q[: sq.shape[0]] += sq[:, j]
        qs[j - 1] = q.copy()
    shifted = np.zeros_like(q)
    shifted[1:] = q[:-1]
    remainder = shifted
    remainder[: sq.shape[0]] += sq[:, 0]
    if np.max(np.abs(remainder)) > 1e-8 * b.norm:
        raise NotAntisymmetric(
            "diagonal remainder %.3e not negligible" % np.max(np.abs(remainder))
        )
    hmat = np.zeros((len(q), n))
    for j, col in enumerate(qs):
        hmat[:, j] = -col  # b = (t - s) q + r, so b / (s - t) = -q
    h = BivariatePolynomial(hmat)
    sym = h._square()
    out = BivariatePolynomial(0.5 * (sym + sym.T))
    if out.symmetry_defect() > 1e-7:
        raise NotAntisymmetric("quotient symmetry defect %.3e" % out.symmetry_defect())
    return out


def sylvester_matrix(a, b) -> np.ndarray:
    """Sylvester matrix of two univariate coefficient arrays (ascending)."""
    a = np.atleast_1d(np.asarray(a))
    b = np.atleast_1d(np.asarray(b))
    m = a.size - 1
    n = b.size - 1
    if m < 0 or n < 0:
        raise ValueError("empty polynomial has no Sylvester matrix")
    size = m + n
    if size == 0:
        return np.ones((0, 0), dtype=np.result_type(a, b))
    out = np.zeros((size, size), dtype=np.result_type(a, b, float))
    ra = a[::-1]
    rb = b[::-1]
    for r in range(n):
        out[r, r : r + m + 1] = ra
    for r in range(m):
        out[n + r, r : r + n + 1] = rb
    return out


def _chebyshev_resultant(c1, c2, radius):
    """Chebyshev coefficients (in s/radius) of Res_t for two coefficient mats.

    Returns (cheb_coeffs, value_scale, significance): the resultant is
    evaluated at Chebyshev nodes as a scalar Sylvester determinant and
    interpolated at the exact degree bound (interpolation, not
    regression). The true values are value_scale * the interpolant of
    cheb_coeffs. significance is max over nodes of |det| relative to the
    Hadamard bound of that node's matrix; values near machine epsilon
    mean the resultant vanishes identically up to roundoff.
    """
    ds1, dt1 = c1.shape[0] - 1, c1.shape[1] - 1
    ds2, dt2 = c2.shape[0] - 1, c2.shape[1] - 1
    bound = ds1 * dt2 + ds2 * dt1
    n_nodes = bound + 1
    u = np.cos(np.pi * (2 * np.arange(n_nodes) + 1) / (2 * n_nodes))
    vals = np.empty(n_nodes)
    significance = 0.0
    for k, uk in enumerate(u):
        sk = radius * uk
        if dt1 + dt2 == 0:
            vals[k] = 1.0  # empty Sylvester matrix, empty-product resultant
            significance = 1.0
            continue
        syl = sylvester_matrix(npoly.polyval(sk, c1), npoly.polyval(sk, c2))
        vals[k] = np.linalg.det(syl)
        hadamard = float(np.prod(np.linalg.norm(syl, axis=1))) + _TINY
        significance = max(significance, abs(vals[k]) / hadamard)
    scale = float(np.max(np.abs(vals)))
    if scale == 0.0:
        return np.zeros(1), 0.0, 0.0
    if bound == 0:
        return np.ones(1), vals[0], significance
    ch = ncheb.chebfit(u, vals / scale, bound)
    return ch, scale, significance


def resultant_eliminate(h1: BivariatePolynomial, h2: BivariatePolynomial, *,
                        tolerances: Tolerances = DEFAULT_TOL) -> RealPolynomial:
    """Resultant of h1, h2 with respect to t, as a polynomial in s.

    Computed by evaluation at Chebyshev nodes scaled to the configured
    radius and interpolation at the degree bound
    deg_s(h1) deg_t(h2) + deg_s(h2) deg_t(h1). The conversion from the
    Chebyshev basis to power coefficients loses relative accuracy roughly
    like 2^degree * eps, which is harmless at the degrees this package
    meets; root extraction elsewhere stays in the Chebyshev basis.
    """
    for h in (h1, h2):
        lead = h.coeffs[:, -1]
        if h.is_zero or np.max(np.abs(lead)) <= 1e-12 * max(h.norm, _TINY):
            raise DegenerateLeadingCoefficient(
                "leading t-coefficient vanishes identically; reparametrize"
            )
    c1 = _trim2(h1.coeffs, 1e-13)
    c2 = _trim2(h2.coeffs, 1e-13)
    radius = tolerances.resultant_radius
    ch, scale, significance = _chebyshev_resultant(c1, c2, radius)
    if scale == 0.0 or significance <= 1e-10:
        return RealPolynomial(np.zeros(0))
    power_u = ncheb.cheb2poly(ch)
    power_s = power_u * scale / radius ** np.arange(power_u.size)
    return RealPolynomial(_trim_relative(power_s, 1e-12))


# ---------------------------------------------------------------------------
# common zeros of a bivariate system


@dataclass
class BivariateZeros:
    """Isolated common zeros of a system of bivariate polynomials.

    degenerate=True means the system's zero set could not be treated as a
    finite point set: every polynomial vanished identically, only one
    survived, or every usable resultant vanished identically (a
    positive-dimensional incidence, e.g. two coincident curves).
    """

    zeros: list = field(default_factory=list)  # (s, t, residual) triples
    degenerate: bool = False
    notes: list = field(default_factory=list)


def _second_coordinate_candidates(mats, first, in_t):
    out = []
    for c in mats:
        coef = npoly.polyval(first, c) if in_t else npoly.polyval(first, c.T)
        out.extend(complex_roots(_trim_relative(coef, 1e-10)))
    return out


def _gauss_newton_pair(mats, parts, s, t, max_iter):
    """Polish (s, t) against all polynomials by damped least squares."""
    def resid(sv, tv):
        return np.array([npoly.polyval2d(sv, tv, c) for c in mats])

    cur_s, cur_t = complex(s), complex(t)
    f = resid(cur_s, cur_t)
    best = (cur_s, cur_t, np.linalg.norm(f))
    for _ in range(max_iter):
        jac = np.array(
            [[npoly.polyval2d(cur_s, cur_t, ps), npoly.polyval2d(cur_s, cur_t, pt)]
             for ps, pt in parts]
        )
        try:
            step, *_ = np.linalg.lstsq(jac, -f, rcond=None)
        except np.linalg.LinAlgError:
            break
        scale = 1.0
        for _ in range(6):
            ns, nt = cur_s + scale * step[0], cur_t + scale * step[1]
            nf = resid(ns, nt)
            if np.linalg.norm(nf) < np.linalg.norm(f):
                cur_s, cur_t, f = ns, nt, nf
                break
            scale *= 0.5
        else:
            break
        if np.linalg.norm(f) < best[2]:
            best = (cur_s, cur_t, np.linalg.norm(f))
        if np.linalg.norm(f) <= 1e-15:
            break
    return best[0], best[1]


def _max_relative_residual(polys, s, t):
    return max(p.relative_residual(s, t) for p in polys)


def common_zeros(polys, *, tolerances: Tolerances = DEFAULT_TOL,
                 residual_tol: float = None, cluster: float = None,
                 both_directions: bool = True) -> BivariateZeros:
    """Isolated common zeros of a list of bivariate polynomials.

    Strategy: take the first pair whose resultant in t (or s) does not
    vanish identically, read first-coordinate candidates off the
    Chebyshev-basis resultant, recover second coordinates by univariate
    substitution, then polish every candidate pair against the full
    system and keep those with small relative residual on all members.
    Nearby survivors are merged, keeping the best-residual representative.
    """
    if residual_tol is None:
        residual_tol = tolerances.h_residual
    if cluster is None:
        cluster = tolerances.collision
    result = BivariateZeros()
    biggest = max((q.norm for q in polys), default=0.0)
    if biggest == 0.0:
        live = []
    else:
        live = [p.normalized() for p in polys if p.norm > 1e-13 * biggest]
    dropped = len(polys) - len(live)
    if dropped:
        result.notes.append(f"{dropped} member(s) vanished identically")
    if len(live) < 2:
        result.degenerate = True
        result.notes.append("fewer than two independent equations")
        return result

    mats = [p.coeffs for p in live]
    parts = [(npoly.polyder(c, axis=0) if c.shape[0] > 1 else np.zeros((1, 1)),
              npoly.polyder(c, axis=1) if c.shape[1] > 1 else np.zeros((1, 1)))
             for c in mats]
    radius = tolerances.resultant_radius

    candidates = []
    pair_found = False
    for ia, ib in combinations(range(len(live)), 2):
        # relative trim: division and normalization roundoff can leave
        # junk leading coefficients that poison the Sylvester evaluation
        a = _trim2(live[ia].coeffs, 1e-12)
        b = _trim2(live[ib].coeffs, 1e-12)
        directions = [(a, b, True)]
        if both_directions:
            directions.append((a.T, b.T, False))
        produced = False
        for ca, cb, in_t in directions:
            if ca.shape[1] - 1 + cb.shape[1] - 1 == 0:
                continue  # neither depends on the eliminated variable
            ch, scale, significance = _chebyshev_resultant(ca, cb, radius)
            if scale == 0.0 or significance <= 1e-10:
                continue  # resultant vanished identically in this direction
            produced = True
            if ch.size <= 1:
                continue  # constant nonzero resultant: no common zeros here
            firsts = radius * ncheb.chebroots(ch / np.max(np.abs(ch)))
            firsts = firsts[np.abs(firsts) <= 1e6]
            for f0 in firsts:
                seconds = _second_coordinate_candidates([ca, cb], f0, in_t=True)
                for g0 in seconds:
                    candidates.append((f0, g0) if in_t else (g0, f0))
        if produced:
            pair_found = True
            break
    if not pair_found:
        result.degenerate = True
        result.notes.append("every resultant vanished identically")
        return result

    survivors = []
    for s0, t0 in candidates:
        s1, t1 = _gauss_newton_pair(mats, parts, s0, t0, tolerances.newton_max_iter)
        if not (np.isfinite(s1) and np.isfinite(t1)):
            continue
        res = _max_relative_residual(live, s1, t1)
        if res <= residual_tol:
            survivors.append((s1, t1, res))

    survivors.sort(key=lambda z: (z[0].real, z[0].imag, z[1].real, z[1].imag))
    merged = []
    for s1, t1, res in survivors:
        placed = False
        for entry in merged:
            s2, t2, res2 = entry
            sep = max(abs(s1 - s2), abs(t1 - t2))
            if sep <= cluster * (1.0 + max(abs(s1), abs(t1))):
                if res < res2:
                    entry[0], entry[1], entry[2] = s1, t1, res
                placed = True
                break
        if not placed:
            merged.append([s1, t1, res])
    result.zeros = [(complex(s), complex(t), float(r)) for s, t, r in merged]
    return result
