"""Affine charts of real projective spaces, with orientation bookkeeping.

The ambient orientation is fixed once and for all: the chart x0 != 0 of
projective 3-space with affine coordinates (x1/x0, x2/x0, x3/x0), in that
order, is positively oriented. Every other chart used anywhere in the
package is a functional chart {x : u.x != 0} with affine coordinates
(psi_i.x)/(u.x) read off an orthonormal completion psi of u, and it
carries the orientation sign det[u; psi_1; ...; psi_n] relative to the
fixed choice. Local writhe computations multiply their determinant by
this sign, which makes them chart-independent; the test suite asserts
that independence directly.

The same class serves projective 3-space (4-vectors) and the projection
plane (3-vectors).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFrame


def householder_basis(u) -> np.ndarray:
    """Orthonormal completion of a vector, as rows spanning its complement.

    Uses the Householder reflection sending u/|u| to -sign(u_0) e_0; the
    sign choice keeps |w|^2 >= 2, so the construction never degenerates
    and stays accurate for u arbitrarily close to a coordinate axis. The
    returned (n-1, n) array is deterministic in u.
    """
    u = np.asarray(u, dtype=float)
    norm = np.linalg.norm(u)
    if norm == 0.0:
        raise DegenerateFrame("cannot complete the zero vector to a basis")
    u = u / norm
    w = u.copy()
    w[0] += 1.0 if u[0] >= 0.0 else -1.0
    wn2 = float(w @ w)  # 2 (1 + |u_0|)
    h = np.eye(u.size) - 2.0 * np.outer(w, w) / wn2
    # h's first column is -sign(u_0) u; the rest complete u orthonormally
    return h[:, 1:].T.copy()


@dataclass(frozen=True)
class FunctionalChart:
    """Affine chart {x : u.x != 0} of a real projective space.

    functional: the unit row vector u.
    frame: (n-1, n) orthonormal rows spanning the complement of u; the
    affine coordinates of [x] are (frame @ x) / (u @ x).
    """

    functional: np.ndarray
    frame: np.ndarray

    @property
    def dim(self) -> int:
        return self.functional.size - 1

    @property
    def sign(self) -> int:
        """Orientation of this chart against the fixed ambient choice."""
        d = np.linalg.det(np.vstack([self.functional, self.frame]))
        return 1 if d > 0 else -1

    def height(self, x):
        return self.functional @ np.asarray(x)

    def contains(self, x, guard: float = 1e-8) -> bool:
        x = np.asarray(x)
        return abs(self.functional @ x) > guard * np.linalg.norm(x)

    def affine(self, x):
        """Affine coordinates of a homogeneous point (real or complex)."""
        x = np.asarray(x)
        h = self.functional @ x
        if abs(h) <= 1e-13 * np.linalg.norm(x):
            raise DegenerateFrame("point lies on the chart's boundary plane")
        return (self.frame @ x) / h

    def velocity(self, x, v):
        """Chart derivative at x along a homogeneous velocity v.

        This is d/de of affine(x + e v) at e = 0; adding any multiple of
        x to v does not change the result.
        """
        x = np.asarray(x)
        v = np.asarray(v)
        h = self.functional @ x
        if abs(h) <= 1e-13 * np.linalg.norm(x):
            raise DegenerateFrame("velocity requested on the chart boundary")
        return ((self.frame @ v) * h - (self.frame @ x) * (self.functional @ v)) / h**2

    def lift(self, o):
        """A homogeneous velocity whose chart derivative is parallel to o.

        At a point with height h the chart derivative of the lift is o/h;
        the positive factor 1/h is shared by every vector lifted at the
        same point, so orientation comparisons are unaffected as long as
        all lifted vectors go through the same point (h^2 > 0 for pairs).
        """
        return self.frame.T @ np.asarray(o)


def chart_from_functional(u) -> FunctionalChart:
    u = np.asarray(u, dtype=float)
    norm = np.linalg.norm(u)
    if norm == 0.0:
        raise DegenerateFrame("zero functional defines no chart")
    u = u / norm
    return FunctionalChart(u, householder_basis(u))


def pivot_chart(x) -> FunctionalChart:
    """The coordinate chart whose pivot is the largest component of x."""
    x = np.asarray(x, dtype=float)
    k = int(np.argmax(np.abs(x)))
    e = np.zeros(x.size)
    e[k] = 1.0
    return chart_from_functional(e)


def standard_chart(dim: int, k: int = 0) -> FunctionalChart:
    e = np.zeros(dim + 1)
    e[k] = 1.0
    return chart_from_functional(e)


def realify(z) -> np.ndarray:
    """Real 4-vector (Re z1, Im z1, Re z2, Im z2) of a complex 2-vector.

    The ordered basis behind this layout is the complex orientation:
    (1, i) is positive on each complex line and the product orientation
    is taken on the pair.
    """
    z = np.asarray(z, dtype=complex)
    return np.array([z[0].real, z[0].imag, z[1].real, z[1].imag])


def embed_real(v) -> np.ndarray:
    """A real plane vector viewed inside the realified complex plane."""
    v = np.asarray(v, dtype=float)
    return np.array([v[0], 0.0, v[1], 0.0])
