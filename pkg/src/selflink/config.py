"""Tolerance configuration.

All thresholds used by the numerical pipeline live in one frozen dataclass
so that a single object can be threaded through the solvers and reported
back in JSON output. Defaults are calibrated for desk-scale inputs
(component degrees up to about 8 with O(1) coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class Tolerances:
    #: target relative residual for univariate root finding
    root_residual: float = 1e-9
    #: conjugate pairing distance, scaled by 1 + |root|
    conj_pair: float = 1e-7
    #: imaginary part below which a polished parameter is snapped to the real axis
    real_snap: float = 1e-7
    #: relative residual accepted for a bivariate common zero
    h_residual: float = 1e-6
    #: two double points closer than this (relative) are treated as a collision
    collision: float = 1e-6
    #: frame determinant guard, relative to the product of row norms
    det_guard: float = 1e-8
    #: residual imaginary norm allowed when phase-normalizing a solitary image
    phase_imag: float = 1e-7
    #: minimum relative sine between branch tangents at a double point
    tangent_sine: float = 1e-6
    #: minimum projective separation between images of distinct double points
    image_separation: float = 1e-6
    #: relative residual for validation root filters
    validate_residual: float = 1e-6
    #: Newton / Gauss-Newton iteration cap
    newton_max_iter: int = 30
    #: half-width of the Chebyshev sampling interval for resultants
    resultant_radius: float = 3.0
    #: retry budget for random generic-center sampling
    max_center_attempts: int = 64

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOL = Tolerances()
