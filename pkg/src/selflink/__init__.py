"""Self-linking numbers of real rational algebraic links from projections."""

from .config import DEFAULT_TOL, Tolerances
from .curves import (
    ProjectiveTransform,
    RationalComponent,
    RationalLink,
    require_valid,
    stereographic_from_sphere,
    validate,
)
from .diagram import render_svg, save_svg
from .fileio import dumps_report, load_link, save_link
from .harness import (
    jump_scan,
    move1_family_check,
    verify_center_independence,
    verify_transform_equivariance,
)
from .projection import (
    CROSSING,
    IMAGINARY_PAIR,
    SOLITARY,
    analyze_projection,
    build_projection,
    generic_analysis,
)
from .writhe import SelfLinkingReport, crossing_writhe, self_linking, solitary_writhe

__version__ = "0.1.0"

__all__ = [
    "CROSSING",
    "DEFAULT_TOL",
    "IMAGINARY_PAIR",
    "ProjectiveTransform",
    "RationalComponent",
    "RationalLink",
    "SOLITARY",
    "SelfLinkingReport",
    "Tolerances",
    "analyze_projection",
    "build_projection",
    "crossing_writhe",
    "dumps_report",
    "generic_analysis",
    "jump_scan",
    "load_link",
    "move1_family_check",
    "render_svg",
    "require_valid",
    "save_link",
    "save_svg",
    "self_linking",
    "solitary_writhe",
    "stereographic_from_sphere",
    "validate",
    "verify_center_independence",
    "verify_transform_equivariance",
]
