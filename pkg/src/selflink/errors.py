"""Exception types shared across the package.

Every failure mode that callers are expected to branch on gets its own
class so the CLI can map exceptions to exit codes without string matching.
"""


class SelfLinkError(Exception):
    """Base class for all package-specific errors."""


class IllConditioned(SelfLinkError):
    """Root residuals could not be driven below tolerance at working precision."""


class DegenerateLeadingCoefficient(SelfLinkError):
    """Leading coefficient row of a bivariate polynomial vanishes identically.

    The resultant in that variable is meaningless; the caller should
    reparametrize and try again.
    """


class NotAntisymmetric(SelfLinkError):
    """Input to the diagonal division was not antisymmetric within tolerance."""


class SingularTransform(SelfLinkError):
    """Projective transform matrix is numerically singular."""


class SingularMobius(SelfLinkError):
    """Mobius reparametrization matrix is numerically singular."""


class PoleOnCurve(SelfLinkError):
    """Stereographic pole lies on the (complexified) curve."""


class NotOnQuadric(SelfLinkError):
    """Sphere-curve input does not satisfy the unit-quadric identity."""


class ValidationError(SelfLinkError):
    """Curve failed validation (base point, non-immersion, or self-intersection).

    Carries the offending report when raised by pipeline entry points.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NonGenericCenter(SelfLinkError):
    """Projection center failed a genericity requirement for this link."""


class ExhaustedRetries(SelfLinkError):
    """No generic center found within the configured retry budget."""


class DegenerateFrame(SelfLinkError):
    """Local writhe frame is numerically degenerate (determinant below guard)."""


class UnresolvedEvent(SelfLinkError):
    """Bisection hit an event cluster it could not split at the resolution limit.

    Scans report such events rather than raising; this class exists for
    callers that want to escalate.
    """


class ParseError(SelfLinkError):
    """Curve file could not be parsed into a rational link."""
