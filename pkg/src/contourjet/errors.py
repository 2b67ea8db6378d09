"""Exception hierarchy.

Everything geometric/degenerate derives from GeometryError so callers (and the
CLI, which maps them to exit status 2) can catch one base class.  Input that
fails schema validation is a plain ValueError subclass, kept separate from the
geometry errors on purpose.
"""


class GeometryError(Exception):
    """Base class for domain errors (degenerate or out-of-domain input)."""


# series engine ---------------------------------------------------------------

class OrderExceeded(GeometryError):
    """More series/jet order was requested than the operand carries."""


class NonpositiveLeadingCoefficient(GeometryError):
    """Rational power of a series whose constant term is <= 0."""


class NonzeroInnerConstant(GeometryError):
    """Composition f(g) with g(0) != 0."""


class NotInvertible(GeometryError):
    """Series reversion needs f(0) = 0 and f'(0) != 0."""


# curve forward model ---------------------------------------------------------

class DegenerateGrid(GeometryError):
    """Finite-difference grid too coarse or the sampled curve is singular."""


class NotAType(GeometryError):
    """Cuspidal curvature of a singular point with vanishing second derivative."""


class TangentDirection(GeometryError):
    """Secondary projection direction tangent to the curve (cos(theta1) = 0)."""


# curve reconstruction --------------------------------------------------------

class DegenerateMeasurement(GeometryError):
    """Measurement violates a reconstruction hypothesis (e.g. zero derivative)."""


class CollinearDirections(GeometryError):
    """Two viewing directions coincide modulo pi (sin(phi) = 0)."""


class IllConditioned(GeometryError):
    """A linear solve has a pivot below the degeneracy tolerance."""


class ZeroCurvatureMeasurement(GeometryError):
    """Tangential recovery with a vanishing (or wrong-sign) curvature value."""


# surface forward model -------------------------------------------------------

class AsymptoticDirection(GeometryError):
    """Projection along an asymptotic direction (p(theta) = 0)."""


class DegenerateParametrization(GeometryError):
    """Contour generator not parametrizable over u (a02*sin(theta) = 0)."""


class RootRefinementFailed(GeometryError):
    """Newton refinement of the contour generator did not converge."""


# surface reconstruction / analysis -------------------------------------------

class DegenerateConfiguration(GeometryError):
    """Singular view configuration (umbilic input, repeated angles, det ~ 0)."""


class NoRealRoots(GeometryError):
    """Recovered mean/Gauss data admits no real principal coefficients."""


class NoRealPoint(GeometryError):
    """No real point of the ambiguity conic at the requested mean curvature."""


class BranchSearchFailed(GeometryError):
    """No angle-branch combination reproduces the measured curvatures."""


class FlatUmbilic(GeometryError):
    """Both principal coefficients vanish; contour conjugacy undefined."""


class SchemaError(ValueError):
    """Scenario file fails structural validation (CLI exit status 1)."""
