"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for all geometric failures."""


class DegenerateInput(GeometryError):
    """Input points do not span a 2-dimensional convex body."""


class PointNotInterior(GeometryError):
    """A polar/base point is not interior (with margin) to the body."""


class ShiftOutOfRange(GeometryError):
    """Projective shift parameter z is outside the polar of the body."""


class SingularMap(GeometryError):
    """Affine map is (numerically) singular."""


class BadParams(GeometryError):
    """Parameters outside their valid range."""


class ConvergenceFailure(GeometryError):
    """An iterative solver did not meet its tolerance."""


class NoRoot(GeometryError):
    """Bracketing sign conditions for a root solve are not satisfied."""


class NoContacts(GeometryError):
    """No boundary contacts found when verifying John conditions."""


class EmptyResult(GeometryError):
    """A set operation produced an empty body."""


class CertificationFailure(GeometryError):
    """A certificate residual exceeded its tolerance."""
