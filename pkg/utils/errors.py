"""
Domain errors raised by the geometry packages.

Every error carries a stable ``code`` that the command line prints verbatim.
"""


class GeometryError(Exception):
    """Base class for all domain failures."""

    code = "geometry_error"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail

    def to_dict(self):
        return {"error": self.code, "detail": self.detail}


class InvalidInput(GeometryError):
    code = "invalid_input"


class NoSignChange(GeometryError):
    """A root bracket does not straddle a sign change."""

    code = "no_sign_change"


class DegenerateParameters(GeometryError):
    """Two of the confocal parameters a, b, c coincide."""

    code = "degenerate_parameters"


class CriticalParameter(GeometryError):
    """The family parameter hits one of a, b, c."""

    code = "critical_parameter"


class NonGenericPoint(GeometryError):
    """The point lies (numerically) on a principal plane."""

    code = "non_generic_point"


class NegativeSquare(GeometryError):
    """Confocal coordinates that do not interlace with a, b, c."""

    code = "negative_square"


class NotOnSurface(GeometryError):
    code = "not_on_surface"


class ImaginaryCurve(GeometryError):
    code = "imaginary_curve"


class NotACone(GeometryError):
    """The matrix does not define a real quadric cone."""

    code = "not_a_cone"


class ImaginaryCone(NotACone):
    """A focal-curve viewpoint whose tangent cone has no real rulings."""

    code = "imaginary_cone"


class ApexOnSurface(GeometryError):
    code = "apex_on_surface"


class ApexOnConfocalSurface(GeometryError):
    """The tangent-cone parameter coincides with a confocal coordinate of the apex."""

    code = "apex_on_confocal_surface"


class RankDeficient(GeometryError):
    code = "rank_deficient"


class DegenerateRay(GeometryError):
    code = "degenerate_ray"


class InvalidConic(GeometryError):
    code = "invalid_conic"
