"""
Viewpoints from which a central conic looks like a circle.

The conic ``x^2/alpha + y^2/beta = 1`` (z = 0) is a focal curve of the
confocal system with parameters ``(alpha, beta, 0)``. The cone from a point
of the other real focal curve to the conic is circular, its axis is the
tangent to that curve, and its aperture has a closed form in the free
confocal coordinate of the apex. From any other point the cone is not
circular.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from config.settings import Config
from cone.quadric_cone import HALF_PI, CircularCone
from confocal.focal_curves import FocalCurve, FocalKind, focal_curve, focal_point_and_tangent
from confocal.system import ConfocalCoords, ConfocalSystem, canonical_squares, make_system
from linalg3.types import as_unit_vec3, as_vec3
from utils.errors import (
    CriticalParameter,
    DegenerateParameters,
    DegenerateRay,
    ImaginaryCone,
    InvalidConic,
    InvalidInput,
)
from utils.logger import log


@dataclass(frozen=True)
class Conic:
    """The central conic ``x^2/alpha + y^2/beta = 1`` in the plane z = 0."""

    alpha: float
    beta: float

    def __post_init__(self):
        alpha, beta = float(self.alpha), float(self.beta)
        if not (math.isfinite(alpha) and math.isfinite(beta)):
            raise InvalidConic(f"non-finite parameters ({alpha!r}, {beta!r})")
        if abs(alpha - beta) <= Config.PARAM_DISTINCT_TOL * max(1.0, abs(alpha), abs(beta)):
            raise DegenerateParameters(f"alpha = beta = {alpha!r} describes a circle")
        if alpha == 0.0 or beta == 0.0:
            raise InvalidConic("alpha and beta must be nonzero")
        if alpha < beta:
            raise InvalidConic(f"expected alpha > beta, got ({alpha!r}, {beta!r})")
        if alpha < 0.0:
            raise InvalidConic("alpha and beta are both negative; the conic has no real points")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def kind(self):
        return FocalKind.ELLIPSE if self.beta > 0 else FocalKind.HYPERBOLA

    @property
    def foci(self):
        f = math.sqrt(self.alpha - self.beta)
        return (np.array([f, 0.0, 0.0]), np.array([-f, 0.0, 0.0]))


class Embedding(NamedTuple):
    """
    The conic as a focal curve of its confocal system.

    ``critical`` is the role ('b' or 'c') whose degenerate surface is the conic.
    """

    system: ConfocalSystem
    conic_curve: FocalCurve
    locus: FocalCurve
    critical: str

    @property
    def critical_value(self):
        return self.system.role_value(self.critical)


@dataclass(frozen=True, eq=False)
class ViewpointResult:
    """Circular cone from a focal-curve point, with its closed-form data."""

    cone: CircularCone
    confocal_parameter: float
    aperture_cos2: float
    ell: float
    coords: ConfocalCoords
    boundary: Optional[str]
    t: float
    branch: int


def embed_conic(conic):
    """
    Place the conic in the confocal system ``(alpha, beta, 0)``.

    Args:
        conic (Conic): The curve

    Returns:
        Embedding: System, conic curve, viewpoint locus and critical role
    """
    system = make_system(conic.alpha, conic.beta, 0.0)
    curves = [focal_curve(system, kind) for kind in (FocalKind.ELLIPSE, FocalKind.HYPERBOLA)]
    conic_curve = next(curve for curve in curves if curve.plane_axis == 2)
    locus = next(curve for curve in curves if curve is not conic_curve)
    critical = "c" if conic_curve.kind is FocalKind.ELLIPSE else "b"
    log.debug(f"Conic {conic} is the focal {conic_curve.kind.value}; locus {locus.equation()}")
    return Embedding(system, conic_curve, locus, critical)


def _target_role(locus_kind):
    return "b" if locus_kind is FocalKind.ELLIPSE else "c"


def focal_view(system, locus_kind, t, branch=1, ell=None):
    """
    Circular tangent cone from a focal-curve point to the surface ``ell``.

    From the focal ellipse (free coordinate ``k3``) the cone is real for
    ``c < ell <= k3`` with ``cos^2 = (k3 - ell)/(k3 - c)``; from the focal
    hyperbola (free coordinate ``k1``) it is real for ``k1 <= ell < b`` with
    ``cos^2 = (k1 - ell)/(k1 - b)``. ``ell = None`` selects the other real
    focal curve (b from the ellipse, c from the hyperbola).

    Args:
        system (ConfocalSystem): The family
        locus_kind (FocalKind or str): Curve carrying the apex
        t (float): Curve parameter
        branch (int): Hyperbola branch
        ell (float, optional): Target surface parameter

    Returns:
        ViewpointResult
    """
    fp = focal_point_and_tangent(system, locus_kind, t, branch)
    kind = focal_curve(system, locus_kind).kind
    a, b, c = system.canonical
    ell = system.role_value(_target_role(kind)) if ell is None else float(ell)

    if kind is FocalKind.ELLIPSE:
        if abs(ell - c) <= Config.EPS_REL * system.span:
            raise CriticalParameter("ell = c is the focal ellipse carrying the apex")
        free = fp.coords.k3
        # k3 - b and ell - c computed without cancellation
        above_b = (a - b) * math.sin(fp.t) ** 2
        near = above_b + (b - ell)       # k3 - ell
        far = ell - c
        if far <= 0.0 or near < 0.0 or ell >= a:
            raise ImaginaryCone(f"no real tangent cone from k3 = {free!r} to ell = {ell!r}")
    else:
        if abs(ell - b) <= Config.EPS_REL * system.span:
            raise CriticalParameter("ell = b is the focal hyperbola carrying the apex")
        free = fp.coords.k1
        below_c = (a - c) * math.sinh(fp.t) ** 2
        near = below_c + (ell - c)       # ell - k1
        far = b - ell
        if far <= 0.0 or near < 0.0:
            raise ImaginaryCone(f"no real tangent cone from k1 = {free!r} to ell = {ell!r}")

    aperture = math.atan2(math.sqrt(far), math.sqrt(near))
    cos2 = near / (near + far)
    return ViewpointResult(
        cone=CircularCone(fp.point, fp.tangent, min(aperture, HALF_PI)),
        confocal_parameter=free,
        aperture_cos2=cos2,
        ell=ell,
        coords=fp.coords,
        boundary=fp.boundary,
        t=fp.t,
        branch=fp.branch,
    )


def viewing_cone(conic, t, branch=1):
    """
    The circular cone from the locus point at parameter ``t`` to the conic.

    Args:
        conic (Conic): Target curve
        t (float): Locus parameter
        branch (int): Branch for a hyperbola locus (sign of x)

    Returns:
        ViewpointResult
    """
    embedding = embed_conic(conic)
    return focal_view(embedding.system, embedding.locus.kind, t, branch)


class CircularityReport(NamedTuple):
    mean_angle: float
    max_deviation: float


def verify_circularity(apex, axis, curve, samples=None):
    """
    Measure how far the cone from ``apex`` over ``curve`` is from circular about ``axis``.

    Angles between each ray and the axis line are folded into [0, pi/2].

    Args:
        apex (array-like): Cone apex
        axis (array-like): Unit axis
        curve (FocalCurve): Real target curve
        samples (int, optional): Number of curve samples, at least 8

    Returns:
        CircularityReport: Mean half-angle and largest deviation from it
    """
    samples = Config.CIRCULARITY_SAMPLES if samples is None else int(samples)
    if samples < 8:
        raise InvalidInput(f"need at least 8 samples, got {samples}")
    apex = as_vec3(apex)
    axis = as_unit_vec3(axis, normalize=True)
    points = curve.sample(samples)
    rays = points - apex
    scale = max(1.0, float(np.max(np.abs(points))), float(np.max(np.abs(apex))))
    if np.any(np.linalg.norm(rays, axis=1) <= Config.DEGENERATE_RAY_TOL * scale):
        raise DegenerateRay("the apex lies on the sampled curve")

    across = np.linalg.norm(np.cross(rays, axis), axis=1)
    along = np.abs(rays @ axis)
    angles = np.arctan2(across, along)
    mean = math.fsum(angles.tolist()) / angles.size
    return CircularityReport(mean, float(np.max(np.abs(angles - mean))))


class Extreme(NamedTuple):
    """
    One end of the aperture range along a locus.

    ``points`` is empty when the value is approached only at infinity.
    """

    label: str
    theta: float
    points: tuple
    attained: bool


def _signed_points(system, squares):
    roots = np.sqrt(np.clip(squares, 0.0, None))
    found = []
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            for sz in (1.0, -1.0):
                point = system.to_user(roots * np.array([sx, sy, sz])) + 0.0
                if not any(np.array_equal(point, seen) for seen in found):
                    found.append(point)
    return tuple(found)


def _ellipse_points(system, k3):
    c = system.c
    return _signed_points(system, canonical_squares(system, (c, c, k3)))


def _hyperbola_points(system, k1):
    b = system.b
    return _signed_points(system, canonical_squares(system, (k1, b, b)))


def _check_ell(system, ell):
    ell = float(ell)
    for role, value in zip("abc", system.canonical):
        if abs(ell - value) <= Config.EPS_REL * system.span:
            return ell, role
    return ell, None


def umbilic_points(system, ell):
    """
    Points where a real focal curve pierces the surface ``ell``.

    There the circular tangent cone flattens to the tangent plane. Ellipsoids
    (``ell < c``) meet the focal hyperbola and two-sheet hyperboloids
    (``b < ell < a``) meet the focal ellipse; other surfaces have none.

    Returns:
        tuple: Points in user axes
    """
    ell, role = _check_ell(system, ell)
    if role is not None:
        raise CriticalParameter(f"ell = {ell!r} is the critical value {role}")
    a, b, c = system.canonical
    if ell < c:
        return _hyperbola_points(system, ell)
    if b < ell < a:
        return _ellipse_points(system, ell)
    return ()


def _label(extremes):
    """Name the lowest value minimum/infimum and the highest maximum/supremum."""
    ordered = sorted(extremes, key=lambda e: e[0])
    low, high = ordered[0], ordered[-1]
    return [
        Extreme("minimum" if low[2] else "infimum", low[0], low[1], low[2]),
        Extreme("maximum" if high[2] else "supremum", high[0], high[1], high[2]),
    ]


def aperture_bounds(system, locus_kind, ell=None):
    """
    Range of the aperture as the apex runs along a real focal curve.

    Args:
        system (ConfocalSystem): The family
        locus_kind (FocalKind or str): Curve carrying the apex
        ell (float, optional): Target surface, defaults to the other focal curve

    Returns:
        list: Two Extreme entries, lowest value first
    """
    curve = focal_curve(system, locus_kind)
    if not curve.is_real:
        raise InvalidInput("the imaginary focal curve carries no viewpoints")
    a, b, c = system.canonical
    kind = curve.kind
    ell = system.role_value(_target_role(kind)) if ell is None else float(ell)
    ell, role = _check_ell(system, ell)

    if kind is FocalKind.ELLIPSE:
        if role == "c" or role == "a" or not c < ell < a:
            raise ImaginaryCone(f"no real tangent cones from the focal ellipse to ell = {ell!r}")
        # k3 = a gives the smallest aperture
        lowest = (math.atan2(math.sqrt(ell - c), math.sqrt(a - ell)), _ellipse_points(system, a), True)
        if ell <= b:
            top = (math.atan2(math.sqrt(ell - c), math.sqrt(b - ell)), _ellipse_points(system, b), True)
        else:
            top = (HALF_PI, _ellipse_points(system, ell), True)
        return _label([lowest, top])

    if role == "b" or not ell < b:
        raise ImaginaryCone(f"no real tangent cones from the focal hyperbola to ell = {ell!r}")
    # aperture tends to zero far out along the branches
    lowest = (0.0, (), False)
    if ell >= c:
        top = (math.atan2(math.sqrt(b - ell), math.sqrt(ell - c)), _hyperbola_points(system, c), True)
    else:
        top = (HALF_PI, _hyperbola_points(system, ell), True)
    return _label([lowest, top])


class ApertureExtremes(NamedTuple):
    foci: tuple
    minimum: Extreme
    maximum: Extreme


def aperture_extremes(conic):
    """
    Where the conic looks flattest and roundest from its viewpoint locus.

    Args:
        conic (Conic): Target curve

    Returns:
        ApertureExtremes: Foci and the low/high ends of the aperture range
    """
    embedding = embed_conic(conic)
    low, high = aperture_bounds(embedding.system, embedding.locus.kind, embedding.critical_value)
    return ApertureExtremes(conic.foci, low, high)
