"""
Quadric and circular cones.

A quadric cone is the zero set of ``(x - u)^T C (x - u)`` for a symmetric
matrix ``C``. The matrix is only defined up to a nonzero scalar. The cone
is circular exactly when two eigenvalues of the same sign coincide.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from config.settings import Config
from linalg3.eigen import eigen_sym3
from linalg3.types import SymMat3, as_unit_vec3, as_vec3, reflection_across_plane
from utils.errors import InvalidInput, NotACone
from utils.logger import log

HALF_PI = 0.5 * math.pi


class ConeClass(Enum):
    """Real geometry of ``x^T C x = 0`` read off the eigenvalue signs."""

    POINT_ONLY = "point_only"
    REAL_CONE = "real_cone"
    DEGENERATE = "degenerate"


@dataclass(frozen=True, eq=False)
class Plane:
    """The plane ``{x : normal . x = offset}``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", as_unit_vec3(self.normal, normalize=True))
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def through(cls, point, normal):
        n = as_unit_vec3(normal, normalize=True)
        return cls(n, float(n @ as_vec3(point)))

    def signed_distance(self, x):
        return float(self.normal @ as_vec3(x)) - self.offset

    def contains(self, x, tol=None):
        tol = Config.EPS_REL if tol is None else tol
        return abs(self.signed_distance(x)) <= tol * max(1.0, float(np.linalg.norm(x)))


@dataclass(frozen=True, eq=False)
class QuadricCone:
    """Apex ``u`` with the symmetric form ``C``."""

    apex: np.ndarray
    matrix: SymMat3

    def __post_init__(self):
        object.__setattr__(self, "apex", as_vec3(self.apex))
        if self.matrix.is_zero():
            raise InvalidInput("cone matrix must be nonzero")


@dataclass(frozen=True, eq=False)
class CircularCone:
    """Apex, unit axis and aperture ``theta`` in [0, pi/2]."""

    apex: np.ndarray
    axis: np.ndarray
    aperture: float

    def __post_init__(self):
        object.__setattr__(self, "apex", as_vec3(self.apex))
        object.__setattr__(self, "axis", as_unit_vec3(self.axis, normalize=True))
        aperture = float(self.aperture)
        if not 0.0 <= aperture <= HALF_PI:
            raise InvalidInput(f"aperture {aperture!r} outside [0, pi/2]")
        object.__setattr__(self, "aperture", aperture)

    @property
    def cos2(self):
        return 0.0 if self.aperture == HALF_PI else math.cos(self.aperture) ** 2

    def as_quadric(self):
        return QuadricCone(self.apex, cone_matrix(self.axis, self.aperture))

    def ray(self, phase):
        """Unit direction of the ruling at azimuth ``phase`` around the axis."""
        helper = np.array([1.0, 0.0, 0.0]) if abs(self.axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        e1 = np.cross(self.axis, helper)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(self.axis, e1)
        radial = math.cos(phase) * e1 + math.sin(phase) * e2
        return math.cos(self.aperture) * self.axis + math.sin(self.aperture) * radial


class CircularParameters(NamedTuple):
    axis: np.ndarray
    aperture: float

    @property
    def cos2(self):
        return math.cos(self.aperture) ** 2


class SymmetryPlanes(NamedTuple):
    """
    Principal planes of a real cone.

    For a circular cone ``rotational`` is set, ``axis`` is the axis of
    revolution and ``planes[0]`` is the plane normal to it; the other two
    are representatives of the rotational family.
    """

    planes: tuple
    rotational: bool
    axis: Optional[np.ndarray]


def cone_matrix(axis, aperture):
    """
    Circular cone form ``r r^T - cos^2(theta) I``.

    Args:
        axis (array-like): Unit axis ``r``
        aperture (float): Half-angle ``theta`` in [0, pi/2]

    Returns:
        SymMat3: The cone matrix
    """
    r = as_unit_vec3(axis)
    aperture = float(aperture)
    if not 0.0 <= aperture <= HALF_PI:
        raise InvalidInput(f"aperture {aperture!r} outside [0, pi/2]")
    cos2 = 0.0 if aperture == HALF_PI else math.cos(aperture) ** 2
    return SymMat3.outer(r) - cos2 * SymMat3.identity()


def membership_residual(cone, x):
    """``(x - u)^T C (x - u)``; zero on the cone."""
    d = as_vec3(x) - cone.apex
    return cone.matrix.quad_form(d)


def _require_nonzero(matrix):
    if matrix.is_zero():
        raise InvalidInput("cone matrix must be nonzero")


def classify(matrix):
    """
    Classify the cone ``x^T C x = 0`` by eigenvalue signs.

    Args:
        matrix (SymMat3): Nonzero symmetric form

    Returns:
        ConeClass: POINT_ONLY, REAL_CONE or DEGENERATE
    """
    _require_nonzero(matrix)
    values = eigen_sym3(matrix).eigenvalues
    tol = Config.EPS_REL * float(np.max(np.abs(values)))
    if np.any(np.abs(values) <= tol):
        return ConeClass.DEGENERATE
    if np.all(values > 0) or np.all(values < 0):
        return ConeClass.POINT_ONLY
    return ConeClass.REAL_CONE


def _split_spectrum(decomp):
    """
    Split a mixed-sign spectrum into the isolated eigenpair and the same-sign pair.

    Returns:
        tuple: (isolated index, (pair indices))
    """
    values = decomp.eigenvalues
    if values[1] > 0:
        return 0, (1, 2)
    return 2, (0, 1)


def _require_real_cone(matrix):
    kind = classify(matrix)
    if kind is not ConeClass.REAL_CONE:
        raise NotACone(f"matrix classifies as {kind.value}")


def circular_parameters(matrix, rel_gap=None):
    """
    Axis and aperture of a circular cone matrix.

    Args:
        matrix (SymMat3): Real cone form
        rel_gap (float, optional): Relative gap under which the two
            same-sign eigenvalues count as equal

    Returns:
        CircularParameters or None: None when the cone is not circular
    """
    rel_gap = Config.CIRCULAR_GAP_REL if rel_gap is None else rel_gap
    _require_real_cone(matrix)
    decomp = eigen_sym3(matrix)
    isolated, (i, j) = _split_spectrum(decomp)
    values = decomp.eigenvalues
    gap = abs(values[i] - values[j]) / max(abs(values[i]), abs(values[j]))
    if gap > rel_gap:
        log.debug(f"Same-sign eigenvalue gap {gap:.3e} exceeds {rel_gap:.1e}, cone is not circular")
        return None

    mu = 0.5 * (abs(values[i]) + abs(values[j]))
    lam = abs(values[isolated])
    # cos^2 = mu / (mu - lambda) with opposite signs
    aperture = math.atan2(math.sqrt(lam), math.sqrt(mu))
    return CircularParameters(decomp.vector(isolated), aperture)


def symmetry_planes(cone, rel_gap=None):
    """
    Principal planes through the apex, normal to the eigenvectors of ``C``.

    Args:
        cone (QuadricCone): A real cone
        rel_gap (float, optional): Circularity gap, see ``circular_parameters``

    Returns:
        SymmetryPlanes: Three planes and the rotational flag
    """
    _require_real_cone(cone.matrix)
    decomp = eigen_sym3(cone.matrix)
    circular = circular_parameters(cone.matrix, rel_gap=rel_gap)
    if circular is None:
        planes = tuple(Plane.through(cone.apex, decomp.vector(i)) for i in range(3))
        return SymmetryPlanes(planes, False, None)

    isolated, pair = _split_spectrum(decomp)
    order = (isolated, *pair)
    planes = tuple(Plane.through(cone.apex, decomp.vector(i)) for i in order)
    return SymmetryPlanes(planes, True, circular.axis)


def is_reflection_symmetry(cone, normal, tol=None):
    """
    Whether reflection across the plane through the apex normal to ``normal``
    maps the cone to itself, i.e. ``R C R = C``.

    Args:
        cone (QuadricCone): A real cone
        normal (array-like): Unit plane normal
        tol (float, optional): Relative tolerance on ``R C R - C``

    Returns:
        bool
    """
    tol = Config.REFLECTION_TOL if tol is None else tol
    _require_real_cone(cone.matrix)
    reflected = cone.matrix.congruence(reflection_across_plane(normal).array)
    return (reflected - cone.matrix).max_abs() <= tol * cone.matrix.max_abs()


def normalized(matrix):
    """Rescale so the eigenvalue of largest magnitude is +1 or -1."""
    _require_nonzero(matrix)
    values = eigen_sym3(matrix).eigenvalues
    return matrix * (1.0 / float(np.max(np.abs(values))))


def cone_similarity(first, second):
    """Absolute cosine between the two matrices viewed as 9-vectors."""
    a = first.array.ravel()
    b = second.array.ravel()
    return abs(float(a @ b)) / (float(np.linalg.norm(a)) * float(np.linalg.norm(b)))


def same_cone(first, second, tol=None):
    """Whether two matrices agree up to a nonzero scalar."""
    tol = Config.EPS_REL if tol is None else tol
    return cone_similarity(first, second) >= 1.0 - tol
