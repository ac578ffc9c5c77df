"""
The confocal family ``x^2/(a-k) + y^2/(b-k) + z^2/(c-k) = 1``.

The user supplies the three parameters along x, y and z in any order. The
system keeps that input and also the canonical values ``a > b > c`` with
the permutation relating them: ``perm[i]`` is the user axis carrying
canonical role ``i`` (0 for a, 1 for b, 2 for c). ``sys.a``, ``sys.b`` and
``sys.c`` are always the canonical values. Confocal coordinates are
canonical; points, planes and matrices are reported in user axes.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from config.settings import Config
from cone.quadric_cone import Plane
from linalg3.roots import solve_bracketed_cubic
from linalg3.types import MonicCubic, SymMat3, as_vec3
from utils.errors import (
    CriticalParameter,
    DegenerateParameters,
    InvalidInput,
    NegativeSquare,
    NonGenericPoint,
    NotOnSurface,
)
from utils.logger import log

ROLE_NAMES = ("a", "b", "c")


class SurfaceClass(Enum):
    ELLIPSOID = "ellipsoid"
    HYPERBOLOID_ONE_SHEET = "hyperboloid_one_sheet"
    HYPERBOLOID_TWO_SHEETS = "hyperboloid_two_sheets"
    IMAGINARY = "imaginary"
    FOCAL_DEGENERATE = "focal_degenerate"


@dataclass(frozen=True)
class ConfocalSystem:
    """Distinct parameters along the user axes with their canonical ordering."""

    user_params: tuple
    perm: tuple

    @property
    def a(self):
        return self.user_params[self.perm[0]]

    @property
    def b(self):
        return self.user_params[self.perm[1]]

    @property
    def c(self):
        return self.user_params[self.perm[2]]

    @property
    def canonical(self):
        return (self.a, self.b, self.c)

    @property
    def span(self):
        return self.a - self.c

    @property
    def roles(self):
        """Role letter of each user axis, e.g. ``('c', 'a', 'b')``."""
        letters = [""] * 3
        for role, axis in enumerate(self.perm):
            letters[axis] = ROLE_NAMES[role]
        return tuple(letters)

    def role_value(self, role):
        """Canonical value for a role letter ``'a'``, ``'b'`` or ``'c'``."""
        if role not in ROLE_NAMES:
            raise InvalidInput(f"unknown critical role {role!r}")
        return self.canonical[ROLE_NAMES.index(role)]

    def to_canonical(self, vec):
        v = as_vec3(vec)
        return v[list(self.perm)]

    def to_user(self, vec):
        v = np.asarray(vec, dtype=float)
        out = np.empty(3)
        out[list(self.perm)] = v
        return out


@dataclass(frozen=True)
class ConfocalCoords:
    """Canonical confocal coordinates, ``k1 < c < k2 < b < k3 < a`` for generic points."""

    k1: float
    k2: float
    k3: float

    def __iter__(self):
        return iter((self.k1, self.k2, self.k3))

    def as_array(self):
        return np.array([self.k1, self.k2, self.k3])


def make_system(a, b, c):
    """
    Build a confocal system from the parameters along x, y, z.

    Args:
        a, b, c (float): Pairwise distinct parameters

    Returns:
        ConfocalSystem: System with its canonical permutation
    """
    params = tuple(float(p) for p in (a, b, c))
    if not all(math.isfinite(p) for p in params):
        raise InvalidInput(f"non-finite parameters {params}")
    scale = max(1.0, *(abs(p) for p in params))
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(params[i] - params[j]) <= Config.PARAM_DISTINCT_TOL * scale:
                raise DegenerateParameters(
                    f"parameters {params[i]!r} and {params[j]!r} coincide; "
                    "the family would be surfaces of revolution"
                )
    perm = tuple(sorted(range(3), key=lambda i: -params[i]))
    log.debug(f"Confocal system {params} with canonical permutation {perm}")
    return ConfocalSystem(params, perm)


def _check_parameter(system, k):
    k = float(k)
    if not math.isfinite(k):
        raise InvalidInput(f"non-finite family parameter {k!r}")
    for role, value in zip(ROLE_NAMES, system.canonical):
        if abs(k - value) <= Config.EPS_REL * system.span:
            raise CriticalParameter(f"k = {k!r} hits {role} = {value!r}")
    return k


def inverse_gaps(system, k):
    """``1/(p - k)`` for each user-axis parameter ``p``."""
    k = _check_parameter(system, k)
    return np.array([1.0 / (p - k) for p in system.user_params])


def matrix_at(system, k, canonical=False):
    """
    ``A_k = diag(1/(a-k), 1/(b-k), 1/(c-k))``.

    Args:
        system (ConfocalSystem): The family
        k (float): Family parameter away from a, b, c
        canonical (bool): Return the canonical-axis form instead of user axes

    Returns:
        SymMat3: Diagonal form
    """
    diag = inverse_gaps(system, k)
    if canonical:
        diag = diag[list(system.perm)]
    return SymMat3.diagonal(diag)


def classify_surface(system, k):
    """Surface type of ``x^T A_k x = 1`` from the position of k among a, b, c."""
    k = float(k)
    tol = Config.EPS_REL * system.span
    if any(abs(k - value) <= tol for value in system.canonical):
        return SurfaceClass.FOCAL_DEGENERATE
    if k < system.c:
        return SurfaceClass.ELLIPSOID
    if k < system.b:
        return SurfaceClass.HYPERBOLOID_ONE_SHEET
    if k < system.a:
        return SurfaceClass.HYPERBOLOID_TWO_SHEETS
    return SurfaceClass.IMAGINARY


def surface_residual(system, k, x):
    """``x^T A_k x - 1``."""
    x = as_vec3(x)
    return float(np.sum(inverse_gaps(system, k) * x * x)) - 1.0


def phi(system, u):
    """
    The monic cubic whose roots are the confocal coordinates of ``u``:
    ``(b-k)(c-k)u^2 + (a-k)(c-k)v^2 + (a-k)(b-k)w^2 - (a-k)(b-k)(c-k)``.

    Args:
        system (ConfocalSystem): The family
        u (array-like): Point in user axes

    Returns:
        MonicCubic: Expanded coefficients
    """
    sq = as_vec3(u) ** 2
    p = np.array(system.user_params)
    q = np.roll(p, -1)
    r = np.roll(p, -2)
    c2 = -float(p.sum()) + float(sq.sum())
    c1 = float(p @ q) - float(sq @ (q + r))
    c0 = -float(np.prod(p)) + float(sq @ (q * r))
    return MonicCubic(c2, c1, c0)


def phi_factored(system, u):
    """Evaluate the same cubic in product form, accurate near its roots."""
    sq = as_vec3(u) ** 2
    p = system.user_params

    def evaluate(k):
        g = [pi - k for pi in p]
        return (
            g[1] * g[2] * sq[0]
            + g[0] * g[2] * sq[1]
            + g[0] * g[1] * sq[2]
            - g[0] * g[1] * g[2]
        )

    return evaluate


def confocal_coords(system, u, tol=None):
    """
    The three family parameters of the surfaces through a generic point.

    Args:
        system (ConfocalSystem): The family
        u (array-like): Point in user axes, off every principal plane
        tol (float, optional): Relative size under which a component counts as zero

    Returns:
        ConfocalCoords: ``k1 < c < k2 < b < k3 < a``
    """
    tol = Config.NON_GENERIC_REL if tol is None else tol
    u = as_vec3(u)
    scale = max(1.0, float(np.linalg.norm(u)))
    if np.any(np.abs(u) <= tol * scale):
        raise NonGenericPoint(f"point {u.tolist()} lies on a principal plane")

    a, b, c = system.canonical
    lower = c - float(u @ u) - (a - c) - 1.0
    brackets = ((lower, c), (c, b), (b, a))
    log.debug(f"Confocal brackets {brackets}")
    roots = solve_bracketed_cubic(phi(system, u), brackets, evaluate=phi_factored(system, u))
    return ConfocalCoords(*roots)


def canonical_squares(system, coords):
    """Squared canonical coordinates from the product formulas."""
    a, b, c = system.canonical
    k1, k2, k3 = coords
    return np.array([
        (a - k1) * (a - k2) * (a - k3) / ((b - a) * (c - a)),
        (b - k1) * (b - k2) * (b - k3) / ((a - b) * (c - b)),
        (c - k1) * (c - k2) * (c - k3) / ((a - c) * (b - c)),
    ])


def cartesian_from_confocal(system, coords, signs=(1, 1, 1)):
    """
    The point with the given confocal coordinates in the chosen octant.

    Args:
        system (ConfocalSystem): The family
        coords (ConfocalCoords or iterable): ``(k1, k2, k3)``, interlaced with c, b, a
        signs (iterable): ``+1`` or ``-1`` per user axis

    Returns:
        np.ndarray: Point in user axes
    """
    coords = ConfocalCoords(*(float(k) for k in coords))
    signs = tuple(int(s) for s in signs)
    if len(signs) != 3 or any(s not in (1, -1) for s in signs):
        raise InvalidInput(f"signs must be three of +1/-1, got {signs}")

    a, b, c = system.canonical
    slack = Config.EPS_REL * system.span
    k1, k2, k3 = coords
    if not (k1 <= c + slack and c - slack <= k2 <= b + slack and b - slack <= k3 <= a + slack):
        raise NegativeSquare(f"coordinates {tuple(coords)} do not interlace with ({c}, {b}, {a})")

    squares = canonical_squares(system, coords)
    scale = max(1.0, system.span, *(abs(k) for k in coords)) ** 2
    if np.any(squares < -Config.NEGATIVE_SQUARE_TOL * scale):
        raise NegativeSquare(f"squared coordinates {squares.tolist()} include a negative value")
    point = system.to_user(np.sqrt(np.clip(squares, 0.0, None)))
    return point * np.array(signs, dtype=float) + 0.0


def tangent_plane(system, k, u):
    """
    Tangent plane ``x^T A_k u = 1`` to the surface k at the point ``u``.

    Args:
        system (ConfocalSystem): The family
        k (float): Family parameter of the surface
        u (array-like): Point on that surface

    Returns:
        Plane: Plane through ``u`` with normal along ``A_k u``
    """
    u = as_vec3(u)
    residual = surface_residual(system, k, u)
    if abs(residual) > Config.SURFACE_TOL:
        raise NotOnSurface(f"u^T A u - 1 = {residual:.3e} at k = {k!r}")
    normal = inverse_gaps(system, k) * u
    return Plane.through(u, normal)


def sample_surface(system, k, grid=None, span=None):
    """
    Grid of points on the real surface ``x^T A_k x = 1``.

    Ellipsoids use polar and azimuthal angles; hyperboloids use a
    hyperbolic parameter in ``[-span, span]`` (``[0, span]`` per sheet for
    two sheets) against the azimuth.

    Args:
        system (ConfocalSystem): The family
        k (float): Family parameter of a real surface
        grid (tuple, optional): (rows, columns)
        span (float, optional): Hyperbolic parameter range

    Returns:
        tuple: (SurfaceClass, array of shape (rows, columns, 3) in user axes)
    """
    rows, cols = grid or Config.EXPORT_SURFACE_GRID
    span = Config.EXPORT_SURFACE_SPAN if span is None else span
    kind = classify_surface(system, k)
    a, b, c = system.canonical
    psi = np.linspace(0.0, 2.0 * np.pi, cols, endpoint=False)

    if kind is SurfaceClass.ELLIPSOID:
        polar = np.linspace(0.0, np.pi, rows)[:, None]
        canonical = np.stack([
            math.sqrt(a - k) * np.sin(polar) * np.cos(psi),
            math.sqrt(b - k) * np.sin(polar) * np.sin(psi),
            math.sqrt(c - k) * np.cos(polar) * np.ones_like(psi),
        ], axis=-1)
    elif kind is SurfaceClass.HYPERBOLOID_ONE_SHEET:
        s = np.linspace(-span, span, rows)[:, None]
        canonical = np.stack([
            math.sqrt(a - k) * np.cosh(s) * np.cos(psi),
            math.sqrt(b - k) * np.cosh(s) * np.sin(psi),
            math.sqrt(k - c) * np.sinh(s) * np.ones_like(psi),
        ], axis=-1)
    elif kind is SurfaceClass.HYPERBOLOID_TWO_SHEETS:
        half = rows // 2
        sheet = np.concatenate([np.ones(rows - half), -np.ones(half)])[:, None]
        s = np.concatenate([np.linspace(0.0, span, rows - half), np.linspace(0.0, span, half)])[:, None]
        canonical = np.stack([
            sheet * math.sqrt(a - k) * np.cosh(s) * np.ones_like(psi),
            math.sqrt(k - b) * np.sinh(s) * np.cos(psi),
            math.sqrt(k - c) * np.sinh(s) * np.sin(psi),
        ], axis=-1)
    else:
        raise InvalidInput(f"surface k = {k!r} is {kind.value} and has no real points to sample")

    user = np.empty_like(canonical)
    user[..., list(system.perm)] = canonical
    return kind, user
