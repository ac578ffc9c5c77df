"""
Focal curves of a confocal system.

As k tends to c the family flattens onto the focal ellipse in the canonical
plane z = 0; as k tends to b it flattens onto the focal hyperbola in y = 0.
The third conic, in x = 0, has no real points. Curves are described in user
axes; parametrisations are written in canonical axes and mapped back.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from config.settings import Config
from confocal.system import ConfocalCoords, ConfocalSystem
from linalg3.types import as_vec3
from utils.errors import ImaginaryCurve, InvalidInput
from utils.logger import log

AXIS_NAMES = ("x", "y", "z")


class FocalKind(Enum):
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    IMAGINARY = "imaginary"


# kind -> (canonical plane index, canonical in-plane axes)
_CANONICAL_LAYOUT = {
    FocalKind.ELLIPSE: (2, (0, 1)),
    FocalKind.HYPERBOLA: (1, (0, 2)),
    FocalKind.IMAGINARY: (0, (1, 2)),
}


def _canonical_denominators(system, kind):
    a, b, c = system.canonical
    if kind is FocalKind.ELLIPSE:
        return (a - c, b - c)
    if kind is FocalKind.HYPERBOLA:
        return (a - b, c - b)
    return (b - a, c - a)


def _as_kind(kind):
    if isinstance(kind, FocalKind):
        return kind
    try:
        return FocalKind(str(kind).lower())
    except ValueError:
        raise InvalidInput(f"unknown focal curve {kind!r}") from None


@dataclass(frozen=True)
class FocalCurve:
    """
    A focal conic ``sum x_i^2 / d_i = 1`` in the plane ``x_plane = 0`` (user axes).

    ``axes`` lists the two in-plane user axes in ascending order and
    ``denominators`` the matching ``d_i``.
    """

    system: ConfocalSystem
    kind: FocalKind
    plane_axis: int
    axes: tuple
    denominators: tuple

    @property
    def is_real(self):
        return self.kind is not FocalKind.IMAGINARY

    def equation(self):
        """Readable equation, e.g. ``x^2/2 - z^2 = 1 (y=0)``."""
        terms = []
        for axis, denom in zip(self.axes, self.denominators):
            term = f"{AXIS_NAMES[axis]}^2"
            if abs(denom) != 1.0:
                term += "/{:.12g}".format(abs(denom))
            terms.append(("-" if denom < 0 else "+", term))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, term in terms[1:]:
            text += f" {sign} {term}"
        return f"{text} = 1 ({AXIS_NAMES[self.plane_axis]}=0)"

    def residual(self, x):
        """Largest of the in-plane equation residual and the off-plane offset."""
        x = as_vec3(x)
        value = sum(x[axis] ** 2 / denom for axis, denom in zip(self.axes, self.denominators)) - 1.0
        return max(abs(value), abs(float(x[self.plane_axis])))

    # ------------------------------------------------------------
    # Parametrisation
    # ------------------------------------------------------------
    def _require_real(self):
        if not self.is_real:
            raise ImaginaryCurve(f"the focal curve {self.equation()} has no real points")

    def points(self, ts, branch=1):
        """Points at parameters ``ts`` as an array of shape (n, 3), user axes."""
        self._require_real()
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        a, b, c = self.system.canonical
        canonical = np.zeros((ts.size, 3))
        if self.kind is FocalKind.ELLIPSE:
            canonical[:, 0] = math.sqrt(a - c) * np.cos(ts)
            canonical[:, 1] = math.sqrt(b - c) * np.sin(ts)
        else:
            canonical[:, 0] = _branch(branch) * math.sqrt(a - b) * np.cosh(ts)
            canonical[:, 2] = math.sqrt(b - c) * np.sinh(ts)
        user = np.empty_like(canonical)
        user[:, list(self.system.perm)] = canonical
        return user

    def point(self, t, branch=1):
        return self.points([t], branch)[0]

    def derivative(self, t, branch=1):
        """d/dt of the parametrisation, user axes."""
        self._require_real()
        a, b, c = self.system.canonical
        canonical = np.zeros(3)
        if self.kind is FocalKind.ELLIPSE:
            canonical[0] = -math.sqrt(a - c) * math.sin(t)
            canonical[1] = math.sqrt(b - c) * math.cos(t)
        else:
            canonical[0] = _branch(branch) * math.sqrt(a - b) * math.sinh(t)
            canonical[2] = math.sqrt(b - c) * math.cosh(t)
        return self.system.to_user(canonical)

    def tangent(self, t, branch=1):
        d = self.derivative(t, branch)
        return d / np.linalg.norm(d)

    def sample_parameters(self, count):
        """
        Parameters for ``count`` samples.

        The ellipse is sampled uniformly in angle; a hyperbola gets half
        the samples on each branch over ``[-span, span]``.

        Returns:
            tuple: (parameters, branches) as arrays
        """
        self._require_real()
        count = int(count)
        if count < 1:
            raise InvalidInput(f"sample count must be positive, got {count}")
        if self.kind is FocalKind.ELLIPSE:
            return np.linspace(0.0, 2.0 * np.pi, count, endpoint=False), np.ones(count, dtype=int)
        span = Config.HYPERBOLA_SAMPLE_SPAN
        n_plus = (count + 1) // 2
        n_minus = count - n_plus
        ts = np.concatenate([np.linspace(-span, span, n_plus), np.linspace(-span, span, n_minus)])
        branches = np.concatenate([np.ones(n_plus, dtype=int), -np.ones(n_minus, dtype=int)])
        return ts, branches

    def sample(self, count):
        ts, branches = self.sample_parameters(count)
        out = np.empty((ts.size, 3))
        for sign in (1, -1):
            mask = branches == sign
            if np.any(mask):
                out[mask] = self.points(ts[mask], sign)
        return out

    def distance(self, x):
        """Euclidean distance from ``x`` to the curve (dense scan, then bounded refinement)."""
        self._require_real()
        x = as_vec3(x)
        if self.kind is FocalKind.ELLIPSE:
            pieces = ((0.0, 2.0 * np.pi, 1),)
        else:
            span = Config.DISTANCE_SCAN_SPAN
            pieces = ((-span, span, 1), (-span, span, -1))

        best = math.inf
        for lo, hi, branch in pieces:
            ts = np.linspace(lo, hi, Config.DISTANCE_SCAN_SAMPLES)
            dists = np.linalg.norm(self.points(ts, branch) - x, axis=1)
            i = int(np.argmin(dists))
            step = ts[1] - ts[0]
            refined = minimize_scalar(
                lambda t: float(np.linalg.norm(self.point(t, branch) - x)),
                bounds=(ts[i] - step, ts[i] + step),
                method="bounded",
                options={"xatol": 1e-12},
            )
            best = min(best, float(dists[i]), float(refined.fun))
        return best


def _branch(branch):
    if branch not in (1, -1):
        raise InvalidInput(f"branch must be +1 or -1, got {branch!r}")
    return float(branch)


def focal_curve(system, kind):
    """
    Focal curve descriptor in user axes.

    Args:
        system (ConfocalSystem): The family
        kind (FocalKind or str): ``ellipse``, ``hyperbola`` or ``imaginary``

    Returns:
        FocalCurve
    """
    kind = _as_kind(kind)
    plane, in_plane = _CANONICAL_LAYOUT[kind]
    denoms = _canonical_denominators(system, kind)
    pairs = sorted((system.perm[i], d) for i, d in zip(in_plane, denoms))
    return FocalCurve(
        system=system,
        kind=kind,
        plane_axis=system.perm[plane],
        axes=tuple(axis for axis, _ in pairs),
        denominators=tuple(d for _, d in pairs),
    )


class FocalPoint(NamedTuple):
    """
    A point on a real focal curve with its tangent and collided confocal coordinates.

    ``boundary`` names the parameter ('a', 'b' or 'c') that the free
    coordinate reaches at a curve vertex, otherwise None.
    """

    point: np.ndarray
    tangent: np.ndarray
    coords: ConfocalCoords
    boundary: Optional[str]
    t: float
    branch: int


def focal_point_and_tangent(system, kind, t, branch=1):
    """
    Point, unit tangent and confocal coordinates at parameter ``t``.

    On the focal ellipse the coordinates are ``(c, c, k3)`` with
    ``k3 = b + (a - b) sin^2 t``; on the focal hyperbola they are
    ``(k1, b, b)`` with ``k1 = c - (a - c) sinh^2 t``.

    Args:
        system (ConfocalSystem): The family
        kind (FocalKind or str): ``ellipse`` or ``hyperbola``
        t (float): Curve parameter
        branch (int): Hyperbola branch, sign of the canonical x-coordinate

    Returns:
        FocalPoint
    """
    t = float(t)
    if not math.isfinite(t):
        raise InvalidInput(f"non-finite curve parameter {t!r}")
    curve = focal_curve(system, kind)
    if not curve.is_real:
        raise ImaginaryCurve("the imaginary focal curve has no points")

    a, b, c = system.canonical
    boundary = None
    if curve.kind is FocalKind.ELLIPSE:
        sin2, cos2 = math.sin(t) ** 2, math.cos(t) ** 2
        coords = ConfocalCoords(c, c, b + (a - b) * sin2)
        if sin2 <= Config.EPS_REL:
            boundary = "b"
        elif cos2 <= Config.EPS_REL:
            boundary = "a"
    else:
        _branch(branch)
        if abs(t) > Config.HYPERBOLA_MAX_PARAMETER:
            raise InvalidInput(
                f"hyperbola parameter |t| = {abs(t)!r} exceeds {Config.HYPERBOLA_MAX_PARAMETER!r}"
            )
        sinh2 = math.sinh(t) ** 2
        coords = ConfocalCoords(c - (a - c) * sinh2, b, b)
        if sinh2 <= Config.EPS_REL:
            boundary = "c"

    if boundary is not None:
        log.warning(f"Focal {curve.kind.value} vertex at t={t!r}: free coordinate reaches {boundary}")

    point = curve.point(t, branch)
    tangent = curve.tangent(t, branch)
    if not (np.all(np.isfinite(point)) and np.all(np.isfinite(tangent))):
        raise InvalidInput(f"focal {curve.kind.value} point at t={t!r} is not representable")

    return FocalPoint(
        point=point,
        tangent=tangent,
        coords=coords,
        boundary=boundary,
        t=t,
        branch=int(branch),
    )
