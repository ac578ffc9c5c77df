"""
Least-squares cone through sampled points with a known apex.

A cone with fixed apex has five projective degrees of freedom. Every point
``p`` gives one linear constraint ``(p - u)^T C (p - u) = 0`` on the six
entries of ``C``; the fit is the smallest right singular vector of the
constraint matrix. Off-diagonal unknowns are scaled by sqrt(2) so the unit
singular vector is a unit-Frobenius matrix.
"""

import math
from typing import NamedTuple

import numpy as np
from scipy.linalg import svd

from config.settings import Config
from linalg3.types import SymMat3, as_vec3
from utils.errors import DegenerateRay, InvalidInput, RankDeficient
from utils.logger import log

ROOT2 = math.sqrt(2.0)


class ConeFit(NamedTuple):
    """
    Fitted matrix with diagnostics.

    ``residual`` is the root sum of squared constraint values over unit
    directions; ``second_smallest`` is the singular value just above the
    solution's, small when the fit is poorly determined.
    """

    matrix: SymMat3
    residual: float
    second_smallest: float


def constraint_rows(apex, points):
    """One row ``[dx^2, dy^2, dz^2, r2 dx dy, r2 dx dz, r2 dy dz]`` per unit direction."""
    apex = as_vec3(apex)
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise InvalidInput(f"expected an (n, 3) array of points, got shape {pts.shape}")
    d = pts - apex
    norms = np.linalg.norm(d, axis=1)
    scale = max(1.0, float(np.max(np.abs(pts))), float(np.max(np.abs(apex))))
    if np.any(norms <= Config.DEGENERATE_RAY_TOL * scale):
        raise DegenerateRay("a fitting point coincides with the apex")
    d = d / norms[:, None]
    x, y, z = d[:, 0], d[:, 1], d[:, 2]
    return np.column_stack([x * x, y * y, z * z, ROOT2 * x * y, ROOT2 * x * z, ROOT2 * y * z])


def fit_cone_through_points(apex, points):
    """
    Fit the quadric cone with the given apex through sampled points.

    Args:
        apex (array-like): Known apex
        points (array-like): Points on the cone, shape (n, 3)

    Returns:
        ConeFit: Unit-Frobenius matrix, residual and conditioning diagnostic
    """
    rows = constraint_rows(apex, points)
    if rows.shape[0] < Config.MIN_FIT_POINTS:
        log.warning(f"Fitting a cone through only {rows.shape[0]} points")

    _, singular, vt = svd(rows, full_matrices=True)
    rank = int(np.sum(singular > Config.FIT_RANK_TOL * singular[0]))
    if rank < 5:
        raise RankDeficient(f"constraint rank {rank} < 5; the points do not determine a cone")

    c = vt[-1]
    arr = np.array([
        [c[0], c[3] / ROOT2, c[4] / ROOT2],
        [c[3] / ROOT2, c[1], c[5] / ROOT2],
        [c[4] / ROOT2, c[5] / ROOT2, c[2]],
    ])
    matrix = SymMat3.from_array(arr)
    residual = float(np.linalg.norm(rows @ c))
    second = float(singular[4])
    log.debug(f"Cone fit: residual {residual:.3e}, second smallest singular value {second:.3e}")
    return ConeFit(matrix, residual, second)
