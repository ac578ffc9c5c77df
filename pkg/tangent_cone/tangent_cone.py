"""
Tangent cones from a point to a confocal surface.

For the surface ``x^T A x = 1`` and an apex ``u`` off the surface, the lines
through ``u`` with double contact form the cone with matrix
``K = A u u^T A + (1 - u^T A u) A``. Its eigenvectors are ``A_{k_i} u`` for
the confocal coordinates ``k_i`` of ``u``, independent of the surface.
"""

from dataclasses import dataclass

import numpy as np

from config.settings import Config
from cone.quadric_cone import QuadricCone
from confocal.system import ConfocalCoords, confocal_coords, inverse_gaps
from linalg3.types import SymMat3, as_vec3
from utils.errors import ApexOnConfocalSurface, ApexOnSurface
from utils.logger import log


@dataclass(frozen=True, eq=False)
class TangentConeEigensystem:
    """
    Closed-form eigen-data of ``K_{u,l}``.

    ``eigenvectors[:, i]`` is the unnormalised ``A_{k_i} u`` in user axes.
    """

    eigenvectors: np.ndarray
    eigenvalues: np.ndarray
    coords: ConfocalCoords
    ell: float

    def unit_vectors(self):
        return self.eigenvectors / np.linalg.norm(self.eigenvectors, axis=0)


def tangent_cone_matrix(system, u, ell):
    """
    The tangent cone from ``u`` to the surface ``x^T A_l x = 1``.

    Args:
        system (ConfocalSystem): The family
        u (array-like): Apex, user axes
        ell (float): Family parameter of the surface

    Returns:
        QuadricCone: Apex ``u`` with matrix ``K_{u,l}``
    """
    u = as_vec3(u)
    diag = inverse_gaps(system, ell)
    au = diag * u
    excess = float(au @ u) - 1.0
    if abs(excess) <= Config.SURFACE_TOL:
        raise ApexOnSurface(f"u^T A u - 1 = {excess:.3e}; the tangent cone is the tangent plane")
    k = SymMat3.outer(au) - excess * SymMat3.diagonal(diag)
    return QuadricCone(u, k)


def discriminant_residual(system, u, ell, x):
    """``(x^T A u - 1)^2 - (x^T A x - 1)(u^T A u - 1)``; zero on the tangent cone."""
    u = as_vec3(u)
    x = as_vec3(x)
    diag = inverse_gaps(system, ell)
    xau = float(np.sum(diag * x * u)) - 1.0
    xax = float(np.sum(diag * x * x)) - 1.0
    uau = float(np.sum(diag * u * u)) - 1.0
    return xau * xau - xax * uau


def _check_collision(system, coords, ell):
    for name, k in zip(("k1", "k2", "k3"), coords):
        if abs(ell - k) <= Config.EPS_REL * system.span:
            raise ApexOnConfocalSurface(f"ell = {ell!r} coincides with {name} = {k!r}")


def normal_vectors(system, u, coords):
    """Columns ``A_{k_i} u``: normals of the three confocal surfaces through ``u``."""
    u = as_vec3(u)
    return np.column_stack([inverse_gaps(system, k) * u for k in coords])


def product_eigenvalues(system, coords, ell):
    """``lambda_i = prod_{j != i}(l - k_j) / ((a - l)(b - l)(c - l))``."""
    ks = coords.as_array()
    denom = float(np.prod([p - ell for p in system.canonical]))
    return np.array([np.prod(ell - np.delete(ks, i)) / denom for i in range(3)])


def unified_eigenvalues(system, u, ell, coords=None):
    """``lambda_i = (u^T A_l u - 1) / (l - k_i)``."""
    u = as_vec3(u)
    if coords is None:
        coords = confocal_coords(system, u)
    excess = float(np.sum(inverse_gaps(system, ell) * u * u)) - 1.0
    return np.array([excess / (ell - k) for k in coords])


def tangent_cone_eigensystem(system, u, ell):
    """
    Eigenvectors and eigenvalues of ``K_{u,l}`` from the confocal coordinates of ``u``.

    Args:
        system (ConfocalSystem): The family
        u (array-like): Generic apex, user axes
        ell (float): Family parameter away from a, b, c and the ``k_i``

    Returns:
        TangentConeEigensystem
    """
    u = as_vec3(u)
    ell = float(ell)
    inverse_gaps(system, ell)
    coords = confocal_coords(system, u)
    _check_collision(system, coords, ell)
    return TangentConeEigensystem(
        eigenvectors=normal_vectors(system, u, coords),
        eigenvalues=product_eigenvalues(system, coords, ell),
        coords=coords,
        ell=ell,
    )


def degenerate_eigenvalues(system, coords, critical):
    """
    Eigenvalues of ``lim_{l -> m} (m - l) K_{u,l}`` for the critical value ``m``:
    ``prod_{j != i}(m - k_j) / prod_{p != m}(p - m)``.

    Args:
        system (ConfocalSystem): The family
        coords (ConfocalCoords): Confocal coordinates of the apex
        critical (str): ``'a'``, ``'b'`` or ``'c'``

    Returns:
        np.ndarray: ``(lambda_1, lambda_2, lambda_3)``
    """
    m = system.role_value(critical)
    others = [p for role, p in zip("abc", system.canonical) if role != critical]
    ks = coords.as_array()
    denom = float(np.prod([p - m for p in others]))
    return np.array([np.prod(m - np.delete(ks, i)) / denom for i in range(3)])


def degenerate_cone_matrix(system, u, critical):
    """
    The cone from ``u`` over a focal curve, by spectral synthesis.

    ``critical = 'c'`` gives the cone over the focal ellipse, ``'b'`` over
    the focal hyperbola and ``'a'`` the imaginary cone.

    Args:
        system (ConfocalSystem): The family
        u (array-like): Generic apex, user axes
        critical (str): ``'a'``, ``'b'`` or ``'c'``

    Returns:
        QuadricCone
    """
    u = as_vec3(u)
    coords = confocal_coords(system, u)
    values = degenerate_eigenvalues(system, coords, critical)
    vectors = normal_vectors(system, u, coords)
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    matrix = vectors @ np.diag(values) @ vectors.T
    log.debug(f"Degenerate cone at {u.tolist()} for critical {critical}: eigenvalues {values.tolist()}")
    return QuadricCone(u, SymMat3.from_array(matrix, tol=1e-9))
