"""
Symmetric 3x3 eigensolver.

Eigenvalues come from the closed-form trigonometric solution of the
characteristic polynomial; eigenvectors from cross products of the rows of
``M - lambda I``. A few cyclic Jacobi sweeps then polish the pair to full
working precision. Near-coincident eigenvalues skip the closed form and run
Jacobi from the identity.
"""

import math

import numpy as np

from config.settings import Config
from linalg3.types import EigenDecomp3, canonical_sign
from utils.logger import log


def analytic_eigenvalues(arr):
    """
    Eigenvalues of a symmetric 3x3 array by the trigonometric method.

    Args:
        arr (np.ndarray): Symmetric 3x3 array

    Returns:
        np.ndarray: Eigenvalues, ascending
    """
    off = arr[0, 1] ** 2 + arr[0, 2] ** 2 + arr[1, 2] ** 2
    if off == 0.0:
        return np.sort(np.diag(arr))

    q = np.trace(arr) / 3.0
    p2 = (arr[0, 0] - q) ** 2 + (arr[1, 1] - q) ** 2 + (arr[2, 2] - q) ** 2 + 2.0 * off
    p = math.sqrt(p2 / 6.0)
    b = (arr - q * np.eye(3)) / p
    r = float(np.linalg.det(b)) / 2.0

    # Rounding can push r just outside [-1, 1]
    if r <= -1.0:
        phi = math.pi / 3.0
    elif r >= 1.0:
        phi = 0.0
    else:
        phi = math.acos(r) / 3.0

    largest = q + 2.0 * p * math.cos(phi)
    smallest = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    middle = 3.0 * q - largest - smallest
    return np.sort(np.array([smallest, middle, largest]))


def _null_vector(arr, value):
    """Unit vector spanning the kernel of ``arr - value I`` (assumed rank two)."""
    shifted = arr - value * np.eye(3)
    candidates = (
        np.cross(shifted[0], shifted[1]),
        np.cross(shifted[0], shifted[2]),
        np.cross(shifted[1], shifted[2]),
    )
    best = max(candidates, key=lambda v: float(v @ v))
    norm = float(np.linalg.norm(best))
    if norm == 0.0:
        return None
    return best / norm


def _analytic_basis(arr, values):
    """Orthonormal eigenvector seed for well-separated eigenvalues."""
    v0 = _null_vector(arr, values[0])
    v2 = _null_vector(arr, values[2])
    if v0 is None or v2 is None:
        return None
    v2 = v2 - (v2 @ v0) * v0
    norm = float(np.linalg.norm(v2))
    if norm == 0.0:
        return None
    v2 = v2 / norm
    v1 = np.cross(v2, v0)
    return np.column_stack([v0, v1, v2])


def _off_diagonal(arr):
    return arr[0, 1] ** 2 + arr[0, 2] ** 2 + arr[1, 2] ** 2


def jacobi_sweeps(arr, basis, max_sweeps):
    """
    Cyclic Jacobi rotations on ``basis^T arr basis``.

    Args:
        arr (np.ndarray): Symmetric 3x3 array
        basis (np.ndarray): Orthogonal starting basis (columns)
        max_sweeps (int): Sweep limit

    Returns:
        tuple: (diagonalised array, accumulated basis, converged flag)
    """
    a = basis.T @ arr @ basis
    a = 0.5 * (a + a.T)
    v = basis.copy()
    threshold = (np.finfo(float).eps * max(float(np.linalg.norm(arr)), np.finfo(float).tiny)) ** 2

    for _ in range(max_sweeps):
        if _off_diagonal(a) <= threshold:
            return a, v, True
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = a[p, q]
            if apq == 0.0:
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            if abs(theta) > 1e150:
                t = 0.5 / theta
            else:
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(3)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            a[p, q] = a[q, p] = 0.0
            v = v @ rot

    return a, v, _off_diagonal(a) <= threshold


def eigen_sym3(matrix):
    """
    Eigen-decomposition of a symmetric 3x3 matrix.

    Eigenvalues are ascending. Each eigenvector has its first nonzero
    component positive; exactly equal eigenvalues are ordered by the
    lexicographically largest eigenvector first.

    Args:
        matrix (SymMat3): The matrix

    Returns:
        EigenDecomp3: Sorted eigenvalues and matching unit eigenvectors
    """
    arr = matrix.array
    scale = matrix.max_abs()
    if scale == 0.0:
        return EigenDecomp3(np.zeros(3), np.eye(3))

    basis = None
    if _off_diagonal(arr) == 0.0:
        basis = np.eye(3)
    else:
        values = analytic_eigenvalues(arr)
        spread = max(float(np.max(np.abs(values))), scale)
        gap = min(values[1] - values[0], values[2] - values[1]) / spread
        if gap >= Config.EIGEN_GAP_REL:
            basis = _analytic_basis(arr, values)
        else:
            log.debug(f"Eigenvalue gap {gap:.3e} below threshold, using Jacobi from identity")

    if basis is not None:
        diag, vectors, converged = jacobi_sweeps(arr, basis, Config.JACOBI_POLISH_SWEEPS)
        if not converged:
            log.debug("Jacobi polish did not converge, restarting from identity")
            basis = None
    if basis is None:
        diag, vectors, converged = jacobi_sweeps(arr, np.eye(3), Config.JACOBI_MAX_SWEEPS)
        if not converged:
            log.warning("Jacobi iteration hit the sweep limit")

    eigenvalues = np.diag(diag).copy()
    columns = [canonical_sign(vectors[:, i] / np.linalg.norm(vectors[:, i])) for i in range(3)]
    order = sorted(range(3), key=lambda i: (eigenvalues[i], tuple(-columns[i])))

    return EigenDecomp3(
        eigenvalues=np.array([eigenvalues[i] for i in order]),
        eigenvectors=np.column_stack([columns[i] for i in order]),
    )
