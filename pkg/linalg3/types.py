"""
Fixed-size value types: 3-vectors, symmetric 3x3 forms, eigen-decompositions
and monic cubics.

Vectors are plain ``numpy`` arrays of shape (3,); ``as_vec3`` and
``as_unit_vec3`` are the validating constructors. Symmetric matrices store
only their six independent entries.
"""

from dataclasses import dataclass

import numpy as np

from config.settings import Config
from utils.errors import InvalidInput


def as_vec3(values):
    """
    Build a finite 3-vector.

    Args:
        values (array-like): Three real components

    Returns:
        np.ndarray: Float array of shape (3,)
    """
    vec = np.array(values, dtype=float).reshape(-1)
    if vec.shape != (3,):
        raise InvalidInput(f"expected 3 components, got {vec.shape[0]}")
    if not np.all(np.isfinite(vec)):
        raise InvalidInput(f"non-finite vector {vec.tolist()}")
    return vec


def as_unit_vec3(values, normalize=False):
    """
    Build a unit 3-vector.

    Args:
        values (array-like): Three real components
        normalize (bool): Rescale instead of rejecting non-unit input

    Returns:
        np.ndarray: Unit vector of shape (3,)
    """
    vec = as_vec3(values)
    norm = float(np.linalg.norm(vec))
    if normalize:
        if norm == 0.0:
            raise InvalidInput("cannot normalise the zero vector")
        return vec / norm
    if abs(norm - 1.0) > Config.UNIT_TOL:
        raise InvalidInput(f"expected a unit vector, |v| = {norm!r}")
    return vec


def canonical_sign(vec):
    """Flip ``vec`` so its first non-negligible component is positive."""
    scale = float(np.max(np.abs(vec))) if vec.size else 0.0
    for comp in vec:
        if abs(comp) > Config.SIGN_ZERO_TOL * max(scale, 1.0):
            return vec if comp > 0 else -vec
    return vec


@dataclass(frozen=True)
class SymMat3:
    """Symmetric 3x3 matrix stored as its upper triangle."""

    m11: float
    m12: float
    m13: float
    m22: float
    m23: float
    m33: float

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        for name in ("m11", "m12", "m13", "m22", "m23", "m33"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise InvalidInput(f"non-finite matrix entry {name}={value!r}")
            object.__setattr__(self, name, value)

    # ------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------
    @classmethod
    def from_array(cls, matrix, tol=None):
        """
        Build from a full 3x3 array, averaging the two triangles.

        Args:
            matrix (array-like): 3x3 array, symmetric up to ``tol`` (relative)
            tol (float, optional): Accepted relative asymmetry

        Returns:
            SymMat3: The symmetric part
        """
        arr = np.asarray(matrix, dtype=float)
        if arr.shape != (3, 3):
            raise InvalidInput(f"expected a 3x3 array, got shape {arr.shape}")
        tol = Config.SYMMETRY_TOL if tol is None else tol
        scale = max(float(np.max(np.abs(arr))), 1e-300)
        if float(np.max(np.abs(arr - arr.T))) > tol * scale:
            raise InvalidInput("matrix is not symmetric")
        sym = 0.5 * (arr + arr.T)
        return cls(sym[0, 0], sym[0, 1], sym[0, 2], sym[1, 1], sym[1, 2], sym[2, 2])

    @classmethod
    def diagonal(cls, values):
        d1, d2, d3 = (float(v) for v in values)
        return cls(d1, 0.0, 0.0, d2, 0.0, d3)

    @classmethod
    def identity(cls):
        return cls.diagonal((1.0, 1.0, 1.0))

    @classmethod
    def outer(cls, vec):
        """The rank-one form ``v v^T``."""
        x, y, z = as_vec3(vec)
        return cls(x * x, x * y, x * z, y * y, y * z, z * z)

    # ------------------------------------------------------------
    # Views
    # ------------------------------------------------------------
    @property
    def array(self):
        return np.array([
            [self.m11, self.m12, self.m13],
            [self.m12, self.m22, self.m23],
            [self.m13, self.m23, self.m33],
        ])

    @property
    def entries(self):
        return (self.m11, self.m12, self.m13, self.m22, self.m23, self.m33)

    def diag(self):
        return np.array([self.m11, self.m22, self.m33])

    # ------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------
    def apply(self, vec):
        return self.array @ as_vec3(vec)

    def quad_form(self, x, y=None):
        """``x^T M y`` (``y`` defaults to ``x``)."""
        x = as_vec3(x)
        y = x if y is None else as_vec3(y)
        return float(x @ self.array @ y)

    def congruence(self, transform):
        """``T M T^T`` for a 3x3 ``transform``."""
        t = np.asarray(transform, dtype=float)
        return SymMat3.from_array(t @ self.array @ t.T, tol=1e-9)

    def frobenius_norm(self):
        return float(np.linalg.norm(self.array))

    def max_abs(self):
        return float(max(abs(e) for e in self.entries))

    def is_zero(self):
        return self.max_abs() == 0.0

    def __add__(self, other):
        if not isinstance(other, SymMat3):
            return NotImplemented
        return SymMat3(*(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if not isinstance(other, SymMat3):
            return NotImplemented
        return SymMat3(*(a - b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, scalar):
        return SymMat3(*(float(scalar) * e for e in self.entries))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


@dataclass(frozen=True, eq=False)
class EigenDecomp3:
    """
    Eigenvalues sorted ascending with matching unit eigenvectors.

    ``eigenvectors[:, i]`` belongs to ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def vector(self, index):
        return self.eigenvectors[:, index].copy()

    def reconstruct(self):
        """``sum_i lambda_i v_i v_i^T``."""
        q = self.eigenvectors
        return SymMat3.from_array(q @ np.diag(self.eigenvalues) @ q.T, tol=1e-9)

    def residuals(self, matrix):
        """Per-pair ``|M v_i - lambda_i v_i|``."""
        arr = matrix.array
        return np.array([
            np.linalg.norm(arr @ self.eigenvectors[:, i] - self.eigenvalues[i] * self.eigenvectors[:, i])
            for i in range(3)
        ])


@dataclass(frozen=True)
class MonicCubic:
    """``k^3 + c2 k^2 + c1 k + c0``."""

    c2: float
    c1: float
    c0: float

    @classmethod
    def from_roots(cls, roots):
        r1, r2, r3 = (float(r) for r in roots)
        return cls(-(r1 + r2 + r3), r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3)

    @property
    def coefficients(self):
        return (1.0, self.c2, self.c1, self.c0)

    def __call__(self, k):
        return ((k + self.c2) * k + self.c1) * k + self.c0

    def derivative(self, k):
        return (3.0 * k + 2.0 * self.c2) * k + self.c1

    def magnitude(self, k):
        """Sum of the absolute term sizes at ``k``, the scale for relative residuals."""
        ak = abs(k)
        return ak ** 3 + abs(self.c2) * ak ** 2 + abs(self.c1) * ak + abs(self.c0)


def reflection_across_plane(normal):
    """
    Orthogonal reflection across the plane through the origin with unit ``normal``.

    Returns:
        SymMat3: ``I - 2 p p^T``
    """
    p = as_unit_vec3(normal)
    return SymMat3.identity() - 2.0 * SymMat3.outer(p)
