"""
Vectorized closed forms over stacks of symmetric 2×2 matrices.

A symmetric matrix [[s1, s2], [s2, s3]] is stored in Frobenius coordinates
x = (s1, √2·s2, s3), so the Euclidean norm of x equals the Frobenius norm of
the matrix and orthonormal bases in x-space are orthonormal in matrix space.
"""

import math
from typing import TYPE_CHECKING

import numpy as np

from mat2.core import Mat2

if TYPE_CHECKING:
    from numpy.typing import NDArray

__all__ = (
    "from_frobenius_coords",
    "min_eigenvalues",
    "to_frobenius_coords",
    "unit_circle_min_eigenvalues",
)

SQRT2 = math.sqrt(2)


def to_frobenius_coords(s: Mat2) -> NDArray[np.float64]:
    return np.array([s.a, SQRT2 * (s.b + s.c) / 2, s.d])


def from_frobenius_coords(x: NDArray[np.float64]) -> Mat2:
    off = float(x[1]) / SQRT2
    return Mat2(float(x[0]), off, off, float(x[2]))


def min_eigenvalues(coords: NDArray[np.float64]) -> NDArray[np.float64]:
    """Smallest eigenvalue of every row of an (n, 3) coordinate array."""
    s1, s3 = coords[..., 0], coords[..., 2]
    s2 = coords[..., 1] / SQRT2
    half_trace = 0.5 * (s1 + s3)
    radius = np.hypot(0.5 * (s1 - s3), s2)
    return half_trace - radius


def unit_circle_min_eigenvalues(
    u: NDArray[np.float64], w: NDArray[np.float64], angles: NDArray[np.float64]
) -> NDArray[np.float64]:
    """λ_min of cos(θ)·U + sin(θ)·W for every θ in `angles`."""
    coords = np.outer(np.cos(angles), u) + np.outer(np.sin(angles), w)
    return min_eigenvalues(coords)
