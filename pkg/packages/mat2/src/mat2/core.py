import math
from enum import StrEnum
from typing import NamedTuple, Self

from pydantic import BaseModel, ConfigDict, PositiveFloat

from mat2.errors import SingularTransformError

__all__ = (
    "DEFAULT_TOL",
    "EigenKind",
    "EigenPair",
    "Mat2",
    "Tolerance",
    "conjugate",
    "eigen",
    "spectral_norm",
    "spectral_radius",
    "symmetric_sqrt",
)

type Rows = tuple[tuple[float, float], tuple[float, float]]
type Vec2 = tuple[float, float]


class Tolerance(BaseModel):
    model_config = ConfigDict(frozen=True)

    rtol: PositiveFloat = 1e-9
    atol: PositiveFloat = 1e-12
    # Smallest eigenvalue a unit-Frobenius symmetric matrix needs to count as
    # positive definite.
    pd_tol: PositiveFloat = 1e-8

    def close(self, x: float, y: float) -> bool:
        return abs(x - y) <= self.atol + self.rtol * max(abs(x), abs(y))


DEFAULT_TOL = Tolerance()


class Mat2(NamedTuple):
    """Row-major real 2×2 matrix [[a, b], [c, d]]."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_rows(cls, rows: Rows | list[list[float]]) -> Self:
        (a, b), (c, d) = rows
        return cls(float(a), float(b), float(c), float(d))

    @classmethod
    def identity(cls) -> Self:
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def diag(cls, x: float, y: float) -> Self:
        return cls(x, 0.0, 0.0, y)

    @classmethod
    def from_columns(cls, u: Vec2, v: Vec2) -> Self:
        return cls(u[0], v[0], u[1], v[1])

    def rows(self) -> Rows:
        return (self.a, self.b), (self.c, self.d)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def frobenius(self) -> float:
        return math.hypot(self.a, self.b, self.c, self.d)

    def is_finite(self) -> bool:
        return all(map(math.isfinite, self))

    def transpose(self) -> Mat2:
        return Mat2(self.a, self.c, self.b, self.d)

    def scaled(self, s: float) -> Mat2:
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    def __matmul__(self, other: Mat2) -> Mat2:
        a, b, c, d = self
        e, f, g, h = other
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self, tol: Tolerance = DEFAULT_TOL) -> Mat2:
        det = self.det
        threshold = tol.atol * max(1.0, self.frobenius**2)
        if abs(det) <= threshold:
            raise SingularTransformError(det, threshold)
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def asymmetry(self) -> float:
        return abs(self.b - self.c)

    def is_symmetric(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.asymmetry() <= tol.rtol * (1 + self.frobenius)

    def is_diagonal(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        scale = tol.atol + tol.rtol * self.frobenius
        return abs(self.b) <= scale and abs(self.c) <= scale

    def is_antidiagonal(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        scale = tol.atol + tol.rtol * self.frobenius
        return abs(self.a) <= scale and abs(self.d) <= scale


class EigenKind(StrEnum):
    REAL_DISTINCT = "real-distinct"
    REAL_REPEATED = "real-repeated"
    COMPLEX = "complex-conjugate"


class EigenPair(NamedTuple):
    kind: EigenKind
    # Real eigenvalues in decreasing order, or the common real part.
    lambda1: float
    lambda2: float
    imag: float = 0.0
    v1: Vec2 | None = None
    v2: Vec2 | None = None

    @property
    def basis(self) -> Mat2 | None:
        """Eigenvectors as columns, when the pair is real and distinct."""
        if self.v1 is None or self.v2 is None:
            return None
        return Mat2.from_columns(self.v1, self.v2)


def _discriminant(m: Mat2) -> float:
    # (a - d)^2 + 4bc == trace^2 - 4 det, without the cancellation
    return (m.a - m.d) ** 2 + 4 * m.b * m.c


def _unit_eigenvector(m: Mat2, lam: float) -> Vec2:
    # Both rows of (M - lam I) are annihilated by one of these; take the
    # longer candidate for conditioning.
    u = (m.b, lam - m.a)
    w = (lam - m.d, m.c)
    x, y = max(u, w, key=lambda v: math.hypot(*v))
    norm = math.hypot(x, y)
    x, y = x / norm, y / norm
    # Largest-magnitude component positive; ties resolve to the first.
    pivot = x if abs(x) >= abs(y) else y
    return (-x, -y) if pivot < 0 else (x, y)


def eigen(m: Mat2, tol: Tolerance = DEFAULT_TOL) -> EigenPair:
    disc = _discriminant(m)
    threshold = tol.atol * max(1.0, m.frobenius**2)
    half_trace = m.trace / 2
    if disc < -threshold:
        return EigenPair(
            EigenKind.COMPLEX, half_trace, half_trace, imag=math.sqrt(-disc) / 2
        )
    if abs(disc) <= threshold:
        return EigenPair(EigenKind.REAL_REPEATED, half_trace, half_trace)

    root = math.sqrt(disc)
    s = m.trace + math.copysign(root, m.trace)
    big = s / 2
    small = 2 * m.det / s
    lambda1, lambda2 = max(big, small), min(big, small)
    return EigenPair(
        EigenKind.REAL_DISTINCT,
        lambda1,
        lambda2,
        v1=_unit_eigenvector(m, lambda1),
        v2=_unit_eigenvector(m, lambda2),
    )


def spectral_radius(m: Mat2) -> float:
    """Largest eigenvalue magnitude; continuous across the repeated-root boundary."""
    disc = _discriminant(m)
    if disc < 0:
        return math.sqrt(abs(m.det))
    return (abs(m.trace) + math.sqrt(disc)) / 2


def spectral_norm(m: Mat2) -> float:
    # σ_max = (‖(a + d, c - b)‖ + ‖(a - d, b + c)‖) / 2
    return (math.hypot(m.a + m.d, m.c - m.b) + math.hypot(m.a - m.d, m.b + m.c)) / 2


def conjugate(
    q: Mat2, m: Mat2, *, inverse_first: bool = False, tol: Tolerance = DEFAULT_TOL
) -> Mat2:
    """
    Return Q·M·Q⁻¹, or Q⁻¹·M·Q when `inverse_first` is set. Raises
    SingularTransformError for a numerically singular Q.
    """
    q_inv = q.inverse(tol)
    if inverse_first:
        return q_inv @ m @ q
    return q @ m @ q_inv


def symmetric_sqrt(s: Mat2) -> Mat2:
    """Principal square root of a symmetric positive-definite matrix."""
    root_det = math.sqrt(s.det)
    scale = math.sqrt(s.trace + 2 * root_det)
    return Mat2(
        (s.a + root_det) / scale, s.b / scale, s.c / scale, (s.d + root_det) / scale
    )
