import math
from typing import NamedTuple, Self

from mat2.core import Mat2, spectral_norm, spectral_radius

__all__ = ("RESCALE_ABOVE", "ScaledMat2", "matrix_power")

# Products are renormalized once their Frobenius norm leaves this window, so
# deep words neither overflow nor underflow.
RESCALE_ABOVE = 2.0**512
RESCALE_BELOW = 2.0**-512

LN2 = math.log(2)


def _split(m: Mat2) -> tuple[Mat2, int]:
    """Return (m', e) with m == m'·2**e exactly and ‖m'‖_F in [0.5, 1)."""
    norm = m.frobenius
    if norm == 0.0:
        return m, 0
    _, e = math.frexp(norm)
    return Mat2(*(math.ldexp(x, -e) for x in m)), e


class ScaledMat2(NamedTuple):
    """The matrix `mantissa · 2**exponent`."""

    mantissa: Mat2
    exponent: int = 0

    @classmethod
    def of(cls, m: Mat2) -> Self:
        return cls(m, 0)._renormalized()

    @classmethod
    def identity(cls) -> Self:
        return cls(Mat2.identity(), 0)

    def _renormalized(self) -> Self:
        norm = self.mantissa.frobenius
        if norm == 0.0 or RESCALE_BELOW <= norm <= RESCALE_ABOVE:
            return self
        mantissa, e = _split(self.mantissa)
        return type(self)(mantissa, self.exponent + e)

    def __matmul__(self, other: ScaledMat2) -> ScaledMat2:
        product = ScaledMat2(
            self.mantissa @ other.mantissa, self.exponent + other.exponent
        )
        return product._renormalized()

    def times(self, m: Mat2) -> ScaledMat2:
        return ScaledMat2(self.mantissa @ m, self.exponent)._renormalized()

    def log_spectral_radius(self) -> float:
        """Natural log of ρ; -inf for a nilpotent product."""
        mantissa, e = _split(self.mantissa)
        rho = spectral_radius(mantissa)
        if rho == 0.0:
            return -math.inf
        return math.log(rho) + (self.exponent + e) * LN2

    def log_spectral_norm(self) -> float:
        """Natural log of the largest singular value; -inf for zero."""
        mantissa, e = _split(self.mantissa)
        sigma = spectral_norm(mantissa)
        if sigma == 0.0:
            return -math.inf
        return math.log(sigma) + (self.exponent + e) * LN2

    def to_mat2(self) -> Mat2:
        """May overflow to inf for large exponents."""
        return Mat2(*(math.ldexp(x, self.exponent) for x in self.mantissa))


def matrix_power(m: Mat2, n: int) -> ScaledMat2:
    if n < 0:
        msg = f"negative exponent {n}"
        raise ValueError(msg)
    result = ScaledMat2.identity()
    base = ScaledMat2.of(m)
    while n:
        if n & 1:
            result @= base
        n >>= 1
        if n:
            base @= base
    return result
