import math

from hypothesis import strategies as st

from mat2.core import Mat2

__all__ = (
    "entries",
    "is_separated",
    "matrices",
    "rel_close",
    "separated",
    "transforms",
)

entries = st.floats(
    min_value=-10,
    max_value=10,
    allow_nan=False,
    allow_infinity=False,
    allow_subnormal=False,
)
matrices = st.builds(Mat2, entries, entries, entries, entries)

# Condition number ‖Q‖_F² / |det Q| at most 20.
transforms = matrices.filter(
    lambda q: q.frobenius >= 0.1 and abs(q.det) >= 0.05 * q.frobenius**2
)


def is_separated(m: Mat2) -> bool:
    disc = (m.a - m.d) ** 2 + 4 * m.b * m.c
    return m.frobenius >= 0.1 and abs(disc) >= 0.01 * m.frobenius**2


# Eigenvalues (or the complex pair) kept away from the repeated-root boundary.
separated = matrices.filter(is_separated)


def rel_close(x: float, y: float, rtol: float = 1e-9) -> bool:
    return math.isclose(x, y, rel_tol=rtol, abs_tol=rtol)
