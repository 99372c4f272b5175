"""
Closed-form joint spectral radius for the families where it is attained by
a single member: 𝝆 = max_k ρ(A_k).

Routes, tried in order:
  1. proportional off-diagonals with bc ≥ 0;
  2. every member already symmetric;
  3. a common positive-definite S with S·A_k = A_kᵀ·S (then Q = √S
     symmetrizes the family, which reduces to route 2);
  4. a {diagonal, antidiagonal} pair;
  5. a pair that satisfies route 1 after conjugating by the eigenbasis of
     one of its members.
"""

from typing import TYPE_CHECKING

from loguru import logger

from jsr2.errors import NotDiagonalizableError
from jsr2.family import detect_pattern
from jsr2.jsr.models import JsrMethod, JsrReport
from jsr2.symmetrizer import canonicalize_via_eigenbasis, spd_feasibility
from mat2.core import spectral_radius

if TYPE_CHECKING:
    from jsr2.family import MatrixFamily
    from mat2.core import Mat2

__all__ = ("exact_fast_path", "member_radii")


def member_radii(fam: MatrixFamily) -> tuple[float, ...]:
    return tuple(spectral_radius(m) for m in fam.members)


def _exact(
    fam: MatrixFamily, method: JsrMethod, transform: Mat2 | None = None
) -> JsrReport:
    radii = member_radii(fam)
    # max() keeps the first of equal radii, so ties go to the smallest index
    k = max(range(fam.size), key=radii.__getitem__)
    logger.debug(
        "fast path {method}: radius {rho} from member {k}",
        method=method,
        rho=radii[k],
        k=k,
    )
    return JsrReport(
        lower=radii[k],
        upper=radii[k],
        witness=(k,),
        depth=1,
        method=method,
        exact=True,
        transform=transform,
    )


def _is_diag_antidiag_pair(fam: MatrixFamily) -> bool:
    if fam.size != 2:
        return False
    a, b = fam.members
    tol = fam.tol
    return (a.is_diagonal(tol) and b.is_antidiagonal(tol)) or (
        b.is_diagonal(tol) and a.is_antidiagonal(tol)
    )


def _canonical_pattern(fam: MatrixFamily) -> Mat2 | None:
    for pivot in range(fam.size):
        try:
            canonical, p = canonicalize_via_eigenbasis(fam, pivot)
        except NotDiagonalizableError as e:
            logger.trace("pivot {pivot} skipped: {e}", pivot=pivot, e=e)
            continue
        if detect_pattern(canonical).nonnegative:
            logger.debug("eigenbasis of member {k} exposes the pattern", k=pivot)
            return p
    return None


def exact_fast_path(fam: MatrixFamily) -> JsrReport | None:
    """
    The exact value when some closed-form route applies; None when the
    family needs enumeration.
    """
    if detect_pattern(fam).nonnegative:
        return _exact(fam, JsrMethod.EXACT_PATTERN)

    if all(m.is_symmetric(fam.tol) for m in fam.members):
        return _exact(fam, JsrMethod.EXACT_SYMMETRIC)

    if (result := spd_feasibility(fam)).feasible:
        return _exact(fam, JsrMethod.EXACT_SPD, transform=result.q)

    if _is_diag_antidiag_pair(fam):
        return _exact(fam, JsrMethod.EXACT_DIAG_ANTIDIAG)

    if fam.size == 2 and (p := _canonical_pattern(fam)) is not None:
        return _exact(fam, JsrMethod.EXACT_PATTERN, transform=p)

    logger.debug("no closed-form route applies")
    return None
