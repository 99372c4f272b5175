# pyright: reportUnannotatedClassAttribute=false
import math

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict
from scipy.optimize import minimize_scalar

from jsr2.errors import NotDiagonalizableError, PatternViolationError
from jsr2.family import Mat2Field, MatrixFamily, PatternReport, SignClass
from mat2.batch import (
    from_frobenius_coords,
    min_eigenvalues,
    to_frobenius_coords,
    unit_circle_min_eigenvalues,
)
from mat2.core import EigenKind, Mat2, eigen, symmetric_sqrt

__all__ = (
    "GRID_SIZE",
    "InfeasibilityCertificate",
    "SymmetrizationResult",
    "canonicalize_via_eigenbasis",
    "constraint_residual",
    "diagonal_symmetrizer",
    "spd_feasibility",
)

GRID_SIZE = 3600
SQRT2 = math.sqrt(2)


class InfeasibilityCertificate(BaseModel):
    """
    The symmetric solutions of S·A_k = A_kᵀ·S, and why none is positive definite.
    """

    model_config = ConfigDict(frozen=True)

    dimension: int
    basis: tuple[Mat2Field, ...]
    # max of λ_min over unit-Frobenius elements of the subspace
    best_min_eigenvalue: float | None
    marginal: bool
    reason: str


class SymmetrizationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    feasible: bool
    q: Mat2Field | None = None
    s: Mat2Field | None = None
    conjugated: tuple[Mat2Field, ...] = ()
    subspace_dimension: int
    certificate: InfeasibilityCertificate | None = None


def diagonal_symmetrizer(pattern: PatternReport) -> Mat2:
    """
    Q = diag(√c, √b) for the common off-diagonal direction (b, c), bc > 0.
    Q·A_k·Q⁻¹ = [[a_k, r_k√(bc)], [r_k√(bc), d_k]] for every member.
    """
    if not pattern.holds or pattern.sign_class is not SignClass.POSITIVE:
        msg = (
            "a diagonal symmetrizer needs proportional off-diagonals with bc > 0; "
            f"got holds={pattern.holds}, sign_class={pattern.sign_class}"
        )
        raise PatternViolationError(msg)
    # b and c share a sign, so |c|/|b| = c/b
    return Mat2.diag(math.sqrt(abs(pattern.base_c)), math.sqrt(abs(pattern.base_b)))


def _constraint_rows(fam: MatrixFamily) -> np.ndarray:
    # S·A - Aᵀ·S is antisymmetric; its (0, 1) entry b·s1 + (d - a)·s2 - c·s3
    # is the one independent equation, written in Frobenius coordinates.
    rows = []
    for m in fam.members:
        if (norm := m.frobenius) == 0.0:
            continue
        rows.append([m.b / norm, (m.d - m.a) / (SQRT2 * norm), -m.c / norm])
    return np.array(rows, dtype=np.float64).reshape(-1, 3)


def _nullspace(fam: MatrixFamily) -> np.ndarray:
    rows = _constraint_rows(fam)
    if not rows.size:
        return np.eye(3)
    _, singular, vt = np.linalg.svd(rows)
    rank = int(np.count_nonzero(singular > fam.tol.rtol * singular[0]))
    return vt[rank:]


def constraint_residual(fam: MatrixFamily, s: Mat2) -> float:
    """Largest relative violation of S·A_k = A_kᵀ·S over the family."""
    rows = _constraint_rows(fam)
    x = to_frobenius_coords(s)
    if not rows.size:
        return 0.0
    return float(np.max(np.abs(rows @ x)) / np.linalg.norm(x))


def _best_on_circle(u: np.ndarray, w: np.ndarray) -> tuple[float, np.ndarray]:
    angles = np.linspace(0.0, 2 * math.pi, GRID_SIZE, endpoint=False)
    values = unit_circle_min_eigenvalues(u, w, angles)
    # argmax returns the first maximum, i.e. the smallest angle on ties
    i = int(np.argmax(values))
    theta, best = float(angles[i]), float(values[i])

    def neg_min_eig(t: float) -> float:
        return -float(min_eigenvalues(math.cos(t) * u + math.sin(t) * w))

    step = 2 * math.pi / GRID_SIZE
    refined = minimize_scalar(
        neg_min_eig,
        bounds=(theta - step, theta + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if refined.success and -refined.fun > best:
        theta, best = float(refined.x), float(-refined.fun)
    logger.trace("grid search: λ_min = {best} at θ = {theta}", best=best, theta=theta)
    return best, math.cos(theta) * u + math.sin(theta) * w


def _infeasible(
    dimension: int, basis: np.ndarray, best: float | None, pd_tol: float
) -> SymmetrizationResult:
    marginal = best is not None and best > -pd_tol
    match dimension:
        case 0:
            reason = (
                "the only symmetric S with S·A_k = A_kᵀ·S for every member is S = 0"
            )
        case 1:
            reason = (
                "the solutions form a line; neither direction is positive definite"
            )
        case _:
            reason = "no unit-norm solution in the plane is positive definite"
    if marginal:
        reason += "; the best solution is only positive semidefinite (marginal)"
    certificate = InfeasibilityCertificate(
        dimension=dimension,
        basis=tuple(from_frobenius_coords(x) for x in basis),
        best_min_eigenvalue=best,
        marginal=marginal,
        reason=reason,
    )
    return SymmetrizationResult(
        feasible=False, subspace_dimension=dimension, certificate=certificate
    )


def spd_feasibility(fam: MatrixFamily) -> SymmetrizationResult:
    """
    Decide whether a single nonsingular Q makes every Q·A_k·Q⁻¹ symmetric,
    by searching the solutions of S·A_k = A_kᵀ·S for a positive-definite S.
    """
    pd_tol = fam.tol.pd_tol
    basis = _nullspace(fam)
    dimension = len(basis)
    logger.debug("symmetrizer subspace has dimension {dim}", dim=dimension)

    if dimension == 3 or all(m.is_symmetric(fam.tol) for m in fam.members):
        s = Mat2.identity()
    else:
        match dimension:
            case 0:
                return _infeasible(0, basis, None, pd_tol)
            case 1:
                (x,) = basis
                best_x = max(x, -x, key=lambda v: float(min_eigenvalues(v)))
                best = float(min_eigenvalues(best_x))
            case _:
                best, best_x = _best_on_circle(basis[0], basis[1])
        if best <= pd_tol:
            return _infeasible(dimension, basis, best, pd_tol)
        s = from_frobenius_coords(best_x)

    q = symmetric_sqrt(s)
    return SymmetrizationResult(
        feasible=True,
        q=q,
        s=s,
        conjugated=fam.conjugated(q).members,
        subspace_dimension=dimension,
    )


def canonicalize_via_eigenbasis(
    fam: MatrixFamily, pivot: int
) -> tuple[MatrixFamily, Mat2]:
    """
    Return (P⁻¹·A_k·P for every member, P), P holding the pivot's unit
    eigenvectors as columns, larger eigenvalue first. A scalar pivot is
    already diagonal in every basis, so P = I.
    """
    pair = eigen(fam[pivot], fam.tol)
    if pair.kind is EigenKind.REAL_REPEATED and fam[pivot].is_diagonal(fam.tol):
        members = list(fam.members)
        members[pivot] = Mat2.diag(pair.lambda1, pair.lambda1)
        return MatrixFamily(members=tuple(members), tol=fam.tol), Mat2.identity()
    if (p := pair.basis) is None or pair.kind is not EigenKind.REAL_DISTINCT:
        msg = f"member {pivot} has {pair.kind} eigenvalues and no real eigenbasis"
        raise NotDiagonalizableError(msg)
    transformed = fam.conjugated(p, inverse_first=True)
    members = list(transformed.members)
    # The pivot's image is diag(λ1, λ2) up to rounding; store it exactly.
    members[pivot] = Mat2.diag(pair.lambda1, pair.lambda2)
    return MatrixFamily(members=tuple(members), tol=fam.tol), p
