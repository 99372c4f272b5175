import math
from typing import TYPE_CHECKING

from loguru import logger

from jsr2.config import settings
from jsr2.errors import BudgetExceededError, IndexOutOfRangeError
from jsr2.family import detect_pattern
from jsr2.jsr.bounds import lower_bound
from jsr2.jsr.fast_path import exact_fast_path, member_radii
from jsr2.jsr.models import (
    FamilyFlag,
    NormTrajectory,
    StabilityVerdict,
    TrajectoryPoint,
    Verdict,
)
from jsr2.jsr.words import word_label
from mat2.scaled import ScaledMat2, matrix_power

if TYPE_CHECKING:
    from jsr2.family import MatrixFamily
    from jsr2.jsr.models import JsrReport, SwitchingSequence
    from mat2.core import Mat2, Tolerance

__all__ = ("decide_stability", "info_flags", "simulate_norm_decay")

LN10 = math.log(10)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _exact_verdict(report: JsrReport, rtol: float) -> Verdict:
    rho = report.lower
    if rho < 1 - rtol:
        return Verdict.STABLE
    if rho > 1 + rtol:
        return Verdict.UNSTABLE
    return Verdict.MARGINAL


def _bounds_verdict(report: JsrReport, rtol: float) -> tuple[Verdict, str]:
    lower, upper = report.lower, report.upper
    word = word_label(report.witness)
    n = len(report.witness)
    if upper < 1:
        return Verdict.STABLE, (
            f"every product of length {report.upper_depth} has norm^(1/n) "
            f"≤ {_fmt(upper)} < 1"
        )
    if lower > 1 + rtol:
        return Verdict.UNSTABLE, (
            f"word {word} has ρ^(1/{n}) = {_fmt(lower)} > 1, "
            "so periodic stability already fails"
        )
    if abs(lower - 1) <= rtol:
        return Verdict.MARGINAL, (
            f"word {word} has ρ^(1/{n}) = {_fmt(lower)}, equal to 1 within rtol"
        )
    return Verdict.UNDECIDED, (
        f"bounds [{_fmt(lower)}, {_fmt(upper)}] straddle 1 at depth {report.depth}"
    )


def decide_stability(
    fam: MatrixFamily,
    max_depth: int | None = None,
    *,
    budget: int | None = None,
    workers: int | None = None,
) -> StabilityVerdict:
    """
    Absolute stability of the switched system x_{t+1} = A_{σ(t)}·x_t under
    arbitrary switching, i.e. whether 𝝆 < 1.
    """
    rtol = fam.tol.rtol
    radii = member_radii(fam)

    if (report := exact_fast_path(fam)) is not None:
        verdict = _exact_verdict(report, rtol)
        reason = (
            f"{report.method}: 𝝆 = max ρ(A_k) = {_fmt(report.lower)}; "
            f"member radii {', '.join(map(_fmt, radii))}"
        )
    else:
        depth = max_depth or settings().depth
        try:
            report = lower_bound(fam, depth, budget=budget, workers=workers)
        except BudgetExceededError as e:
            if e.partial is None:
                raise
            logger.warning(
                "budget exhausted; deciding from depth {depth}",
                depth=e.partial.depth,
            )
            report = e.partial
        verdict, reason = _bounds_verdict(report, rtol)
        reason = f"{report.method}: {reason}"

    logger.debug("verdict {verdict}: {reason}", verdict=verdict, reason=reason)
    return StabilityVerdict(
        verdict=verdict,
        method=report.method,
        reason=reason,
        lower=report.lower,
        upper=report.upper,
        member_radii=radii,
        witness=report.witness,
    )


def simulate_norm_decay(fam: MatrixFamily, seq: SwitchingSequence) -> NormTrajectory:
    """
    log10 of the spectral norm of the running product after each block;
    block (k, m) multiplies the product by A_k^m on the right.
    """
    for i, block in enumerate(seq.blocks):
        if block.member >= fam.size:
            msg = (
                f"block {i} uses member {block.member}, "
                f"but the family has {fam.size} members"
            )
            raise IndexOutOfRangeError(msg)

    product = ScaledMat2.identity()
    points: list[TrajectoryPoint] = []
    for step, block in enumerate(seq.blocks, 1):
        product @= matrix_power(fam[block.member], block.count)
        points.append(
            TrajectoryPoint(
                step=step, block=block, log10_norm=product.log_spectral_norm() / LN10
            )
        )
    return NormTrajectory(points=tuple(points))


def _entries_close(x: Mat2, y: Mat2, tol: Tolerance) -> bool:
    return all(tol.close(u, v) for u, v in zip(x, y, strict=True))


def _is_rank_one(m: Mat2, tol: Tolerance) -> bool:
    norm = m.frobenius
    return norm > tol.atol and abs(m.det) <= tol.atol * max(1.0, norm**2)


def _is_shear_pair(fam: MatrixFamily) -> bool:
    # {[[1, b], [0, 1]], [[1, 0], [c, 1]]} with bc ≥ 1, in either order
    if fam.size != 2:
        return False
    tol = fam.tol

    def unipotent(m: Mat2) -> bool:
        return tol.close(m.a, 1.0) and tol.close(m.d, 1.0)

    def negligible(x: float, m: Mat2) -> bool:
        return abs(x) <= tol.atol + tol.rtol * m.frobenius

    upper, lower = fam.members
    if not negligible(upper.c, upper):
        upper, lower = lower, upper
    return (
        unipotent(upper)
        and unipotent(lower)
        and negligible(upper.c, upper)
        and negligible(lower.b, lower)
        and upper.b * lower.c >= 1 - tol.rtol
    )


def info_flags(fam: MatrixFamily) -> frozenset[FamilyFlag]:
    """Structural properties under which finiteness is known, without a value."""
    tol = fam.tol
    flags: set[FamilyFlag] = set()
    if all(
        any(_entries_close(m.transpose(), other, tol) for other in fam.members)
        for m in fam.members
    ):
        flags.add(FamilyFlag.TRANSPOSE_CLOSED)
    if any(_is_rank_one(m, tol) for m in fam.members):
        flags.add(FamilyFlag.RANK_ONE_MEMBER)
    if all(m.is_symmetric(tol) for m in fam.members):
        flags.add(FamilyFlag.ALL_SYMMETRIC)
    if detect_pattern(fam).holds:
        flags.add(FamilyFlag.PROPORTIONAL_OFFDIAGONAL)
    if _is_shear_pair(fam):
        flags.add(FamilyFlag.UNIPOTENT_SHEAR_PAIR)
    return frozenset(flags)
