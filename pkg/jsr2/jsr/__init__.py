from typing import TYPE_CHECKING

from loguru import logger

from jsr2.jsr.bounds import lower_bound, lower_bound_naive, upper_bound
from jsr2.jsr.fast_path import exact_fast_path, member_radii
from jsr2.jsr.models import (
    Block,
    FamilyFlag,
    JsrMethod,
    JsrReport,
    NormTrajectory,
    StabilityVerdict,
    SwitchingSequence,
    Verdict,
)
from jsr2.jsr.stability import decide_stability, info_flags, simulate_norm_decay

if TYPE_CHECKING:
    from jsr2.family import MatrixFamily

__all__ = (
    "Block",
    "FamilyFlag",
    "JsrMethod",
    "JsrReport",
    "NormTrajectory",
    "StabilityVerdict",
    "SwitchingSequence",
    "Verdict",
    "compute_jsr",
    "decide_stability",
    "exact_fast_path",
    "info_flags",
    "lower_bound",
    "lower_bound_naive",
    "member_radii",
    "simulate_norm_decay",
    "upper_bound",
)


def compute_jsr(
    fam: MatrixFamily,
    max_depth: int,
    *,
    budget: int | None = None,
    workers: int | None = None,
) -> JsrReport:
    if (report := exact_fast_path(fam)) is not None:
        return report
    logger.debug("falling back to enumeration up to length {n}", n=max_depth)
    return lower_bound(fam, max_depth, budget=budget, workers=workers)
