# pyright: reportUnannotatedClassAttribute=false
import math
import re
from enum import StrEnum
from typing import Self

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    computed_field,
)

from jsr2.family import Mat2Field

__all__ = (
    "Block",
    "FamilyFlag",
    "JsrMethod",
    "JsrReport",
    "NormTrajectory",
    "StabilityVerdict",
    "SwitchingSequence",
    "Verdict",
)

BLOCK_SPEC = re.compile(r"^\s*(\d+)\s*(?::\s*(\d+))?\s*$")


class JsrMethod(StrEnum):
    EXACT_PATTERN = "exact-pattern"
    EXACT_SYMMETRIC = "exact-symmetric"
    EXACT_SPD = "exact-spd"
    EXACT_DIAG_ANTIDIAG = "exact-diag-antidiag"
    ENUMERATION = "enumeration"


class JsrReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float
    witness: tuple[int, ...]
    depth: int
    method: JsrMethod
    exact: bool
    # Depth at which `upper` was attained; 1 for the exact routes.
    upper_depth: int = 1
    # Eigenbasis the family was conjugated by, for the canonicalization route.
    transform: Mat2Field | None = None
    evaluated: int = 0

    @property
    def value(self) -> float | None:
        return self.lower if self.exact else None


class Verdict(StrEnum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"
    UNDECIDED = "undecided"


class StabilityVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    method: JsrMethod
    reason: str
    lower: float
    upper: float
    member_radii: tuple[float, ...]
    witness: tuple[int, ...]


class Block(BaseModel):
    model_config = ConfigDict(frozen=True)

    member: NonNegativeInt
    count: PositiveInt = 1


class SwitchingSequence(BaseModel):
    """Blocks (k, m): the running product is multiplied by A_k^m, left to right."""

    model_config = ConfigDict(frozen=True)

    blocks: tuple[Block, ...] = Field(min_length=1)

    @classmethod
    def parse(cls, spec: str) -> Self:
        """Parse "0:1,1:1,0:3"; a bare index means a count of one."""
        blocks: list[Block] = []
        for part in spec.split(","):
            if not (match := BLOCK_SPEC.match(part)):
                msg = f"invalid block {part!r}; expected INDEX or INDEX:COUNT"
                raise ValueError(msg)
            blocks.append(Block(member=int(match[1]), count=int(match[2] or 1)))
        return cls(blocks=tuple(blocks))

    @classmethod
    def uniform(cls, members: int, length: int, seed: int) -> Self:
        rng = np.random.default_rng(seed)
        picks = rng.integers(0, members, size=length)
        return cls(blocks=tuple(Block(member=int(k)) for k in picks))

    @classmethod
    def cycle(cls, pattern: list[int], repeats: int) -> Self:
        return cls(blocks=tuple(Block(member=k) for k in pattern * repeats))


class TrajectoryPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    step: int
    block: Block
    log10_norm: float


class NormTrajectory(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: tuple[TrajectoryPoint, ...]

    @property
    def log10_norms(self) -> list[float]:
        return [p.log10_norm for p in self.points]

    @computed_field
    @property
    def overflowed(self) -> bool:
        """Some norm is outside the double range; only log10_norms is exact."""
        return any(abs(x) > 307 for x in self.log10_norms if math.isfinite(x))

    @property
    def norms(self) -> list[float]:
        # 10**x overflows past ~308; report those as inf
        return [
            math.inf if x > 308 else 10.0**x if math.isfinite(x) else 0.0
            for x in self.log10_norms
        ]


class FamilyFlag(StrEnum):
    TRANSPOSE_CLOSED = "transpose-closed"
    RANK_ONE_MEMBER = "rank-one-member"
    ALL_SYMMETRIC = "all-symmetric"
    PROPORTIONAL_OFFDIAGONAL = "proportional-offdiagonal"
    UNIPOTENT_SHEAR_PAIR = "unipotent-shear-pair"
