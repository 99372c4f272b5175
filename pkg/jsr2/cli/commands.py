# pyright: reportUnannotatedClassAttribute=false
from enum import IntEnum, StrEnum
from pathlib import Path
from typing import Self

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    model_validator,
)
from pydantic_settings import (
    BaseSettings,
    CliPositionalArg,
    CliSubCommand,
    SettingsConfigDict,
)

from jsr2.jsr.models import SwitchingSequence

__all__ = (
    "Check",
    "Command",
    "ExitCode",
    "Flags",
    "Jsr",
    "Jsr2Cli",
    "OutputFormat",
    "Simulate",
    "Stability",
    "Symmetrize",
)


class ExitCode(IntEnum):
    OK = 0
    UNSTABLE = 1
    MARGINAL = 2
    UNDECIDED = 3
    USAGE = 64
    PARSE = 65
    INTERNAL = 70


class OutputFormat(StrEnum):
    TEXT = "text"
    JSON = "json"


class Options(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: CliPositionalArg[Path] = Field(description="family file (JSON)")
    depth: PositiveInt | None = Field(
        default=None, description="longest word to enumerate"
    )
    rtol: PositiveFloat | None = None
    atol: PositiveFloat | None = None
    format: OutputFormat = OutputFormat.TEXT
    threads: PositiveInt | None = Field(
        default=None, description="enumeration workers [default: available CPUs]"
    )
    budget: PositiveInt | None = Field(
        default=None, description="maximum number of products to evaluate"
    )

    @property
    def tolerance_overrides(self) -> dict[str, float]:
        return {
            name: value
            for name, value in (("rtol", self.rtol), ("atol", self.atol))
            if value is not None
        }

    @property
    def engine_overrides(self) -> dict[str, int]:
        return {
            name: value
            for name, value in (
                ("depth", self.depth),
                ("threads", self.threads),
                ("budget", self.budget),
            )
            if value is not None
        }


class Check(Options):
    """Detect the proportional off-diagonal pattern."""


class Symmetrize(Options):
    """Search for a common Q making every Q·A_k·Q⁻¹ symmetric."""


class Jsr(Options):
    """Compute the joint spectral radius or bounds on it."""


class Stability(Options):
    """Decide absolute stability under arbitrary switching."""


class Flags(Options):
    """Report structural properties with known finiteness results."""


class Simulate(Options):
    """Trace the norm of a switched product, one block at a time."""

    blocks: str | None = Field(
        default=None,
        description='switching blocks such as "0:1,1:1"; random when omitted',
    )
    repeats: PositiveInt = Field(
        default=1, description="how many times to repeat --blocks"
    )
    seed: NonNegativeInt = 0
    length: PositiveInt = Field(
        default=100, description="number of random single-step blocks"
    )

    @model_validator(mode="after")
    def _valid_blocks(self) -> Self:
        if self.blocks is not None:
            SwitchingSequence.parse(self.blocks)
        return self

    def sequence(self, members: int) -> SwitchingSequence:
        if self.blocks is None:
            return SwitchingSequence.uniform(members, self.length, self.seed)
        parsed = SwitchingSequence.parse(self.blocks)
        return SwitchingSequence(blocks=parsed.blocks * self.repeats)


type Command = Check | Symmetrize | Jsr | Stability | Flags | Simulate


class Jsr2Cli(BaseSettings):
    """Joint spectral radius of real 2×2 matrix families."""

    model_config = SettingsConfigDict(
        cli_prog_name="jsr2",
        cli_avoid_json=True,
        cli_hide_none_type=True,
        cli_kebab_case=True,
        cli_use_class_docs_for_groups=True,
        env_prefix="JSR2_CLI__",
    )

    check: CliSubCommand[Check]
    symmetrize: CliSubCommand[Symmetrize]
    jsr: CliSubCommand[Jsr]
    stability: CliSubCommand[Stability]
    simulate: CliSubCommand[Simulate]
    flags: CliSubCommand[Flags]
