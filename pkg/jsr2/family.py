# pyright: reportUnannotatedClassAttribute=false
import itertools
import math
import re
from enum import StrEnum
from typing import TYPE_CHECKING, Annotated, Self

from loguru import logger
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    FiniteFloat,
    PlainSerializer,
    PositiveFloat,
    ValidationError,
    field_validator,
)

from jsr2.errors import ParseError
from mat2.core import DEFAULT_TOL, Mat2, Tolerance, conjugate

if TYPE_CHECKING:
    from collections.abc import Callable
    from pathlib import Path

__all__ = (
    "Mat2Field",
    "MatrixFamily",
    "PatternReport",
    "SignClass",
    "detect_pattern",
    "load_family",
    "parse_family",
    "serialize_family",
)

type Row = tuple[FiniteFloat, FiniteFloat]
type Rows = tuple[Row, Row]

JSON_POSITION = re.compile(r"line (\d+) column (\d+)")


def _coerce_mat2(value: object) -> object:
    match value:
        case Mat2():
            return value
        case [[_, _], [_, _]]:
            return Mat2.from_rows(value)  # pyright: ignore[reportArgumentType]
        case _:
            return value


def _rows(m: Mat2) -> list[list[float]]:
    return [[m.a, m.b], [m.c, m.d]]


type Mat2Field = Annotated[
    Mat2, BeforeValidator(_coerce_mat2), PlainSerializer(_rows, when_used="json")
]


class MatrixFamily(BaseModel):
    model_config = ConfigDict(frozen=True)

    members: tuple[Mat2Field, ...] = Field(min_length=1)
    tol: Tolerance = DEFAULT_TOL

    @field_validator("members")
    @classmethod
    def _finite(cls, value: tuple[Mat2, ...]) -> tuple[Mat2, ...]:
        for k, m in enumerate(value):
            if not m.is_finite():
                msg = f"member {k} has a non-finite entry"
                raise ValueError(msg)
        return value

    @classmethod
    def of(cls, *members: Mat2, tol: Tolerance = DEFAULT_TOL) -> Self:
        return cls(members=members, tol=tol)

    @property
    def size(self) -> int:
        return len(self.members)

    def __getitem__(self, k: int) -> Mat2:
        return self.members[k]

    def map(self, fn: Callable[[Mat2], Mat2]) -> MatrixFamily:
        return MatrixFamily(members=tuple(map(fn, self.members)), tol=self.tol)

    def scaled(self, s: float) -> MatrixFamily:
        return self.map(lambda m: m.scaled(s))

    def conjugated(self, q: Mat2, *, inverse_first: bool = False) -> MatrixFamily:
        return self.map(
            lambda m: conjugate(q, m, inverse_first=inverse_first, tol=self.tol)
        )

    def with_tol(self, tol: Tolerance) -> MatrixFamily:
        return MatrixFamily(members=self.members, tol=tol)


class SignClass(StrEnum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"


class PatternReport(BaseModel):
    """
    Whether every member's off-diagonal pair is a multiple r_k·(base_b, base_c)
    of one common direction.
    """

    model_config = ConfigDict(frozen=True)

    holds: bool
    base_b: float
    base_c: float
    ratios: tuple[float, ...]
    sign_class: SignClass
    all_diagonal: bool
    base_index: int | None = None

    @property
    def nonnegative(self) -> bool:
        """The bc >= 0 case, where the spectral finiteness argument applies."""
        return self.holds and self.sign_class is not SignClass.NEGATIVE


def _sign_class(product: float, tol: Tolerance) -> SignClass:
    if product > tol.atol:
        return SignClass.POSITIVE
    if product < -tol.atol:
        return SignClass.NEGATIVE
    return SignClass.ZERO


def detect_pattern(fam: MatrixFamily) -> PatternReport:
    tol = fam.tol
    offs = [(m.b, m.c) for m in fam.members]
    norms = [math.hypot(b, c) for b, c in offs]

    if all(n <= tol.atol for n in norms):
        return PatternReport(
            holds=True,
            base_b=0.0,
            base_c=0.0,
            ratios=(0.0,) * fam.size,
            sign_class=SignClass.ZERO,
            all_diagonal=True,
        )

    scale = max((abs(b) + abs(c)) ** 2 for b, c in offs)
    holds = all(
        abs(bk * cj - bj * ck) <= tol.rtol * scale
        for (bk, ck), (bj, cj) in itertools.combinations(offs, 2)
    )
    base_index = max(range(fam.size), key=norms.__getitem__)
    base_b, base_c = offs[base_index]
    base_sq = base_b**2 + base_c**2
    ratios = tuple(
        1.0
        if k == base_index
        else 0.0
        if norms[k] <= tol.atol
        else (bk * base_b + ck * base_c) / base_sq
        for k, (bk, ck) in enumerate(offs)
    )
    report = PatternReport(
        holds=holds,
        base_b=base_b,
        base_c=base_c,
        ratios=ratios,
        sign_class=_sign_class(base_b * base_c, tol),
        all_diagonal=False,
        base_index=base_index,
    )
    logger.trace("pattern: {report}", report=report)
    return report


class FileTolerance(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rtol: PositiveFloat | None = None
    atol: PositiveFloat | None = None
    pd_tol: PositiveFloat | None = None


class FamilyFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    matrices: list[Rows] = Field(min_length=1)
    tol: FileTolerance | None = None


def _field_path(loc: tuple[int | str, ...]) -> str:
    # ("matrices", 0, 1) -> "matrices[0][1]"
    path = "".join(f"[{part}]" if isinstance(part, int) else f".{part}" for part in loc)
    return path.removeprefix(".")


def _parse_error(error: ValidationError) -> ParseError:
    first = error.errors()[0]
    line = column = None
    if first["type"] == "json_invalid" and (
        pos := JSON_POSITION.search(first["msg"])
    ):
        line, column = int(pos[1]), int(pos[2])
    field = _field_path(tuple(first["loc"])) or None
    exc = ParseError(first["msg"], field=field, line=line, column=column)
    for other in error.errors()[1:]:
        exc.add_note(f"{_field_path(tuple(other['loc']))}: {other['msg']}")
    return exc


def parse_family(text: bytes | str, *, defaults: Tolerance = DEFAULT_TOL) -> MatrixFamily:
    """
    Parse a family file: {"matrices": [[[a, b], [c, d]], ...], "tol": {...}}.
    Tolerances missing from the file come from `defaults`.
    """
    try:
        parsed = FamilyFile.model_validate_json(text)
    except ValidationError as e:
        raise _parse_error(e) from e

    overrides = parsed.tol.model_dump(exclude_none=True) if parsed.tol else {}
    tol = defaults.model_copy(update=overrides)
    return MatrixFamily(
        members=tuple(Mat2.from_rows(rows) for rows in parsed.matrices), tol=tol
    )


def serialize_family(fam: MatrixFamily) -> bytes:
    payload = FamilyFile(
        matrices=[m.rows() for m in fam.members],
        tol=FileTolerance(
            rtol=fam.tol.rtol, atol=fam.tol.atol, pd_tol=fam.tol.pd_tol
        ),
    )
    return payload.model_dump_json(indent=2).encode()


def load_family(path: Path, *, defaults: Tolerance = DEFAULT_TOL) -> MatrixFamily:
    try:
        text = path.read_bytes()
    except OSError as e:
        msg = f"cannot read {path}: {e.strerror}"
        raise ParseError(msg) from e
    logger.debug("loaded {size} bytes from {path}", size=len(text), path=path)
    return parse_family(text, defaults=defaults)
