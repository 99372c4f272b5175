import csv
import io
import itertools
from typing import TYPE_CHECKING, Literal, Self

from pydantic import BaseModel, ConfigDict, SerializeAsAny

from jsr2.family import PatternReport
from jsr2.jsr.models import FamilyFlag, JsrReport, NormTrajectory, StabilityVerdict
from jsr2.jsr.words import word_label
from jsr2.symmetrizer import SymmetrizationResult
from mat2.core import Tolerance

if TYPE_CHECKING:
    from collections.abc import Iterable

    from mat2.core import Mat2

__all__ = ("FlagsResult", "render_json", "render_text")


class FlagsResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    flags: tuple[FamilyFlag, ...]

    @classmethod
    def of(cls, flags: Iterable[FamilyFlag]) -> Self:
        return cls(flags=tuple(sorted(flags)))


class Envelope(BaseModel):
    schema_version: Literal[1] = 1
    command: str
    input: str
    tolerance: Tolerance
    result: SerializeAsAny[BaseModel]


def render_json(command: str, source: str, tol: Tolerance, result: BaseModel) -> str:
    envelope = Envelope(command=command, input=source, tolerance=tol, result=result)
    return envelope.model_dump_json(indent=2) + "\n"


def _num(x: float | None) -> str:
    return "-" if x is None else f"{x:.12g}"


def _mat(m: Mat2 | None) -> str:
    if m is None:
        return "-"
    return f"[[{_num(m.a)}, {_num(m.b)}], [{_num(m.c)}, {_num(m.d)}]]"


def _table(rows: Iterable[tuple[str, str]]) -> str:
    rows = list(rows)
    width = max(len(key) for key, _ in rows)
    return "".join(f"{key:<{width}}  {value}\n" for key, value in rows)


def _pattern_rows(r: PatternReport) -> Iterable[tuple[str, str]]:
    yield "holds", str(r.holds).lower()
    yield "sign_class", r.sign_class
    yield "all_diagonal", str(r.all_diagonal).lower()
    yield "base", f"({_num(r.base_b)}, {_num(r.base_c)})"
    yield "base_index", "-" if r.base_index is None else str(r.base_index)
    yield "ratios", ", ".join(map(_num, r.ratios))


def _symmetrization_rows(r: SymmetrizationResult) -> Iterable[tuple[str, str]]:
    yield "feasible", str(r.feasible).lower()
    yield "dimension", str(r.subspace_dimension)
    if r.feasible:
        yield "Q", _mat(r.q)
        yield "S", _mat(r.s)
        for k, m in enumerate(r.conjugated):
            yield f"Q·A_{k}·Q⁻¹", _mat(m)
    elif (cert := r.certificate) is not None:
        yield "best_min_eigenvalue", _num(cert.best_min_eigenvalue)
        yield "marginal", str(cert.marginal).lower()
        for k, m in enumerate(cert.basis):
            yield f"basis[{k}]", _mat(m)
        yield "reason", cert.reason


def _jsr_rows(r: JsrReport) -> Iterable[tuple[str, str]]:
    yield "method", r.method
    yield "exact", str(r.exact).lower()
    yield "lower", _num(r.lower)
    yield "upper", _num(r.upper)
    yield "witness", word_label(r.witness)
    yield "depth", str(r.depth)
    yield "upper_depth", str(r.upper_depth)
    if r.transform is not None:
        yield "transform", _mat(r.transform)
    if r.evaluated:
        yield "evaluated", str(r.evaluated)


def _stability_rows(r: StabilityVerdict) -> Iterable[tuple[str, str]]:
    yield "verdict", r.verdict
    yield "method", r.method
    yield "lower", _num(r.lower)
    yield "upper", _num(r.upper)
    yield "member_radii", ", ".join(map(_num, r.member_radii))
    yield "witness", word_label(r.witness)
    yield "reason", r.reason


def _trajectory_csv(r: NormTrajectory) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("step", "block", "log10_norm"))
    for p in r.points:
        writer.writerow((p.step, f"{p.block.member}:{p.block.count}", repr(p.log10_norm)))
    return out.getvalue()


def _tolerance_rows(tol: Tolerance) -> Iterable[tuple[str, str]]:
    yield "rtol", _num(tol.rtol)
    yield "atol", _num(tol.atol)
    yield "pd_tol", _num(tol.pd_tol)


def render_text(result: BaseModel, tol: Tolerance) -> str:
    """Tables end with the tolerances in effect; CSV and flag lists are bare."""
    match result:
        case PatternReport():
            rows = _pattern_rows(result)
        case SymmetrizationResult():
            rows = _symmetrization_rows(result)
        case JsrReport():
            rows = _jsr_rows(result)
        case StabilityVerdict():
            rows = _stability_rows(result)
        case NormTrajectory():
            return _trajectory_csv(result)
        case FlagsResult(flags=flags):
            return "".join(f"{flag}\n" for flag in flags) or "(none)\n"
        case _:
            msg = f"no text layout for {type(result).__name__}"
            raise TypeError(msg)
    return _table(itertools.chain(rows, _tolerance_rows(tol)))
