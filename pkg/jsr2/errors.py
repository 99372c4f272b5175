from typing import TYPE_CHECKING

from loguru import logger

if TYPE_CHECKING:
    from jsr2.jsr.models import JsrReport

__all__ = (
    "BudgetExceededError",
    "IndexOutOfRangeError",
    "Jsr2Error",
    "NotDiagonalizableError",
    "ParseError",
    "PatternViolationError",
    "handle_error",
)


class Jsr2Error(Exception):
    pass


class ParseError(Jsr2Error):
    def __init__(
        self,
        message: str,
        *,
        field: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        self.field = field
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}" + (f", column {column}" if column else ""))
        if field:
            where.append(f"at `{field}`")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


class PatternViolationError(Jsr2Error):
    pass


class NotDiagonalizableError(Jsr2Error):
    pass


class IndexOutOfRangeError(Jsr2Error):
    pass


class BudgetExceededError(Jsr2Error):
    def __init__(self, evaluated: int, budget: int, partial: JsrReport | None) -> None:
        self.evaluated = evaluated
        self.budget = budget
        self.partial = partial
        super().__init__(
            f"product budget of {budget} exhausted after {evaluated} evaluations"
        )


def handle_error(error: BaseException) -> None:
    if isinstance(error, BudgetExceededError):
        logger.warning("{error}", error=error)
    else:
        logger.exception(error)
    for note in getattr(error, "__notes__", []):
        logger.error(note)
    if isinstance(error, BudgetExceededError) and error.partial is not None:
        logger.warning(
            "best bounds before exhaustion: [{lower}, {upper}] at depth {depth}",
            lower=error.partial.lower,
            upper=error.partial.upper,
            depth=error.partial.depth,
        )
