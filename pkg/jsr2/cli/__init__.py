import sys
from typing import TYPE_CHECKING

from loguru import logger
from pydantic import ValidationError
from pydantic_settings import CliApp, SettingsError, get_subcommand

from jsr2 import log
from jsr2.cli.commands import (
    Check,
    ExitCode,
    Flags,
    Jsr,
    Jsr2Cli,
    OutputFormat,
    Simulate,
    Stability,
    Symmetrize,
)
from jsr2.cli.render import FlagsResult, render_json, render_text
from jsr2.config import Settings, settings_var
from jsr2.errors import (
    BudgetExceededError,
    IndexOutOfRangeError,
    Jsr2Error,
    ParseError,
    handle_error,
)
from jsr2.family import detect_pattern, load_family
from jsr2.jsr import (
    Verdict,
    compute_jsr,
    decide_stability,
    info_flags,
    simulate_norm_decay,
)
from jsr2.symmetrizer import spd_feasibility

if TYPE_CHECKING:
    from collections.abc import Sequence

    from pydantic import BaseModel

    from jsr2.cli.commands import Command
    from jsr2.family import MatrixFamily

__all__ = ("main", "run")

VERDICT_EXIT_CODES = {
    Verdict.STABLE: ExitCode.OK,
    Verdict.UNSTABLE: ExitCode.UNSTABLE,
    Verdict.MARGINAL: ExitCode.MARGINAL,
    Verdict.UNDECIDED: ExitCode.UNDECIDED,
}


def _execute(command: Command, fam: MatrixFamily) -> tuple[BaseModel, ExitCode]:
    match command:
        case Check():
            return detect_pattern(fam), ExitCode.OK
        case Symmetrize():
            return spd_feasibility(fam), ExitCode.OK
        case Jsr():
            return compute_jsr(fam, settings_var.get().depth), ExitCode.OK
        case Stability():
            verdict = decide_stability(fam, settings_var.get().depth)
            return verdict, VERDICT_EXIT_CODES[verdict.verdict]
        case Simulate():
            trajectory = simulate_norm_decay(fam, command.sequence(fam.size))
            return trajectory, ExitCode.OK
        case Flags():
            return FlagsResult.of(info_flags(fam)), ExitCode.OK


def _emit(command: Command, fam: MatrixFamily, result: BaseModel) -> None:
    if command.format is OutputFormat.JSON:
        name = type(command).__name__.lower()
        text = render_json(name, str(command.family), fam.tol, result)
    else:
        text = render_text(result, fam.tol)
    sys.stdout.write(text)


def run(command: Command) -> ExitCode:
    """Run one parsed command; the report goes to stdout."""
    try:
        base = Settings()
    except ValidationError as e:
        logger.error("invalid configuration: {e}", e=e)
        return ExitCode.USAGE
    try:
        fam = load_family(command.family, defaults=base.tolerance)
    except ParseError as e:
        logger.error("cannot parse {path}: {e}", path=command.family, e=e)
        return ExitCode.PARSE
    if overrides := command.tolerance_overrides:
        fam = fam.with_tol(fam.tol.model_copy(update=overrides))
    logger.info(
        "{command} on {size} matrices from {path}",
        command=type(command).__name__.lower(),
        size=fam.size,
        path=command.family,
    )

    token = settings_var.set(base.model_copy(update=command.engine_overrides))
    try:
        result, code = _execute(command, fam)
    except BudgetExceededError as e:
        handle_error(e)
        if e.partial is not None:
            _emit(command, fam, e.partial)
        return ExitCode.INTERNAL
    except IndexOutOfRangeError as e:
        logger.error("usage: {e}", e=e)
        return ExitCode.USAGE
    except Jsr2Error as e:
        handle_error(e)
        return ExitCode.INTERNAL
    finally:
        settings_var.reset(token)
    _emit(command, fam, result)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    log.setup()
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cli = CliApp.run(Jsr2Cli, cli_args=args, cli_exit_on_error=False)
        command: Command = get_subcommand(cli, cli_exit_on_error=False)
    except (SettingsError, ValidationError) as e:
        logger.error("usage: {e}", e=e)
        return ExitCode.USAGE
    try:
        return run(command)
    except Exception as e:  # noqa: BLE001
        handle_error(e)
        return ExitCode.INTERNAL
