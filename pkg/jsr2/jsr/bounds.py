"""
Brute-force bounds on the joint spectral radius.

Lower bounds maximize ρ(M_w)^(1/|w|) over one Lyndon representative per
cyclic class of words; upper bounds take the largest ‖M_w‖^(1/n) over all
words of each length n. Products are kept as ScaledMat2 and compared in log
space, so neither overflow nor underflow limits the depth.
"""

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, NamedTuple

from loguru import logger

from jsr2.config import settings
from jsr2.errors import BudgetExceededError
from jsr2.jsr.models import JsrMethod, JsrReport
from jsr2.jsr.words import Word, all_words, common_prefix, lyndon_words
from mat2.core import spectral_radius
from mat2.scaled import ScaledMat2

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

    from jsr2.family import MatrixFamily

__all__ = ("lower_bound", "lower_bound_naive", "upper_bound")


class Candidate(NamedTuple):
    log_value: float
    word: Word


def _better(best: Candidate | None, new: Candidate | None) -> Candidate | None:
    # Strictly greater wins, so earlier (shorter, lexicographically smaller)
    # words keep ties.
    if new is None:
        return best
    if best is None or new.log_value > best.log_value:
        return new
    return best


def _map_ordered[T, R](fn: Callable[[T], R], tasks: Iterable[T], workers: int) -> list[R]:
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return list(map(fn, tasks))
    with ThreadPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, tasks))


def _best_lyndon(
    members: tuple[ScaledMat2, ...], length: int, first: int
) -> tuple[Candidate | None, int]:
    best: Candidate | None = None
    prefix: list[ScaledMat2] = []
    previous: Word = ()
    count = 0
    for word in lyndon_words(length, len(members), first=first):
        # Reuse the products of the prefix shared with the previous word.
        del prefix[common_prefix(previous, word) :]
        for letter in word[len(prefix) :]:
            m = members[letter]
            prefix.append(prefix[-1] @ m if prefix else m)
        previous = word
        count += 1
        log_rho = prefix[-1].log_spectral_radius()
        best = _better(best, Candidate(log_rho / length, word))
    return best, count


def _max_log_norms(
    members: tuple[ScaledMat2, ...], depth: int, first: int
) -> list[float]:
    best = [-math.inf] * depth
    stack = [(members[first], 1)]
    while stack:
        product, n = stack.pop()
        best[n - 1] = max(best[n - 1], product.log_spectral_norm())
        if n < depth:
            stack.extend((product @ m, n + 1) for m in members)
    return best


def _word_count(size: int, depth: int) -> int:
    """Number of words of every length 1…depth."""
    return sum(size**n for n in range(1, depth + 1))


def _resolve(budget: int | None, workers: int | None) -> tuple[int, int]:
    cfg = settings()
    return budget or cfg.budget, workers or cfg.workers


def _upper(
    members: tuple[ScaledMat2, ...], depth: int, workers: int
) -> tuple[float, int]:
    """Smallest bound over lengths 1…depth, and the length attaining it."""
    per_first = _map_ordered(
        functools.partial(_max_log_norms, members, depth), range(len(members)), workers
    )
    per_depth = [max(column) for column in zip(*per_first, strict=True)]
    bounds = [log_norm / n for n, log_norm in enumerate(per_depth, 1)]
    n = min(range(depth), key=bounds.__getitem__)
    return math.exp(bounds[n]), n + 1


def upper_bound(
    fam: MatrixFamily,
    depth: int,
    *,
    budget: int | None = None,
    workers: int | None = None,
) -> float:
    """min over n ≤ depth of max over words w of length n of ‖M_w‖^(1/n)."""
    budget, workers = _resolve(budget, workers)
    if (needed := _word_count(fam.size, depth)) > budget:
        raise BudgetExceededError(0, budget, None)
    members = tuple(map(ScaledMat2.of, fam.members))
    value, attained = _upper(members, depth, workers)
    logger.debug(
        "upper bound {value} at length {n} ({count} products)",
        value=value,
        n=attained,
        count=needed,
    )
    return value


def _affordable_depth(size: int, depth: int, budget: int) -> int:
    n = 1
    while n < depth and _word_count(size, n + 1) <= budget:
        n += 1
    return n


def lower_bound(
    fam: MatrixFamily,
    max_depth: int,
    *,
    budget: int | None = None,
    workers: int | None = None,
) -> JsrReport:
    """
    Best ρ(M_w)^(1/|w|) over words of length ≤ max_depth, with the matching
    norm upper bound at the deepest length the remaining budget affords.
    """
    if max_depth < 1:
        msg = f"max_depth must be positive, got {max_depth}"
        raise ValueError(msg)
    budget, workers = _resolve(budget, workers)
    tol, size = fam.tol, fam.size
    members = tuple(map(ScaledMat2.of, fam.members))

    def report(depth: int, best: Candidate, evaluated: int) -> JsrReport:
        upper_depth = _affordable_depth(size, depth, max(budget - evaluated, size))
        upper, attained = _upper(members, upper_depth, workers)
        lower = math.exp(best.log_value)
        # Both bounds are rounded independently; never report them crossed.
        upper = max(upper, lower)
        return JsrReport(
            lower=lower,
            upper=upper,
            witness=best.word,
            depth=depth,
            method=JsrMethod.ENUMERATION,
            exact=upper - lower <= tol.rtol * (1 + upper),
            upper_depth=attained,
            evaluated=evaluated + _word_count(size, upper_depth),
        )

    best: Candidate | None = None
    evaluated = 0
    for n in range(1, max_depth + 1):
        if evaluated + size**n > budget:
            partial = report(n - 1, best, evaluated) if best else None
            exc = BudgetExceededError(evaluated, budget, partial)
            exc.add_note(f"stopped before length {n}; {size**n} words needed")
            raise exc
        task = functools.partial(_best_lyndon, members, n)
        for candidate, count in _map_ordered(task, range(size), workers):
            best = _better(best, candidate)
            evaluated += count
        logger.debug(
            "length {n}: best {value} via {word}",
            n=n,
            value=best and math.exp(best.log_value),
            word=best and best.word,
        )
    assert best is not None
    return report(max_depth, best, evaluated)


def lower_bound_naive(fam: MatrixFamily, max_depth: int) -> tuple[float, Word]:
    """
    Reference enumeration over every word, without cyclic pruning or
    rescaling. Exponential in max_depth; meant for cross-checking.
    """
    best_value: float = -1.0
    best_word: Word = ()
    for n in range(1, max_depth + 1):
        for word in all_words(n, fam.size):
            product = functools.reduce(lambda p, k: p @ fam[k], word[1:], fam[word[0]])
            value = spectral_radius(product) ** (1 / n)
            if value > best_value:
                best_value, best_word = value, word
    return best_value, best_word
