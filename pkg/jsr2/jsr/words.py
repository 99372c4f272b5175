import itertools
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterator

__all__ = ("all_words", "common_prefix", "lyndon_words", "word_label")

type Word = tuple[int, ...]


def lyndon_words(length: int, size: int, *, first: int | None = None) -> Iterator[Word]:
    """
    Lyndon words of exactly `length` letters over {0, …, size-1}, in
    lexicographic order (Duval's algorithm). With `first`, only the words
    starting with that letter.

    Every aperiodic necklace has exactly one Lyndon representative; periodic
    necklaces u^k are covered by u at length |u|.
    """
    if length < 1 or size < 1:
        return
    w = [-1 if first is None else first - 1]
    while w:
        w[-1] += 1
        if first is not None and len(w) == 1 and w[0] != first:
            return
        m = len(w)
        if m == length:
            yield tuple(w)

        while len(w) < length:
            w.append(w[-m])

        while w and w[-1] == size - 1:
            w.pop()


def all_words(length: int, size: int, *, first: int | None = None) -> Iterator[Word]:
    letters = range(size)
    heads = letters if first is None else (first,)
    for head in heads:
        for tail in itertools.product(letters, repeat=length - 1):
            yield (head, *tail)


def common_prefix(u: Word, v: Word) -> int:
    n = 0
    for x, y in zip(u, v, strict=False):
        if x != y:
            break
        n += 1
    return n


def word_label(word: Word) -> str:
    return "·".join(map(str, word))
