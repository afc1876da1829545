"""Enumeration of ordinary and generalized partitions.

Generalized partitions are the index lists of normally ordered q-words: nonzero
integers sorted in descending order, so creations come first and the most
negative annihilation comes last.
"""

import itertools
from collections import Counter
from collections.abc import Iterator, Sequence
from functools import cache
from math import factorial, prod


@cache
def _partitions_bounded(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    result: list[tuple[int, ...]] = []
    for first in range(min(n, largest), 0, -1):
        result.extend((first, *rest) for rest in _partitions_bounded(n - first, first))
    return tuple(result)


def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """Return all partitions of ``n`` as descending tuples, in reverse lexicographic order."""
    if n < 0:
        return ()
    return _partitions_bounded(n, n)


def partitions_with_length(n: int, length: int) -> tuple[tuple[int, ...], ...]:
    """Return the partitions of ``n`` with exactly ``length`` parts."""
    return tuple(p for p in partitions(n) if len(p) == length)


def generalized_partitions(
    total: int, length: int, max_annihilation: int
) -> Iterator[tuple[int, ...]]:
    """Yield normally ordered nonzero index lists with a given sum and length.

    Only lists whose annihilation weight (sum of the absolute values of the
    negative entries) is at most ``max_annihilation`` are produced; heavier words
    act as zero on the levels under consideration.

    Args:
        total: Required sum of the entries.
        length: Required number of entries.
        max_annihilation: Upper bound on the annihilation weight.

    Yields:
        Tuples sorted in descending order, deterministic across runs.
    """
    for annihilation in range(max_annihilation + 1):
        creation = total + annihilation
        if creation < 0:
            continue
        for negatives in range(length + 1):
            positives = length - negatives
            for up in partitions_with_length(creation, positives):
                for down in partitions_with_length(annihilation, negatives):
                    yield up + tuple(-part for part in reversed(down))


def multiplicity_factorial(parts: Sequence[int]) -> int:
    """Return λ! = ∏ mᵢ! over the multiplicities of the entries of ``parts``."""
    return prod(factorial(m) for m in Counter(parts).values())


def centralizer_order(parts: Sequence[int]) -> int:
    """Return z(λ) = |Aut(λ)| · ∏ λᵢ for an ordinary partition."""
    return multiplicity_factorial(parts) * prod(parts)


def square_sum(parts: Sequence[int]) -> int:
    """Return s(λ) = Σ λᵢ²."""
    return sum(part * part for part in parts)


def equal_part_blocks(parts: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Group positions (0-based) of equal entries of a sorted index list.

    Blocks of size one are kept so the result always partitions the positions.
    """
    blocks: list[list[int]] = []
    for position, part in enumerate(parts):
        if blocks and parts[blocks[-1][0]] == part:
            blocks[-1].append(position)
        else:
            blocks.append([position])
    return tuple(tuple(block) for block in blocks)


def ordered_words(total: int, length: int, max_annihilation: int) -> Iterator[tuple[int, ...]]:
    """Yield every ordering of the index lists of `generalized_partitions`.

    Sums written over all ``i₁ + … + i_t = total`` (rather than over normally
    ordered words) enumerate through here; each distinct tuple appears once.
    """
    for word in generalized_partitions(total, length, max_annihilation):
        yield from sorted(set(itertools.permutations(word)))
