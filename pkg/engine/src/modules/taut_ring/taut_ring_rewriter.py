"""Rule-by-rule reduction of raw products in R*(S^k).

`TautologicalRing.mul` reduces whole clusters at once. This module applies the
individual Beauville–Voisin rules one redex at a time under a chosen strategy, so
that agreement between the two (for every strategy and seed) witnesses that the
rule system is terminating and confluent.
"""

import enum
import random
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from .taut_ring_model import ONE, POINT, Label, LabelKind, Monomial, SurfaceClass
from .taut_ring_service import TautologicalRing


class Strategy(enum.Enum):
    """Which redex to contract next when several apply."""

    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"
    RANDOM = "random"


@dataclass(frozen=True, slots=True)
class RawTerm:
    """A not-yet-canonical product: pairs and labels may repeat or overlap."""

    coef: Fraction
    pairs: tuple[tuple[int, int], ...]
    labels: tuple[tuple[int, Label], ...]


class RewriteRule(enum.Enum):
    """The four reduction rules. The enum value is the rule code used in diagnostics."""

    LABEL_PRODUCT = ("R1", "two labels on one index: c·c = α·c = 0, α·β = (α,β)c")
    DIVISOR_TRANSFER = ("R2", "label on a matched index: Δ·c₁ = c₁c₂, Δ·α₁ = α₁c₂ + α₂c₁")
    CLUSTER_MERGE = ("R3", "two diagonals sharing one index merge into Δ₁₂₃ (closed form)")
    DIAGONAL_SQUARE = ("R4", "repeated diagonal: Δ·Δ = 24·c₁c₂")

    description: str

    def __new__(cls, code: str, description: str):
        """Construct a member whose value is ``code`` and attach its description."""
        obj = object.__new__(cls)
        obj._value_ = code
        obj.description = description
        return obj


@dataclass(frozen=True, slots=True)
class Redex:
    """A pair of factors that one rewrite rule applies to."""

    rule: RewriteRule
    first: int
    second: int


def find_redexes(term: RawTerm) -> list[Redex]:
    """List every applicable redex in a deterministic order."""
    redexes: list[Redex] = []
    for a in range(len(term.labels)):
        for b in range(a + 1, len(term.labels)):
            if term.labels[a][0] == term.labels[b][0]:
                redexes.append(Redex(RewriteRule.LABEL_PRODUCT, a, b))
    for p, pair in enumerate(term.pairs):
        for position, (index, _) in enumerate(term.labels):
            if index in pair:
                redexes.append(Redex(RewriteRule.DIVISOR_TRANSFER, p, position))
    for p in range(len(term.pairs)):
        for q in range(p + 1, len(term.pairs)):
            if term.pairs[p] == term.pairs[q]:
                redexes.append(Redex(RewriteRule.DIAGONAL_SQUARE, p, q))
            elif set(term.pairs[p]) & set(term.pairs[q]):
                redexes.append(Redex(RewriteRule.CLUSTER_MERGE, p, q))
    return redexes


def _without[T](items: tuple[T, ...], *positions: int) -> tuple[T, ...]:
    return tuple(item for i, item in enumerate(items) if i not in positions)


def contract(ring: TautologicalRing, term: RawTerm, redex: Redex) -> list[RawTerm]:
    """Apply one rule at one redex, returning the resulting raw terms (possibly none)."""
    match redex.rule:
        case RewriteRule.LABEL_PRODUCT:
            index = term.labels[redex.first][0]
            product = ring.label_product(term.labels[redex.first][1], term.labels[redex.second][1])
            if product is None:
                return []
            coef, label = product
            labels = _without(term.labels, redex.first, redex.second)
            if label != ONE:
                labels = (*labels, (index, label))
            return [RawTerm(term.coef * coef, term.pairs, labels)]

        case RewriteRule.DIVISOR_TRANSFER:
            i, j = term.pairs[redex.first]
            index, label = term.labels[redex.second]
            other = j if index == i else i
            pairs = _without(term.pairs, redex.first)
            labels = _without(term.labels, redex.second)
            if label.kind == LabelKind.POINT:
                return [RawTerm(term.coef, pairs, (*labels, (i, POINT), (j, POINT)))]
            sign = ring.rules.divisor_transfer_sign
            return [
                RawTerm(term.coef * sign, pairs, (*labels, (index, label), (other, POINT))),
                RawTerm(term.coef * sign, pairs, (*labels, (other, label), (index, POINT))),
            ]

        case RewriteRule.DIAGONAL_SQUARE:
            i, j = term.pairs[redex.first]
            return [
                RawTerm(
                    term.coef * ring.rules.diagonal_self_intersection,
                    _without(term.pairs, redex.first, redex.second),
                    (*term.labels, (i, POINT), (j, POINT)),
                )
            ]

        case RewriteRule.CLUSTER_MERGE:
            vertices = sorted(set(term.pairs[redex.first]) | set(term.pairs[redex.second]))
            pairs = _without(term.pairs, redex.first, redex.second)
            return [
                RawTerm(term.coef * coef, (*pairs, *new_pairs), (*term.labels, *new_labels))
                for coef, new_pairs, new_labels in ring.expand_cluster(vertices, ONE)
            ]


def rewrite_product(
    ring: TautologicalRing,
    x: Monomial,
    y: Monomial,
    strategy: Strategy = Strategy.LEFTMOST,
    seed: int = 0,
) -> SurfaceClass:
    """Reduce the raw product ``x·y`` rule by rule until no redex remains.

    Args:
        ring: Ring providing the lattice and rule constants.
        x: Left canonical monomial.
        y: Right canonical monomial of the same arity.
        strategy: Redex selection policy.
        seed: Seed for `Strategy.RANDOM`.

    Returns:
        The canonical form of the product.
    """
    rng = random.Random(seed)
    pick: Callable[[list[Redex]], Redex] = {
        Strategy.LEFTMOST: lambda options: options[0],
        Strategy.RIGHTMOST: lambda options: options[-1],
        Strategy.RANDOM: rng.choice,
    }[strategy]

    pending = [RawTerm(Fraction(1), x.pairs + y.pairs, x.labels + y.labels)]
    finished: list[tuple[Monomial, Fraction]] = []
    while pending:
        term = pending.pop()
        redexes = find_redexes(term)
        if not redexes:
            finished.append((Monomial.build(x.arity, term.pairs, term.labels), term.coef))
            continue
        pending.extend(contract(ring, term, pick(redexes)))
    return ring.from_terms(x.arity, finished)
