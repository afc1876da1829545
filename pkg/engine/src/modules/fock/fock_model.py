from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from src.core.exceptions import ComputationException, UnprocessableEntityException
from src.core.utils.partition_utils import (
    centralizer_order,
    equal_part_blocks,
    multiplicity_factorial,
    square_sum,
)
from src.modules.taut_ring.taut_ring_model import Monomial, SurfaceClass


class InvalidPartitionException(UnprocessableEntityException):
    """Raised when a partition has non-positive or unsorted parts."""

    def __init__(self, parts: tuple[int, ...]):
        super().__init__(f"{parts} is not a partition (positive parts, descending)")


class MixedWeightException(ComputationException):
    """Raised when vectors on different Hilbert-scheme levels are combined."""

    def __init__(self, first: int, second: int):
        super().__init__(f"cannot combine vectors on Hilb_{first} and Hilb_{second}")


@dataclass(frozen=True, slots=True, order=True)
class Partition:
    """An ordinary partition with the combinatorial data the Nakajima calculus needs."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        if any(p <= 0 for p in self.parts) or list(self.parts) != sorted(self.parts, reverse=True):
            raise InvalidPartitionException(self.parts)

    @property
    def size(self) -> int:
        """|λ|."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """l(λ)."""
        return len(self.parts)

    @property
    def square_sum(self) -> int:
        """s(λ) = Σ λᵢ²."""
        return square_sum(self.parts)

    @property
    def factorial(self) -> int:
        """λ! = ∏ mᵢ! over part multiplicities."""
        return multiplicity_factorial(self.parts)

    @property
    def z(self) -> int:
        """z(λ) = |Aut(λ)| · ∏ λᵢ."""
        return centralizer_order(self.parts)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Positions of equal parts; the Aut(λ) orbits of Nakajima indices."""
        return equal_part_blocks(self.parts)

    def block_of(self, position: int) -> tuple[int, ...]:
        """Return the positions that hold the same part as ``position``."""
        return next(block for block in self.blocks if position in block)

    def insert(self, k: int) -> tuple["Partition", int]:
        """Insert part ``k`` after any equal parts; return the partition and its position."""
        position = sum(1 for p in self.parts if p >= k)
        return Partition((*self.parts[:position], k, *self.parts[position:])), position

    def remove_at(self, position: int) -> "Partition":
        """Drop the part at ``position``."""
        return Partition(self.parts[:position] + self.parts[position + 1 :])

    def to_text(self) -> str:
        """Render as ``(λ₁,λ₂,…)``."""
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True, slots=True, eq=False)
class SlottedVector:
    """Vector of A*(Hilbₙ) with ``slots`` open ambient S-factors appended.

    Each term pairs a partition λ ⊢ n with a class over S^{l(λ)+slots}: the first
    l(λ) indices are attached to the Nakajima operators, the rest are the open
    slots, numbered in the order they were created.
    """

    n: int
    slots: int
    terms: Mapping[Partition, SurfaceClass] = field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SlottedVector):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.slots == other.slots
        return (
            self.n == other.n
            and self.slots == other.slots
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.slots, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _rebuild(self, n: int, terms: Mapping[Partition, SurfaceClass]) -> "SlottedVector":
        return type(self)(n, self.slots, terms)

    def __add__(self, other: "SlottedVector") -> "SlottedVector":
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.n != self.n:
            raise MixedWeightException(self.n, other.n)
        terms = dict(self.terms)
        for partition, gamma in other.terms.items():
            total = terms[partition] + gamma if partition in terms else gamma
            if total:
                terms[partition] = total
            else:
                terms.pop(partition, None)
        return self._rebuild(self.n, terms)

    def __neg__(self) -> "SlottedVector":
        return self.scale(-1)

    def __sub__(self, other: "SlottedVector") -> "SlottedVector":
        return self + other.scale(-1)

    def scale(self, factor: Fraction | int) -> "SlottedVector":
        """Multiply every coefficient class by ``factor``."""
        if not factor:
            return self._rebuild(self.n, {})
        return self._rebuild(self.n, {p: g.scale(factor) for p, g in self.terms.items()})

    def __rmul__(self, factor: Fraction | int) -> "SlottedVector":
        return self.scale(factor)

    def sorted_terms(self) -> list[tuple[Partition, SurfaceClass]]:
        """Return the terms ordered by partition, largest parts first."""
        return sorted(self.terms.items(), key=lambda item: tuple(-p for p in item[0].parts))

    def to_text(self) -> str:
        """Render as a sum of ``q(λ)[Γ]`` terms, or ``0``."""
        if not self.terms:
            return "0"
        return " + ".join(
            f"q{partition.to_text()}[{gamma.to_text()}]" for partition, gamma in self.sorted_terms()
        )


@dataclass(frozen=True, slots=True, eq=False)
class FockVector(SlottedVector):
    """Vector of A*(Hilbₙ) in the Nakajima basis: a `SlottedVector` with no open slots.

    Every class is symmetric under Aut(λ), so two vectors are equal exactly when
    their term maps agree.
    """

    def __post_init__(self):
        if self.slots != 0:
            raise ValueError("FockVector cannot carry open slots")

    @classmethod
    def of(cls, n: int, terms: Mapping[Partition, SurfaceClass]) -> "FockVector":
        """Build a vector, dropping zero coefficients."""
        return cls(n, 0, {p: g for p, g in terms.items() if g})


@dataclass(frozen=True, slots=True)
class BasisEntry:
    """One column of the Nakajima basis: q_λ(Γ)·v for an Aut(λ)-orbit representative Γ."""

    partition: Partition
    monomial: Monomial

    @property
    def codim(self) -> int:
        """Codimension in Hilbₙ: n − l(λ) + codim Γ."""
        return self.partition.size - self.partition.length + self.monomial.codim

    def to_text(self) -> str:
        """Render as ``q(λ)[Γ]``."""
        return f"q{self.partition.to_text()}[{self.monomial.to_text()}]"
