import enum
from abc import ABC, abstractmethod
from collections.abc import Collection, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Protocol, override

from pydantic import BaseModel, ConfigDict, Field
from src.core.exceptions import UnprocessableEntityException
from src.core.types import Rational
from src.modules.fock.fock_model import MixedWeightException, SlottedVector
from src.modules.taut_ring.taut_ring_model import DivisorLattice, SurfaceClass


class Sides[T](NamedTuple):
    """The two sides of an identity, in the order it is stated."""

    lhs: T
    rhs: T


class UnsupportedWedgeException(UnprocessableEntityException):
    """Raised when a g_NS element mentions a Mukai vector outside the configured lattice."""

    def __init__(self, description: str):
        super().__init__(f"no operator is attached to {description}")


class WordEvaluator(Protocol):
    """The evaluation primitives an operator expression needs from the Fock model."""

    def apply_word(
        self, indices: Sequence[int], gamma: SurfaceClass, sv: SlottedVector
    ) -> SlottedVector: ...

    def apply_slotted_word(
        self, indices: Sequence[int], psi: SurfaceClass, sv: SlottedVector
    ) -> SlottedVector: ...

    def couple(
        self,
        sv: SlottedVector,
        gamma: SurfaceClass,
        slots: Sequence[int],
        forget: Collection[int],
    ) -> SlottedVector: ...

    def zero(self, n: int, slots: int = 0) -> SlottedVector: ...


class OpExpr(ABC):
    """Formal operator on the Fock model, evaluated lazily against a `WordEvaluator`.

    ``shift`` is the change of n the operator causes (creation minus annihilation
    weight). Plain operators keep the number of open slots; slotted ones (the LQW
    operators before pairing with γ) open exactly one.
    """

    @property
    @abstractmethod
    def shift(self) -> int | None:
        """Level change, or None for an operator with no terms."""

    @property
    def opens_slot(self) -> bool:
        """Whether the operator leaves one extra S-factor open."""
        return False

    @abstractmethod
    def apply(self, space: WordEvaluator, v: SlottedVector) -> SlottedVector:
        """Apply the operator to a slotted vector."""

    def __add__(self, other: "OpExpr") -> "OpExpr":
        return LinearCombination.of((Fraction(1), self), (Fraction(1), other))

    def __sub__(self, other: "OpExpr") -> "OpExpr":
        return LinearCombination.of((Fraction(1), self), (Fraction(-1), other))

    def __neg__(self) -> "OpExpr":
        return self.scale(-1)

    def scale(self, factor: Fraction | int) -> "OpExpr":
        """Multiply by a rational scalar."""
        return LinearCombination.of((Fraction(factor), self))

    def __rmul__(self, factor: Fraction | int) -> "OpExpr":
        return self.scale(factor)

    def __matmul__(self, other: "OpExpr") -> "OpExpr":
        """Composition: ``(a @ b)(v) = a(b(v))``."""
        return Compose(self, other)


@dataclass(frozen=True, eq=False)
class Identity(OpExpr):
    """The identity operator."""

    @property
    @override
    def shift(self) -> int:
        return 0

    @override
    def apply(self, space: WordEvaluator, v: SlottedVector) -> SlottedVector:
        return v


@dataclass(frozen=True, eq=False)
class ZeroOp(OpExpr):
    """The zero operator of a given level change."""

    level_change: int = 0
    slotted: bool = False

    @property
    @override
    def shift(self) -> int:
        return self.level_change

    @property
    @override
    def opens_slot(self) -> bool:
        return self.slotted

    @override
    def apply(self, space: WordEvaluator, v: SlottedVector) -> SlottedVector:
        return space.zero(v.n + self.level_change, v.slots + (1 if self.slotted else 0))


@dataclass(frozen=True, eq=False)
class QWord(OpExpr):
    """q_{i₁}…q_{i_t}(Γ): Γ's j-th index is attached to the j-th listed operator."""

    indices: tuple[int, ...]
    gamma: SurfaceClass

    @property
    @override
    def shift(self) -> int:
        return sum(self.indices)

    @override
    def apply(self, space: WordEvaluator, v: SlottedVector) -> SlottedVector:
        if 0 in self.indices or not self.gamma:
            return space.zero(v.n + self.shift, v.slots)
        return space.apply_word(self.indices, self.gamma, v)

    @property
    def annihilation(self) -> int:
        """Annihilation weight of the word."""
        return -sum(k for k in self.indices if k < 0)


@dataclass(frozen=True, eq=False)
class SlottedWord(OpExpr):
    """A word whose class Ψ has one extra trailing index that stays open as a new slot."""

    indices: tuple[int, ...]
    psi: SurfaceClass

    @property
    @override
    def shift(self) -> int:
        return sum(self.indices)

    @property
    @override
    def opens_slot(self) -> bool:
        return True

    @override
    def apply(self, space: WordEvaluator, v: SlottedVector) -> SlottedVector:
        if 0 in self.indices or not self.psi:
            return space.zero(v.n + self.shift, v.slots + 1)
        return space.apply_slotted_word(self.indices, self.psi, v)


@dataclass(frozen=True, eq=False)
class Compose(OpExpr):
    """``left ∘ right``."""

    left: OpExpr
    right: OpExpr

    @property
    @override
    def shift(self) -> int | None:
        if self.left.shift is None or self.right.shift is None:
            return None
        return self.left.shift + self.right.shift

    @override
    def apply(self, space: WordEvaluator, v: SlottedVector) -> SlottedVector:
        return self.left.apply(space, self.right.apply(space, v))


@dataclass(frozen=True, eq=False)
class LinearCombination(OpExpr):
    """Σ cᵢ·opᵢ. All summands must share one level change."""

    terms: tuple[tuple[Fraction, OpExpr], ...] = ()

    @classmethod
    def of(cls, *terms: tuple[Fraction | int, OpExpr]) -> "LinearCombination":
        """Build a combination from (coefficient, operator) pairs."""
        flat: list[tuple[Fraction, OpExpr]] = []
        for coef, op in terms:
            if not coef:
                continue
            if isinstance(op, LinearCombination):
                flat.extend((Fraction(coef) * inner, child) for inner, child in op.terms)
            else:
                flat.append((Fraction(coef), op))
        return cls(tuple(flat))

    @classmethod
    def total(cls, ops: Iterable[OpExpr]) -> "LinearCombination":
        """Sum of operators with coefficient 1."""
        return cls.of(*((Fraction(1), op) for op in ops))

    @property
    @override
    def shift(self) -> int | None:
        shifts = {op.shift for _, op in self.terms} - {None}
        if len(shifts) > 1:
            first, second = sorted(s for s in shifts if s is not None)[:2]
            raise MixedWeightException(first, second)
        return shifts.pop() if shifts else None

    @property
    @override
    def opens_slot(self) -> bool:
        return any(op.opens_slot for _, op in self.terms)

    @override
    def apply(self, space: WordEvaluator, v: SlottedVector) -> SlottedVector:
        slots = v.slots + (1 if self.opens_slot else 0)
        total = space.zero(v.n + (self.shift or 0), slots)
        for coef, op in self.terms:
            total = total + op.apply(space, v).scale(coef)
        return total


@dataclass(frozen=True, eq=False)
class SlottedProduct(OpExpr):
    """F₁…F_t(Γ) for slotted operators Fᵢ: Γ's i-th index pairs with the slot of Fᵢ."""

    factors: tuple[OpExpr, ...]
    gamma: SurfaceClass

    @property
    @override
    def shift(self) -> int | None:
        shifts = [factor.shift for factor in self.factors]
        if any(s is None for s in shifts):
            return None
        return sum(s for s in shifts if s is not None)

    @override
    def apply(self, space: WordEvaluator, v: SlottedVector) -> SlottedVector:
        base = v.slots
        current = v
        for factor in reversed(self.factors):
            current = factor.apply(space, current)
        t = len(self.factors)
        positions = [base + t - 1 - i for i in range(t)]
        return space.couple(current, self.gamma, positions, positions)


def bracket(a: OpExpr, b: OpExpr) -> OpExpr:
    """Return the commutator ``[a, b] = a∘b − b∘a``."""
    return a @ b - b @ a


def permute_class(gamma: SurfaceClass, mapping: Sequence[int]) -> SurfaceClass:
    """Relabel index i of ``gamma`` as ``mapping[i]`` (a permutation)."""
    return SurfaceClass(
        gamma.ring,
        gamma.arity,
        {m.relabel(mapping, gamma.arity): c for m, c in gamma.terms.items()},
    )


def normal_ordered(indices: Sequence[int], gamma: SurfaceClass) -> QWord:
    """Return :q_{i₁}…q_{i_t}(Γ): with indices sorted descending, Γ following its operators."""
    order = sorted(range(len(indices)), key=lambda j: -indices[j])
    mapping = [0] * len(indices)
    for new, old in enumerate(order):
        mapping[old] = new
    return QWord(tuple(indices[j] for j in order), permute_class(gamma, mapping))


class WordSum:
    """Accumulator of words of one level change, merging words with equal index lists.

    Plain sums normal-order every word on insertion. Slotted sums take the words
    as given, since their classes carry the trailing open index.
    """

    def __init__(self, weight: int, *, slotted: bool = False):
        self.weight = weight
        self.slotted = slotted
        self._words: dict[tuple[int, ...], SurfaceClass] = {}

    def add(
        self, indices: Sequence[int], gamma: SurfaceClass, coef: Fraction | int = 1
    ) -> None:
        """Add ``coef``·q_word(Γ), merging with an existing word."""
        if not coef or not gamma or 0 in indices:
            return
        if self.slotted:
            key, cls = tuple(indices), gamma
        else:
            word = normal_ordered(indices, gamma)
            key, cls = word.indices, word.gamma
        cls = cls.scale(coef)
        self._words[key] = self._words[key] + cls if key in self._words else cls

    def add_op(self, op: "QWord | SlottedWord", coef: Fraction | int = 1) -> None:
        """Add a single word operator."""
        if isinstance(op, SlottedWord):
            self.add(op.indices, op.psi, coef)
        else:
            self.add(op.indices, op.gamma, coef)

    def __len__(self) -> int:
        return sum(1 for cls in self._words.values() if cls)

    def items(self) -> list[tuple[tuple[int, ...], SurfaceClass]]:
        """Return the nonzero (indices, class) pairs in index order."""
        return [(key, cls) for key, cls in sorted(self._words.items()) if cls]

    def to_op(self) -> OpExpr:
        """Return the collected words as one operator, ZeroOp when empty."""
        words: list[OpExpr] = [
            SlottedWord(key, cls) if self.slotted else QWord(key, cls) for key, cls in self.items()
        ]
        if not words:
            return ZeroOp(self.weight, self.slotted)
        if len(words) == 1:
            return words[0]
        return LinearCombination.total(words)


# ---------------------------------------------------------------------- g_NS


class MukaiKind(enum.IntEnum):
    """Kinds of basis vectors of V ⊕ U, in the order used to normalize wedges."""

    E = 0
    DIVISOR = 1
    DELTA = 2
    F = 3


@dataclass(frozen=True, slots=True, order=True)
class MukaiVector:
    """A basis vector of V ⊕ U: e, f, δ, or the lattice divisor αⱼ."""

    kind: MukaiKind
    divisor: int = 0

    def to_text(self) -> str:
        """Render as ``e``, ``f``, ``delta`` or ``a<j>`` with j 1-based."""
        match self.kind:
            case MukaiKind.E:
                return "e"
            case MukaiKind.F:
                return "f"
            case MukaiKind.DELTA:
                return "delta"
            case _:
                return f"a{self.divisor + 1}"


E = MukaiVector(MukaiKind.E)
F = MukaiVector(MukaiKind.F)
DELTA = MukaiVector(MukaiKind.DELTA)


def mukai_divisor(j: int) -> MukaiVector:
    """Return the Mukai vector of the j-th basis divisor."""
    return MukaiVector(MukaiKind.DIVISOR, j)


type Wedge = tuple[MukaiVector, MukaiVector]


@dataclass(frozen=True, slots=True, eq=False)
class GNSElement:
    """Element of g_NS = ∧²(V ⊕ U) as a combination of normalized wedges a∧b with a < b."""

    terms: Mapping[Wedge, Fraction] = field(default_factory=dict)

    @classmethod
    def wedge(cls, a: MukaiVector, b: MukaiVector, coef: Fraction | int = 1) -> "GNSElement":
        """Return coef·a∧b, normalized by antisymmetry."""
        if a == b or not coef:
            return cls({})
        if a < b:
            return cls({(a, b): Fraction(coef)})
        return cls({(b, a): -Fraction(coef)})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GNSElement):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "GNSElement") -> "GNSElement":
        terms = dict(self.terms)
        for key, coef in other.terms.items():
            value = terms.get(key, Fraction(0)) + coef
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return GNSElement(terms)

    def __neg__(self) -> "GNSElement":
        return self.scale(-1)

    def __sub__(self, other: "GNSElement") -> "GNSElement":
        return self + other.scale(-1)

    def scale(self, factor: Fraction | int) -> "GNSElement":
        """Multiply every coefficient by ``factor``."""
        if not factor:
            return GNSElement({})
        return GNSElement({key: coef * factor for key, coef in self.terms.items()})

    def to_text(self) -> str:
        """Render as a sum of wedges, ``0`` when empty."""
        if not self.terms:
            return "0"
        return " + ".join(
            f"{coef}*{a.to_text()}^{b.to_text()}" for (a, b), coef in sorted(self.terms.items())
        )


class WeightVector(BaseModel):
    """Label of one joint eigenspace of a weight decomposition."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    i: int | None = Field(None, description="Codimension, when the codim grading is included")
    s: int | None = Field(None, description="Beauville shift i − h̃-eigenvalue")
    mu: tuple[Rational, ...] = Field((), description="Eigenvalues of the chosen Cartan operators")
    dimension: int = Field(0, ge=0, description="Dimension of the eigenspace")


@dataclass(frozen=True, slots=True)
class MukaiForm:
    """The extended Mukai pairing on V ⊕ U for Hilbₙ(S): (e,f) = 1 and (δ,δ) = 2 − 2n."""

    lattice: DivisorLattice
    n: int

    def pairing(self, a: MukaiVector, b: MukaiVector) -> Fraction:
        """Return the Mukai pairing of two basis vectors."""
        if {a.kind, b.kind} == {MukaiKind.E, MukaiKind.F}:
            return Fraction(1)
        if a.kind == b.kind == MukaiKind.DIVISOR:
            if max(a.divisor, b.divisor) >= self.lattice.rank:
                raise UnsupportedWedgeException(f"divisor a{max(a.divisor, b.divisor) + 1}")
            return Fraction(self.lattice.pairing(a.divisor, b.divisor))
        if a.kind == b.kind == MukaiKind.DELTA:
            return Fraction(2 - 2 * self.n)
        return Fraction(0)
