import enum
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol

from pydantic import BaseModel, ConfigDict, Field, field_validator
from src.core.exceptions import UnprocessableEntityException
from src.core.types import Rational


class ArityMismatchException(UnprocessableEntityException):
    """Raised when two classes or a class and an index map disagree on the arity."""

    def __init__(self, expected: int, actual: int, operation: str):
        super().__init__(f"{operation}: expected arity {expected}, got {actual}")


class DivisorLattice(BaseModel):
    """Intersection form on the tautological divisors A¹(S) of the K3 surface.

    The basis divisors are numbered from 0 internally and from 1 in text. The
    default is a single divisor of square 2 (a degree-2 polarization).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    gram: tuple[tuple[Rational, ...], ...] = Field(
        default=((Fraction(2),),), description="Symmetric Gram matrix of the divisor basis"
    )

    @field_validator("gram")
    @classmethod
    def _validate_gram(
        cls, v: tuple[tuple[Fraction, ...], ...]
    ) -> tuple[tuple[Fraction, ...], ...]:
        if any(len(row) != len(v) for row in v):
            raise ValueError("gram must be a square matrix")
        if any(v[i][j] != v[j][i] for i in range(len(v)) for j in range(i)):
            raise ValueError("gram must be symmetric")
        return v

    @property
    def rank(self) -> int:
        """Return ρ, the number of basis divisors."""
        return len(self.gram)

    def pairing(self, i: int, j: int) -> Fraction:
        """Return (αᵢ, αⱼ)."""
        return self.gram[i][j]

    @classmethod
    def from_text(cls, text: str) -> "DivisorLattice":
        """Parse ``"a b; c d"`` (rows separated by ``;``). An empty string gives ρ = 0."""
        rows = [row.split() for row in text.split(";") if row.strip()]
        return cls(gram=tuple(tuple(Fraction(entry) for entry in row) for row in rows))

    def to_text(self) -> str:
        """Inverse of `from_text`."""
        return "; ".join(" ".join(str(entry) for entry in row) for row in self.gram)


class LabelKind(enum.IntEnum):
    """Codimension of a single-index label; the value doubles as its sort rank."""

    ONE = 0
    DIVISOR = 1
    POINT = 2


@dataclass(frozen=True, slots=True, order=True)
class Label:
    """A class of A*(S) attached to one index: 1, a basis divisor αⱼ, or the point class c."""

    kind: LabelKind
    divisor: int = 0

    @property
    def codim(self) -> int:
        """Codimension of the label: 0 for 1, 1 for a divisor, 2 for c."""
        return int(self.kind)

    def to_text(self, index: int) -> str:
        """Render at a 0-based index using the 1-based text grammar."""
        match self.kind:
            case LabelKind.POINT:
                return f"c_{index + 1}"
            case LabelKind.DIVISOR:
                return f"a{self.divisor + 1}_{index + 1}"
            case _:
                return "1"


ONE = Label(LabelKind.ONE)
POINT = Label(LabelKind.POINT)


def divisor_label(j: int) -> Label:
    """Return the label of the j-th basis divisor."""
    return Label(LabelKind.DIVISOR, j)


# Betti numbers b₀…b₄ of a K3 surface.
K3_BETTI_NUMBERS = (1, 0, 22, 0, 1)


def euler_characteristic(betti: Sequence[int] = K3_BETTI_NUMBERS) -> int:
    """Return Σ (−1)ⁱ bᵢ, the degree of the self-intersection of the diagonal.

    Depends on the Betti numbers only, never on the ring's reduction rules.
    """
    return sum((-1) ** i * b for i, b in enumerate(betti))


@dataclass(frozen=True, slots=True)
class Monomial:
    """Canonical monomial of R*(S^k): disjoint diagonal pairs times labels on free indices.

    Pairs are ``(i, j)`` with ``i < j`` and sorted; labels are ``(index, Label)``
    sorted by index with trivial labels omitted. Matched indices carry no label.
    """

    arity: int
    pairs: tuple[tuple[int, int], ...] = ()
    labels: tuple[tuple[int, Label], ...] = ()

    @classmethod
    def build(
        cls,
        arity: int,
        pairs: Iterable[tuple[int, int]] = (),
        labels: Iterable[tuple[int, Label]] = (),
    ) -> "Monomial":
        """Normalize pair orientation and ordering, dropping trivial labels."""
        return cls(
            arity,
            tuple(sorted((min(i, j), max(i, j)) for i, j in pairs)),
            tuple(sorted((i, label) for i, label in labels if label.kind != LabelKind.ONE)),
        )

    @property
    def codim(self) -> int:
        """Codimension: 2 per diagonal pair plus the label codimensions."""
        return 2 * len(self.pairs) + sum(label.codim for _, label in self.labels)

    @property
    def sort_key(self) -> tuple:
        """Deterministic ordering key."""
        return (
            self.pairs,
            tuple((i, label.kind, label.divisor) for i, label in self.labels),
        )

    def label_at(self, index: int) -> Label:
        """Return the label attached to ``index``, or 1 when it carries none."""
        for i, label in self.labels:
            if i == index:
                return label
        return ONE

    def relabel(self, mapping: Sequence[int], arity: int) -> "Monomial":
        """Move index ``i`` to ``mapping[i]`` inside a space of the given arity.

        Injective relabelings never create clusters, so the result stays canonical.
        """
        return Monomial.build(
            arity,
            ((mapping[i], mapping[j]) for i, j in self.pairs),
            ((mapping[i], label) for i, label in self.labels),
        )

    def to_text(self) -> str:
        """Render as a product of diagonals and labelled factors, ``1`` when empty."""
        factors = [f"D({i + 1},{j + 1})" for i, j in self.pairs]
        factors.extend(label.to_text(i) for i, label in self.labels)
        return "*".join(factors) if factors else "1"


class ProductRule(Protocol):
    """Anything able to multiply two classes of equal arity (the ring)."""

    def mul(self, a: "SurfaceClass", b: "SurfaceClass") -> "SurfaceClass": ...


def _format_coefficient(coef: Fraction) -> str:
    return str(coef.numerator) if coef.denominator == 1 else f"{coef.numerator}/{coef.denominator}"


@dataclass(frozen=True, slots=True, eq=False)
class SurfaceClass:
    """Element of R*(S^k) as a finite rational combination of canonical monomials.

    Values are immutable: arithmetic returns new classes and never touches ``terms``.
    """

    ring: ProductRule
    arity: int
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SurfaceClass):
            return NotImplemented
        return self.arity == other.arity and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _combine(self, other: "SurfaceClass", sign: int) -> "SurfaceClass":
        if other.arity != self.arity:
            raise ArityMismatchException(self.arity, other.arity, "add")
        terms = dict(self.terms)
        for monomial, coef in other.terms.items():
            value = terms.get(monomial, Fraction(0)) + sign * coef
            if value:
                terms[monomial] = value
            else:
                terms.pop(monomial, None)
        return SurfaceClass(self.ring, self.arity, terms)

    def __add__(self, other: "SurfaceClass") -> "SurfaceClass":
        return self._combine(other, 1)

    def __sub__(self, other: "SurfaceClass") -> "SurfaceClass":
        return self._combine(other, -1)

    def __neg__(self) -> "SurfaceClass":
        return self.scale(-1)

    def scale(self, factor: Fraction | int) -> "SurfaceClass":
        """Multiply every coefficient by a rational."""
        if not factor:
            return SurfaceClass(self.ring, self.arity, {})
        return SurfaceClass(
            self.ring, self.arity, {m: coef * factor for m, coef in self.terms.items()}
        )

    def __mul__(self, other: "SurfaceClass | Fraction | int") -> "SurfaceClass":
        if isinstance(other, SurfaceClass):
            return self.ring.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: Fraction | int) -> "SurfaceClass":
        return self.scale(other)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Return the terms in canonical monomial order."""
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key)

    @property
    def degree(self) -> int | None:
        """Common codimension of all monomials, or None for inhomogeneous (or zero) classes."""
        codims = {monomial.codim for monomial in self.terms}
        return codims.pop() if len(codims) == 1 else None

    def to_text(self) -> str:
        """Serialize with the 1-based grammar, e.g. ``3/2*D(1,2)*c_3 - a1_2*c_1``."""
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for position, (monomial, coef) in enumerate(self.sorted_terms()):
            sign = "-" if coef < 0 else "+"
            magnitude = abs(coef)
            body = monomial.to_text()
            if magnitude != 1:
                body = _format_coefficient(magnitude) if body == "1" else (
                    f"{_format_coefficient(magnitude)}*{body}"
                )
            if position == 0:
                chunks.append(f"-{body}" if sign == "-" else body)
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"SurfaceClass(k={self.arity}, {self.to_text()})"
