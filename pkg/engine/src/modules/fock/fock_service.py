import logging
import math
from collections.abc import Collection, Iterable, Sequence
from fractions import Fraction

from sympy import SparseMatrix
from src.core.exceptions import UnprocessableEntityException
from src.core.utils.matrix_utils import matrix_from_columns
from src.core.utils.partition_utils import partitions
from src.modules.operators.operators_model import OpExpr, QWord
from src.modules.taut_ring.taut_ring_model import ArityMismatchException, Monomial, SurfaceClass
from src.modules.taut_ring.taut_ring_service import TautologicalRing

from .fock_model import BasisEntry, FockVector, MixedWeightException, Partition, SlottedVector

logger = logging.getLogger(__name__)


class InvalidNakajimaIndexException(UnprocessableEntityException):
    """Raised when a creation or annihilation primitive receives a non-positive index."""

    def __init__(self, k: int, operation: str):
        super().__init__(f"{operation} needs a positive index, got {k}")


class InhomogeneousClassException(UnprocessableEntityException):
    """Raised when a codimension is requested for a vector that has none."""

    def __init__(self, description: str):
        super().__init__(f"{description} is not homogeneous")


class FockSpace:
    """The Nakajima model of ⊕ₙ A*(Hilbₙ) over a tautological ring.

    Vectors carry one class per partition; open S-slots are appended on the right
    of the Nakajima indices in creation order. Every operator word is evaluated
    through the two primitives `apply_create` and `apply_annihilate` followed by a
    single `couple` step, so a word's attached class indexes its operators from
    left to right while application runs right to left.
    """

    def __init__(self, ring: TautologicalRing, annihilation_sign: int = -1):
        self.ring = ring
        self.annihilation_sign = annihilation_sign
        self._basis: dict[int, list[BasisEntry]] = {}
        self._index: dict[int, dict[tuple[Partition, Monomial], int]] = {}
        self._representatives: dict[tuple[Monomial, Partition], Monomial] = {}

    # ------------------------------------------------------------------ vectors

    def vacuum(self) -> FockVector:
        """Return the generator v of A*(Hilb₀)."""
        return FockVector.of(0, {Partition(): self.ring.one(0)})

    def zero(self, n: int, slots: int = 0) -> SlottedVector:
        """Return the zero vector at level n with ``slots`` open factors."""
        if slots == 0:
            return FockVector(n, 0, {})
        return SlottedVector(n, slots, {})

    def one_n(self, n: int) -> FockVector:
        """Return the fundamental class 1ₙ = q₁(1)ⁿ·v / n!."""
        word = self.apply_word((1,) * n, self.ring.one(n), self.vacuum())
        return self.to_fock(word.scale(Fraction(1, math.factorial(n))))

    def to_fock(self, sv: SlottedVector) -> FockVector:
        """Narrow a slot-free vector to a `FockVector`."""
        if sv.slots != 0:
            raise ArityMismatchException(0, sv.slots, "to_fock")
        if isinstance(sv, FockVector):
            return sv
        return FockVector.of(sv.n, sv.terms)

    def _slotted(
        self, n: int, terms: dict[Partition, SurfaceClass], slots: int
    ) -> SlottedVector:
        pruned = {p: g for p, g in terms.items() if g}
        if slots == 0:
            return FockVector(n, 0, pruned)
        return SlottedVector(n, slots, pruned)

    @staticmethod
    def _accumulate(
        terms: dict[Partition, SurfaceClass], partition: Partition, gamma: SurfaceClass
    ) -> None:
        terms[partition] = terms[partition] + gamma if partition in terms else gamma

    # ------------------------------------------------------------------ primitives

    def apply_create(self, k: int, sv: SlottedVector) -> SlottedVector:
        """Apply q_k (k > 0): insert part k and tie its index to a new last slot by Δ."""
        if k <= 0:
            raise InvalidNakajimaIndexException(k, "apply_create")
        terms: dict[Partition, SurfaceClass] = {}
        for partition, gamma in sv.terms.items():
            length = partition.length
            inserted, position = partition.insert(k)
            arity = length + sv.slots + 2
            new_slot = arity - 1
            mapping = [i if i < position else i + 1 for i in range(length)]
            mapping.extend(length + 1 + j for j in range(sv.slots))
            lifted = self.ring.pullback(gamma, mapping, arity)
            tied = self.ring.from_terms(
                arity,
                (
                    (Monomial.build(arity, (*m.pairs, (position, new_slot)), m.labels), c)
                    for m, c in lifted.terms.items()
                ),
            )
            symmetric = self.ring.symmetrize(tied, (inserted.block_of(position),))
            self._accumulate(terms, inserted, symmetric)
        return self._slotted(sv.n + k, terms, sv.slots + 1)

    def apply_annihilate(self, k: int, sv: SlottedVector) -> SlottedVector:
        """Apply q₋ₖ (k > 0): remove a part k, moving its index to a new last slot."""
        if k <= 0:
            raise InvalidNakajimaIndexException(k, "apply_annihilate")
        coefficient = self.annihilation_sign * k
        terms: dict[Partition, SurfaceClass] = {}
        for partition, gamma in sv.terms.items():
            length = partition.length
            arity = length + sv.slots
            for position, part in enumerate(partition.parts):
                if part != k:
                    continue
                mapping = [
                    arity - 1 if i == position else (i if i < position else i - 1)
                    for i in range(length)
                ]
                mapping.extend(length - 1 + j for j in range(sv.slots))
                moved = self.ring.pullback(gamma, mapping, arity)
                self._accumulate(terms, partition.remove_at(position), moved.scale(coefficient))
        return self._slotted(sv.n - k, terms, sv.slots + 1)

    def apply_index(self, k: int, sv: SlottedVector) -> SlottedVector:
        """Apply q_k for any integer k; q₀ = 0 still opens its slot."""
        if k > 0:
            return self.apply_create(k, sv)
        if k < 0:
            return self.apply_annihilate(-k, sv)
        return self.zero(sv.n, sv.slots + 1)

    def extend_slots(self, sv: SlottedVector, count: int) -> SlottedVector:
        """Append ``count`` open slots carrying the unit class."""
        terms = {
            partition: self.ring.pullback(gamma, range(gamma.arity), gamma.arity + count)
            for partition, gamma in sv.terms.items()
        }
        return self._slotted(sv.n, terms, sv.slots + count)

    def couple(
        self,
        sv: SlottedVector,
        gamma: SurfaceClass,
        slots: Sequence[int],
        forget: Collection[int],
    ) -> SlottedVector:
        """Multiply ``gamma`` onto the given open slots, then integrate out ``forget``.

        Args:
            sv: Vector with open slots.
            gamma: Class whose index j is placed on slot ``slots[j]``.
            slots: Slot positions (0-based among the open slots).
            forget: Slot positions to push forward; the rest keep their order.
        """
        if gamma.arity != len(slots):
            raise ArityMismatchException(len(slots), gamma.arity, "couple")
        terms: dict[Partition, SurfaceClass] = {}
        for partition, vector_class in sv.terms.items():
            offset = partition.length
            lifted = self.ring.pullback(gamma, [offset + s for s in slots], vector_class.arity)
            product = self.ring.mul(vector_class, lifted)
            pushed = self.ring.pushforward(product, [offset + f for f in forget])
            if pushed:
                self._accumulate(terms, partition, pushed)
        return self._slotted(sv.n, terms, sv.slots - len(set(forget)))

    def contract_slots(self, sv: SlottedVector, gamma: SurfaceClass) -> FockVector:
        """Pair every open slot with ``gamma`` and integrate them all out."""
        slots = range(sv.slots)
        return self.to_fock(self.couple(sv, gamma, slots, slots))

    def _apply_indices(self, indices: Sequence[int], sv: SlottedVector) -> SlottedVector:
        current = sv
        for k in reversed(indices):
            current = self.apply_index(k, current)
        return current

    def apply_word(
        self, indices: Sequence[int], gamma: SurfaceClass, sv: SlottedVector
    ) -> SlottedVector:
        """Evaluate q_{i₁}…q_{i_t}(Γ) on ``sv``; Γ's index j belongs to the j-th operator."""
        t = len(indices)
        if gamma.arity != t:
            raise ArityMismatchException(t, gamma.arity, "apply_word")
        base = sv.slots
        opened = self._apply_indices(indices, sv)
        positions = [base + t - 1 - j for j in range(t)]
        return self.couple(opened, gamma, positions, positions)

    def apply_slotted_word(
        self, indices: Sequence[int], psi: SurfaceClass, sv: SlottedVector
    ) -> SlottedVector:
        """Evaluate a word whose class Ψ has one extra, last index left open as a new slot."""
        t = len(indices)
        if psi.arity != t + 1:
            raise ArityMismatchException(t + 1, psi.arity, "apply_slotted_word")
        base = sv.slots
        opened = self.extend_slots(self._apply_indices(indices, sv), 1)
        positions = [base + t - 1 - j for j in range(t)]
        return self.couple(opened, psi, [*positions, base + t], positions)

    # ------------------------------------------------------------------ operators

    def nakajima_op(self, indices: Iterable[int], gamma: SurfaceClass) -> QWord:
        """Return the handle q_{i₁}…q_{i_t}(Γ)."""
        word = tuple(indices)
        if gamma.arity != len(word):
            raise ArityMismatchException(len(word), gamma.arity, "nakajima_op")
        return QWord(word, gamma)

    def transpose_op(self, word: QWord) -> QWord:
        """Return the formal transpose, using ᵗq_m = (−1)^m q₋ₘ factor by factor."""
        t = len(word.indices)
        sign = (-1) ** sum(abs(k) for k in word.indices)
        gamma = self.ring.pullback(word.gamma, [t - 1 - j for j in range(t)], t)
        return QWord(tuple(-k for k in reversed(word.indices)), gamma.scale(sign))

    def apply(self, op: OpExpr, v: SlottedVector) -> SlottedVector:
        """Evaluate ``op`` on ``v``."""
        return op.apply(self, v)

    # ------------------------------------------------------------------ basis

    def basis(self, n: int) -> list[BasisEntry]:
        """Enumerate the Nakajima basis of A*(Hilbₙ) in a fixed order."""
        if n < 0:
            return []
        cached = self._basis.get(n)
        if cached is not None:
            return cached
        entries: list[BasisEntry] = []
        for parts in partitions(n):
            partition = Partition(parts)
            representatives = {
                self.ring.orbit_representative(m, partition.blocks)
                for m in self.ring.canonical_basis(partition.length)
            }
            entries.extend(
                BasisEntry(partition, m)
                for m in sorted(representatives, key=lambda m: (m.codim, m.sort_key))
            )
        self._basis[n] = entries
        self._index[n] = {(e.partition, e.monomial): j for j, e in enumerate(entries)}
        logger.debug("basis(%d) has %d vectors", n, len(entries))
        return entries

    def basis_vector(self, n: int, column: int) -> FockVector:
        """Return q_λ(Γ)·v for the given column, with Γ symmetrized under Aut(λ)."""
        entry = self.basis(n)[column]
        monomial = self.ring.from_monomial(entry.monomial)
        gamma = self.ring.symmetrize(monomial, entry.partition.blocks)
        return FockVector.of(n, {entry.partition: gamma})

    def _representative(self, monomial: Monomial, partition: Partition) -> Monomial:
        key = (monomial, partition)
        cached = self._representatives.get(key)
        if cached is None:
            cached = self.ring.orbit_representative(monomial, partition.blocks)
            self._representatives[key] = cached
        return cached

    def coordinates(self, v: SlottedVector) -> dict[int, Fraction]:
        """Expand a vector in `basis` (sparse; zero coordinates omitted)."""
        if v.slots != 0:
            raise ArityMismatchException(0, v.slots, "coordinates")
        self.basis(v.n)
        index = self._index.get(v.n, {})
        coordinates: dict[int, Fraction] = {}
        for partition, gamma in v.terms.items():
            for monomial, coef in gamma.terms.items():
                representative = self._representative(monomial, partition)
                column = index[(partition, representative)]
                coordinates[column] = coordinates.get(column, Fraction(0)) + coef
        return {j: c for j, c in coordinates.items() if c}

    def vector_from_coordinates(self, n: int, coordinates: dict[int, Fraction]) -> FockVector:
        """Build the vector at level n from basis coordinates."""
        total: SlottedVector = self.zero(n)
        for column, coef in sorted(coordinates.items()):
            total = total + self.basis_vector(n, column).scale(coef)
        return self.to_fock(total)

    def matrix_of(self, op: OpExpr, n_source: int) -> SparseMatrix:
        """Evaluate ``op`` on every basis vector of A*(Hilb_{n_source}).

        Raises:
            MixedWeightException: If the operator mixes target levels.
        """
        shift = op.shift or 0
        n_target = n_source + shift
        rows = len(self.basis(n_target))
        columns: list[dict[int, Fraction]] = []
        for column in range(len(self.basis(n_source))):
            image = op.apply(self, self.basis_vector(n_source, column))
            if image.terms and image.n != n_target:
                raise MixedWeightException(n_target, image.n)
            columns.append(self.coordinates(image) if image.terms else {})
        return matrix_from_columns(rows, columns)

    # ------------------------------------------------------------------ grading

    def codim_of(self, v: BasisEntry | FockVector) -> int:
        """Return i such that the vector lies in A^i(Hilbₙ)."""
        if isinstance(v, BasisEntry):
            return v.codim
        codims = set()
        for partition, gamma in v.terms.items():
            degree = gamma.degree
            if degree is None:
                raise InhomogeneousClassException(v.to_text())
            codims.add(partition.size - partition.length + degree)
        if len(codims) != 1:
            raise InhomogeneousClassException(v.to_text())
        return codims.pop()

    def basis_index_lines(self, n: int) -> list[str]:
        """Render the basis-index file: ``index<TAB>codim<TAB>λ<TAB>Γ`` per column."""
        return [
            f"{j}\t{entry.codim}\t{entry.partition.to_text()}\t{entry.monomial.to_text()}"
            for j, entry in enumerate(self.basis(n))
        ]
