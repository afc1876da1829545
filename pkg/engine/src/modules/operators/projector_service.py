import itertools
import logging
from collections.abc import Sequence
from fractions import Fraction

import sympy
from sympy import Matrix
from src.core.utils.matrix_utils import joint_eigenspaces, to_fraction
from src.core.utils.partition_utils import centralizer_order, partitions
from src.modules.taut_ring.taut_ring_model import SurfaceClass

from .operators_model import OpExpr, WeightVector, WordSum
from .operators_service import OperatorService

logger = logging.getLogger(__name__)

type WeightBlock = tuple[WeightVector, Matrix]


class ProjectorService:
    """Chow–Künneth projectors Pᵢ, the diagonal decomposition and weight decompositions."""

    def __init__(self, operators: OperatorService):
        self.operators = operators
        self.space = operators.space
        self.ring = operators.ring

    # ------------------------------------------------------------------ transposed projectors of S

    def transposed_component(self, i: int) -> SurfaceClass:
        """Return ᵗπᵢ on S × S: c₂ for i = −1, Δ − c₁ − c₂ for i = 0, c₁ for i = 1."""
        match i:
            case -1:
                return self.ring.point(1, 2)
            case 0:
                return (
                    self.ring.diagonal(0, 1, 2) - self.ring.point(0, 2) - self.ring.point(1, 2)
                )
            case 1:
                return self.ring.point(0, 2)
            case _:
                return self.ring.zero(2)

    def _paired(self, labels: Sequence[SurfaceClass], length: int) -> SurfaceClass:
        """∏ⱼ labels[j] placed on the creation index j and its annihilation partner l + j."""
        arity = 2 * length
        result = self.ring.one(arity)
        for j, pair in enumerate(labels):
            result = result * self.ring.pullback(pair, [j, length + j], arity)
        return result

    @staticmethod
    def _pair_word(parts: Sequence[int]) -> tuple[int, ...]:
        return (*parts, *(-p for p in parts))

    # ------------------------------------------------------------------ operators

    def op_diagonal(self, n: int) -> OpExpr:
        """Return Σ_{λ⊢n} (−1)^{l(λ)}/z(λ) q_λq₋λ(∏ Δ_{j,l+j}), the identity of A*(Hilbₙ)."""
        diagonal = self.ring.diagonal(0, 1, 2)
        words = WordSum(0)
        for parts in partitions(n):
            length = len(parts)
            words.add(
                self._pair_word(parts),
                self._paired([diagonal] * length, length),
                Fraction((-1) ** length, centralizer_order(parts)),
            )
        return words.to_op()

    def op_projector(self, i: int, n: int) -> OpExpr:
        """Return the Chow–Künneth projector Pᵢ; the sum is empty unless |i| ≤ n."""
        words = WordSum(0)
        components = [self.transposed_component(j) for j in (-1, 0, 1)]
        for size_lower in range(n + 1):
            for size_middle in range(n - size_lower + 1):
                size_upper = n - size_lower - size_middle
                for lower, middle, upper in itertools.product(
                    partitions(size_lower), partitions(size_middle), partitions(size_upper)
                ):
                    if len(upper) - len(lower) != i:
                        continue
                    blocks = zip((lower, middle, upper), components, strict=True)
                    word: list[int] = []
                    cls = self.ring.one(0)
                    sign = 1
                    weight = 1
                    for parts, component in blocks:
                        length = len(parts)
                        piece = self._paired([component] * length, length)
                        cls = self._concatenate(cls, piece)
                        word.extend(self._pair_word(parts))
                        sign *= (-1) ** length
                        weight *= centralizer_order(parts)
                    words.add(word, cls, Fraction(sign, weight))
        return words.to_op()

    def _concatenate(self, left: SurfaceClass, right: SurfaceClass) -> SurfaceClass:
        """Return left ⊠ right on S^{a+b}."""
        arity = left.arity + right.arity
        return self.ring.pullback(left, range(left.arity), arity) * self.ring.pullback(
            right, range(left.arity, arity), arity
        )

    def op_projector_labelled(self, i: int, n: int) -> OpExpr:
        """Return Pᵢ as Σ_λ (−1)^{l(λ)}/z(λ) Σ_{i₁+…+i_l=i} q_λq₋λ(∏ⱼ ᵗπ_{iⱼ})."""
        words = WordSum(0)
        for parts in partitions(n):
            length = len(parts)
            for labels in itertools.product((-1, 0, 1), repeat=length):
                if sum(labels) != i:
                    continue
                cls = self._paired([self.transposed_component(j) for j in labels], length)
                words.add(
                    self._pair_word(parts),
                    cls,
                    Fraction((-1) ** length, centralizer_order(parts)),
                )
        return words.to_op()

    # ------------------------------------------------------------------ weights

    def codim_matrix(self, n: int) -> Matrix:
        """Return the diagonal grading operator v ↦ codim(v)·v on basis(n)."""
        return sympy.diag(*(entry.codim for entry in self.space.basis(n)))

    def weight_decomposition(
        self, n: int, cartan: Sequence[OpExpr], graded: bool = False
    ) -> list[WeightBlock]:
        """Split A*(Hilbₙ) into joint eigenspaces of commuting operators.

        Args:
            n: Level of the Hilbert scheme.
            cartan: Pairwise commuting operators; their eigenvalues fill ``mu``.
            graded: Prepend the codimension grading and h̃, filling ``i`` and ``s``.

        Returns:
            One (weight, basis) pair per nonzero joint eigenspace, basis vectors as
            columns in `FockSpace.coordinates` order.

        Raises:
            NonCommutingCartanException: If two of the operators do not commute.
            NotDiagonalizableException: If one of them has no rational eigenbasis.
        """
        dim = len(self.space.basis(n))
        matrices: list[Matrix] = []
        if graded:
            matrices.append(self.codim_matrix(n))
            matrices.append(Matrix(self.space.matrix_of(self.operators.op_h_tilde(n), n)))
        matrices.extend(Matrix(self.space.matrix_of(op, n)) for op in cartan)
        if dim == 0:
            return []
        blocks: list[WeightBlock] = []
        for values, basis in joint_eigenspaces(matrices, dim):
            fractions = [to_fraction(v) for v in values]
            if graded:
                codim, eigenvalue, *mu = fractions
                weight = WeightVector(
                    i=int(codim), s=int(codim - eigenvalue), mu=tuple(mu), dimension=basis.cols
                )
            else:
                weight = WeightVector(mu=tuple(fractions), dimension=basis.cols)
            blocks.append((weight, basis))
        logger.debug("weight_decomposition(n=%d) found %d blocks", n, len(blocks))
        return blocks

    def bigraded_dimensions(self, n: int) -> dict[tuple[int, int], int]:
        """Return dim A^i(Hilbₙ)_{2s} of the model for every (i, s) that occurs."""
        if n == 0:
            return {(0, 0): 1}
        dimensions: dict[tuple[int, int], int] = {}
        for weight, _ in self.weight_decomposition(n, (), graded=True):
            key = (weight.i or 0, weight.s or 0)
            dimensions[key] = dimensions.get(key, 0) + weight.dimension
        return dict(sorted(dimensions.items()))
