import itertools
from collections.abc import Collection, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from src.core.exceptions import UnprocessableEntityException

from .taut_ring_model import (
    ONE,
    POINT,
    ArityMismatchException,
    DivisorLattice,
    Label,
    LabelKind,
    Monomial,
    SurfaceClass,
    divisor_label,
)

type PartialTerm = tuple[Fraction, tuple[tuple[int, int], ...], tuple[tuple[int, Label], ...]]
type MonomialProduct = tuple[tuple[Monomial, Fraction], ...]


class NonInjectiveMapException(UnprocessableEntityException):
    """Raised when a pullback is requested along a map that is not injective."""

    def __init__(self, mapping: Sequence[int], target_arity: int):
        super().__init__(f"index map {list(mapping)} is not injective into {target_arity} indices")


class InvalidLabelException(UnprocessableEntityException):
    """Raised when a divisor index falls outside the configured lattice."""

    def __init__(self, divisor: int, rank: int):
        super().__init__(f"divisor index {divisor + 1} exceeds lattice rank {rank}")


@dataclass(frozen=True)
class RewriteRules:
    """Constants of the Beauville–Voisin relations that fault injection may perturb.

    Attributes:
        divisor_transfer_sign: Sign in Δ·α₁ = α₁c₂ + α₂c₁ (and its cluster analogue).
        diagonal_self_intersection: Constant in Δ·Δ = 24·c₁c₂.
    """

    divisor_transfer_sign: int = 1
    diagonal_self_intersection: int = 24


class TautologicalRing:
    """Canonical-form arithmetic in the tautological subrings R*(S^k) of a K3 surface.

    Products are reduced cluster by cluster: the Δ-pairs of the raw product form a
    graph on the indices, each connected component collapses to a small diagonal
    times the product of its labels, and that small diagonal is expanded with the
    closed Beauville–Voisin formula. `taut_ring_rewriter` reaches the same normal
    form rule by rule and serves as the confluence oracle.
    """

    def __init__(self, lattice: DivisorLattice | None = None, rules: RewriteRules | None = None):
        self.lattice = lattice or DivisorLattice()
        self.rules = rules or RewriteRules()
        self._products: dict[tuple[Monomial, Monomial], MonomialProduct] = {}

    # ------------------------------------------------------------------ constructors

    def zero(self, arity: int) -> SurfaceClass:
        """Return the zero class on S^arity."""
        return SurfaceClass(self, arity, {})

    def one(self, arity: int) -> SurfaceClass:
        """Return the unit class on S^arity."""
        return SurfaceClass(self, arity, {Monomial(arity): Fraction(1)})

    def from_monomial(self, monomial: Monomial, coef: Fraction | int = 1) -> SurfaceClass:
        """Return the class of a single canonical monomial."""
        return SurfaceClass(self, monomial.arity, {monomial: Fraction(coef)} if coef else {})

    def from_terms(
        self, arity: int, terms: Iterable[tuple[Monomial, Fraction | int]]
    ) -> SurfaceClass:
        """Sum (monomial, coefficient) pairs, pruning cancellations."""
        accumulated: dict[Monomial, Fraction] = {}
        for monomial, coef in terms:
            if monomial.arity != arity:
                raise ArityMismatchException(arity, monomial.arity, "from_terms")
            accumulated[monomial] = accumulated.get(monomial, Fraction(0)) + coef
        return SurfaceClass(self, arity, {m: c for m, c in accumulated.items() if c})

    def label(self, label: Label, index: int, arity: int) -> SurfaceClass:
        """Return the label ``label`` placed on ``index`` of S^arity."""
        if label.kind == LabelKind.DIVISOR and label.divisor >= self.lattice.rank:
            raise InvalidLabelException(label.divisor, self.lattice.rank)
        return self.from_monomial(Monomial.build(arity, (), ((index, label),)))

    def point(self, index: int, arity: int) -> SurfaceClass:
        """Return c at ``index``."""
        return self.label(POINT, index, arity)

    def divisor(self, j: int, index: int, arity: int) -> SurfaceClass:
        """Return the basis divisor αⱼ at ``index``."""
        return self.label(divisor_label(j), index, arity)

    def diagonal(self, i: int, j: int, arity: int) -> SurfaceClass:
        """Return Δᵢⱼ; Δᵢᵢ is the unit."""
        if i == j:
            return self.one(arity)
        return self.from_monomial(Monomial.build(arity, ((i, j),)))

    def small_diagonal(self, indices: Sequence[int], arity: int) -> SurfaceClass:
        """Return Δ_{a₁…a_m} in canonical form (the unit for m ≤ 1)."""
        ordered = sorted(indices)
        if len(ordered) <= 1:
            return self.one(arity)
        return self.from_terms(
            arity,
            (
                (Monomial.build(arity, pairs, labels), coef)
                for coef, pairs, labels in self.expand_cluster(ordered, ONE)
            ),
        )

    def embed(self, surface: SurfaceClass, index: int, arity: int) -> SurfaceClass:
        """Pull an arity-1 class back to position ``index`` of S^arity."""
        return self.pullback(surface, (index,), arity)

    def product_of_points(self, indices: Iterable[int], arity: int) -> SurfaceClass:
        """Return ∏ c_i over ``indices``."""
        return self.from_monomial(Monomial.build(arity, (), ((i, POINT) for i in indices)))

    # ------------------------------------------------------------------ multiplication

    def label_product(self, a: Label, b: Label) -> tuple[Fraction, Label] | None:
        """Multiply two labels on the same index.

        Returns None when the product needs a diagonal rewrite.
        """
        if a.kind == LabelKind.ONE:
            return Fraction(1), b
        if b.kind == LabelKind.ONE:
            return Fraction(1), a
        if a.kind == LabelKind.DIVISOR and b.kind == LabelKind.DIVISOR:
            value = self.lattice.pairing(a.divisor, b.divisor)
            return (value, POINT) if value else None
        return None

    def expand_cluster(self, vertices: Sequence[int], label: Label) -> list[PartialTerm]:
        """Expand Δ_V · L on a connected set V (|V| ≥ 2) with L the product of its labels."""
        if label.kind == LabelKind.POINT:
            return [(Fraction(1), (), tuple((v, POINT) for v in vertices))]
        if label.kind == LabelKind.DIVISOR:
            sign = Fraction(self.rules.divisor_transfer_sign)
            return [
                (sign, (), tuple((w, label if w == v else POINT) for w in vertices))
                for v in vertices
            ]
        if len(vertices) == 2:
            return [(Fraction(1), ((vertices[0], vertices[1]),), ())]
        size = len(vertices)
        expansion: list[PartialTerm] = [
            (Fraction(1), ((a, b),), tuple((w, POINT) for w in vertices if w not in (a, b)))
            for a, b in itertools.combinations(vertices, 2)
        ]
        expansion.extend(
            (Fraction(-(size - 2)), (), tuple((w, POINT) for w in vertices if w != v))
            for v in vertices
        )
        return expansion

    def _mul_monomials(self, x: Monomial, y: Monomial) -> MonomialProduct:
        key = (x, y) if x.sort_key <= y.sort_key else (y, x)
        cached = self._products.get(key)
        if cached is not None:
            return cached

        arity = x.arity
        labels: list[Label] = [ONE] * arity
        coef = Fraction(1)
        for index, label in itertools.chain(x.labels, y.labels):
            product = self.label_product(labels[index], label)
            if product is None:
                self._products[key] = ()
                return ()
            coef *= product[0]
            labels[index] = product[1]

        parent = list(range(arity))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        edges = x.pairs + y.pairs
        for a, b in edges:
            parent[find(a)] = find(b)
        members: dict[int, list[int]] = {}
        for a, b in edges:
            for v in (a, b):
                root = find(v)
                if v not in members.setdefault(root, []):
                    members[root].append(v)
        edge_count: dict[int, int] = {}
        for a, _ in edges:
            edge_count[find(a)] = edge_count.get(find(a), 0) + 1

        base_labels = tuple(
            (i, labels[i]) for i in range(arity) if find(i) not in members and labels[i] != ONE
        )
        factors: list[list[PartialTerm]] = []
        for root, vertices in members.items():
            vertices.sort()
            cluster_coef = Fraction(1)
            cluster_label = ONE
            for v in vertices:
                product = self.label_product(cluster_label, labels[v])
                if product is None:
                    self._products[key] = ()
                    return ()
                cluster_coef *= product[0]
                cluster_label = product[1]
            cycles = edge_count[root] - (len(vertices) - 1)
            if cycles >= 2 or (cycles == 1 and cluster_label != ONE):
                self._products[key] = ()
                return ()
            if cycles == 1:
                cluster_coef *= self.rules.diagonal_self_intersection
                cluster_label = POINT
            factors.append(
                [
                    (c * cluster_coef, pairs, lbls)
                    for c, pairs, lbls in self.expand_cluster(vertices, cluster_label)
                ]
            )

        accumulated: dict[Monomial, Fraction] = {}
        for combination in itertools.product(*factors):
            term_coef = coef
            pairs: list[tuple[int, int]] = []
            term_labels: list[tuple[int, Label]] = list(base_labels)
            for c, p, lbls in combination:
                term_coef *= c
                pairs.extend(p)
                term_labels.extend(lbls)
            monomial = Monomial.build(arity, pairs, term_labels)
            accumulated[monomial] = accumulated.get(monomial, Fraction(0)) + term_coef
        result = tuple((m, c) for m, c in accumulated.items() if c)
        self._products[key] = result
        return result

    def mul(self, a: SurfaceClass, b: SurfaceClass) -> SurfaceClass:
        """Multiply two classes of equal arity and return the canonical form.

        Raises:
            ArityMismatchException: If the arities differ.
        """
        if a.arity != b.arity:
            raise ArityMismatchException(a.arity, b.arity, "mul")
        accumulated: dict[Monomial, Fraction] = {}
        for x, cx in a.terms.items():
            for y, cy in b.terms.items():
                for monomial, c in self._mul_monomials(x, y):
                    accumulated[monomial] = accumulated.get(monomial, Fraction(0)) + cx * cy * c
        return SurfaceClass(self, a.arity, {m: c for m, c in accumulated.items() if c})

    def product(self, classes: Iterable[SurfaceClass], arity: int) -> SurfaceClass:
        """Multiply all ``classes`` together, the unit of S^arity for an empty list."""
        result = self.one(arity)
        for factor in classes:
            result = self.mul(result, factor)
        return result

    # ------------------------------------------------------------------ index maps

    def pullback(
        self, a: SurfaceClass, mapping: Sequence[int], target_arity: int
    ) -> SurfaceClass:
        """Relabel index ``i`` as ``mapping[i]`` in S^target_arity; new indices carry 1.

        Raises:
            ArityMismatchException: If ``mapping`` does not cover every index of ``a``.
            NonInjectiveMapException: If two indices land on the same target.
        """
        if len(mapping) != a.arity:
            raise ArityMismatchException(a.arity, len(mapping), "pullback")
        if len(set(mapping)) != len(mapping) or any(not 0 <= t < target_arity for t in mapping):
            raise NonInjectiveMapException(mapping, target_arity)
        return SurfaceClass(
            self,
            target_arity,
            {m.relabel(mapping, target_arity): c for m, c in a.terms.items()},
        )

    def pushforward(self, a: SurfaceClass, forget: Collection[int]) -> SurfaceClass:
        """Integrate out the indices in ``forget`` and renumber the survivors in order.

        Per forgotten index: the point class integrates to 1, the unit and divisors to
        0, and a diagonal pair is deleted leaving its partner bare.
        """
        forgotten = set(forget)
        keep = [i for i in range(a.arity) if i not in forgotten]
        renumber = {old: new for new, old in enumerate(keep)}
        target = len(keep)
        accumulated: dict[Monomial, Fraction] = {}
        for monomial, coef in a.terms.items():
            pairs: list[tuple[int, int]] = []
            alive = True
            consumed: set[int] = set()
            for i, j in monomial.pairs:
                if i in forgotten and j in forgotten:
                    # Δ has codim 2 on the 4-dimensional S×S.
                    alive = False
                    break
                if i in forgotten or j in forgotten:
                    consumed.add(i if i in forgotten else j)
                    continue
                pairs.append((renumber[i], renumber[j]))
            if not alive:
                continue
            labels: list[tuple[int, Label]] = []
            for i, label in monomial.labels:
                if i in forgotten:
                    if label.kind != LabelKind.POINT:
                        alive = False
                        break
                    consumed.add(i)
                else:
                    labels.append((renumber[i], label))
            if not alive or len(consumed) != len(forgotten):
                continue
            result = Monomial.build(target, pairs, labels)
            accumulated[result] = accumulated.get(result, Fraction(0)) + coef
        return SurfaceClass(self, target, {m: c for m, c in accumulated.items() if c})

    def integrate_all(self, a: SurfaceClass) -> Fraction:
        """Return the degree of a class: its pushforward to a point."""
        return self.pushforward(a, range(a.arity)).terms.get(Monomial(0), Fraction(0))

    def pairing(self, a: SurfaceClass, b: SurfaceClass) -> Fraction:
        """Return ∫_S a·b for classes of arity 1."""
        if a.arity != 1 or b.arity != 1:
            raise ArityMismatchException(1, a.arity if a.arity != 1 else b.arity, "pairing")
        return self.integrate_all(self.mul(a, b))

    def transpose(self, a: SurfaceClass, p: int, q: int) -> SurfaceClass:
        """Swap the leading block of ``p`` indices with the trailing block of ``q``."""
        if p + q != a.arity:
            raise ArityMismatchException(a.arity, p + q, "transpose")
        mapping = [q + i for i in range(p)] + [i for i in range(q)]
        return self.pullback(a, mapping, a.arity)

    def symmetrize(self, a: SurfaceClass, blocks: Sequence[Sequence[int]]) -> SurfaceClass:
        """Average over all permutations preserving each block of interchangeable indices."""
        movable = [tuple(block) for block in blocks if len(block) > 1]
        if not movable or not a.terms:
            return a
        group = [
            self._block_permutation(a.arity, movable, images)
            for images in itertools.product(*(itertools.permutations(b) for b in movable))
        ]
        weight = Fraction(1, len(group))
        accumulated: dict[Monomial, Fraction] = {}
        for monomial, coef in a.terms.items():
            for mapping in group:
                image = monomial.relabel(mapping, a.arity)
                accumulated[image] = accumulated.get(image, Fraction(0)) + coef * weight
        return SurfaceClass(self, a.arity, {m: c for m, c in accumulated.items() if c})

    @staticmethod
    def _block_permutation(
        arity: int, blocks: Sequence[tuple[int, ...]], images: Sequence[tuple[int, ...]]
    ) -> list[int]:
        mapping = list(range(arity))
        for block, image in zip(blocks, images, strict=True):
            for source, target in zip(block, image, strict=True):
                mapping[source] = target
        return mapping

    def orbit_representative(
        self, monomial: Monomial, blocks: Sequence[Sequence[int]]
    ) -> Monomial:
        """Return the smallest image of ``monomial`` under the block permutation group."""
        movable = [tuple(block) for block in blocks if len(block) > 1]
        best = monomial
        for images in itertools.product(*(itertools.permutations(b) for b in movable)):
            image = monomial.relabel(
                self._block_permutation(monomial.arity, movable, images), monomial.arity
            )
            if image.sort_key < best.sort_key:
                best = image
        return best

    # ------------------------------------------------------------------ enumeration

    def labels(self) -> list[Label]:
        """Return the per-index label basis 1, α₁…α_ρ, c."""
        return [ONE, *(divisor_label(j) for j in range(self.lattice.rank)), POINT]

    def canonical_basis(self, arity: int) -> list[Monomial]:
        """Enumerate every canonical monomial of the given arity, ordered by (codim, key)."""
        basis = [
            Monomial.build(arity, matching, zip(free, choice, strict=True))
            for matching in _matchings(tuple(range(arity)))
            for free in [[i for i in range(arity) if all(i not in p for p in matching)]]
            for choice in itertools.product(self.labels(), repeat=len(free))
        ]
        return sorted(basis, key=lambda m: (m.codim, m.sort_key))

    def basis_classes(self, arity: int) -> list[SurfaceClass]:
        """Return the canonical basis of S^arity as classes."""
        return [self.from_monomial(m) for m in self.canonical_basis(arity)]

    # ------------------------------------------------------------------ bar calculus

    def move_to_new_index(self, a: SurfaceClass, index: int) -> SurfaceClass:
        """Return Φ_{…•…}: the factor at ``index`` moved to a new last index •."""
        mapping = [a.arity if i == index else i for i in range(a.arity)]
        return self.pullback(a, mapping, a.arity + 1)

    def bar(self, phi: SurfaceClass, indices: Iterable[int]) -> SurfaceClass:
        """Return Σᵢ ∫_• Φ_{i→•}(cᵢ − c_•) over the given indices."""
        k = phi.arity
        total = self.zero(k)
        for i in indices:
            moved = self.move_to_new_index(phi, i)
            weight = self.point(i, k + 1) - self.point(k, k + 1)
            total = total + self.pushforward(self.mul(moved, weight), (k,))
        return total

    def double_bar(
        self, phi: SurfaceClass, indices: Iterable[int], alpha: Label, beta: Label
    ) -> SurfaceClass:
        """Return Σᵢ ∫_• Φ_{i→•}(αᵢβ_• − α_•βᵢ) over the given indices."""
        k = phi.arity
        total = self.zero(k)
        for i in indices:
            moved = self.move_to_new_index(phi, i)
            weight = self.mul(self.label(alpha, i, k + 1), self.label(beta, k, k + 1)) - self.mul(
                self.label(alpha, k, k + 1), self.label(beta, i, k + 1)
            )
            total = total + self.pushforward(self.mul(moved, weight), (k,))
        return total


def _matchings(indices: tuple[int, ...]) -> list[tuple[tuple[int, int], ...]]:
    """All sets of disjoint pairs (including the empty set) on ``indices``."""
    if len(indices) < 2:
        return [()]
    first, rest = indices[0], indices[1:]
    result = list(_matchings(rest))
    for position, partner in enumerate(rest):
        remaining = rest[:position] + rest[position + 1 :]
        result.extend(((first, partner), *tail) for tail in _matchings(remaining))
    return result
