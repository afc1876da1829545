"""Ring and operator identities used on the way to the commutator formulas.

Ring forms compare two classes on S^k. Word forms compare two sums of
normally ordered words after symmetrizing each class over the positions of
equal indices (operators with equal indices commute). Operator forms compare
two `OpExpr` whose orderings differ, and are checked through their matrices.
"""

from collections.abc import Callable, Sequence
from fractions import Fraction

from src.core.exceptions import UnprocessableEntityException
from src.core.utils.partition_utils import (
    equal_part_blocks,
    generalized_partitions,
    multiplicity_factorial,
    ordered_words,
    square_sum,
)
from src.modules.taut_ring.taut_ring_model import Label, SurfaceClass

from .lqw_service import LQWService
from .operators_model import LinearCombination, OpExpr, QWord, Sides, WordSum, ZeroOp

type WordClasses = dict[tuple[int, ...], SurfaceClass]
type WeightRule = Callable[[tuple[int, ...], int], Fraction]


class ClaimRangeException(UnprocessableEntityException):
    """Raised when an identity is requested outside the range where all its terms exist."""

    def __init__(self, name: str, parameter: str, value: int, minimum: int):
        super().__init__(f"{name} needs {parameter} >= {minimum}, got {value}")


def _annihilation(word: Sequence[int]) -> int:
    return -sum(k for k in word if k < 0)


class ClaimService:
    """Closed forms of the bar calculus and of the intermediate rearrangement identities."""

    def __init__(self, lqw: LQWService):
        self.lqw = lqw
        self.operators = lqw.operators
        self.ring = lqw.ring

    # ------------------------------------------------------------------ building blocks

    def _integral(self, gamma: SurfaceClass) -> Fraction:
        return self.ring.integrate_all(gamma)

    def _point(self) -> SurfaceClass:
        return self.ring.point(0, 1)

    def mixed_pairs(self, alpha: SurfaceClass) -> list[tuple[SurfaceClass, SurfaceClass]]:
        """Return the insertions (x, y) ∈ {(α, 1), (1, α)}."""
        one = self.ring.one(1)
        return [(alpha, one), (one, alpha)]

    def _points_except(self, excluded: Sequence[int], arity: int) -> SurfaceClass:
        return self.ring.product_of_points((s for s in range(arity) if s not in excluded), arity)

    def _diagonal_with(
        self, indices: Sequence[int], cls: SurfaceClass, arity: int
    ) -> SurfaceClass:
        """Δ over ``indices`` times ``cls`` placed on the first of them."""
        return self.ring.small_diagonal(indices, arity) * self.ring.embed(cls, indices[0], arity)

    def spread(self, arity: int, cls: SurfaceClass, y: SurfaceClass) -> SurfaceClass:
        """Σᵢ Δ_{1…î…k}(cls)_{≠i} yᵢ."""
        total = self.ring.zero(arity)
        for i in range(arity):
            others = [s for s in range(arity) if s != i]
            total = total + self._diagonal_with(others, cls, arity) * self.ring.embed(y, i, arity)
        return total

    def spread_pairs(self, arity: int, cls: SurfaceClass, y: SurfaceClass) -> SurfaceClass:
        """Σ_{i<j} Δ_{1…î…ĵ…k}(cls)_{≠i,j} Δᵢⱼ yᵢ."""
        if arity < 3:
            raise ClaimRangeException("spread_pairs", "k", arity, 3)
        total = self.ring.zero(arity)
        for i in range(arity):
            for j in range(i + 1, arity):
                others = [s for s in range(arity) if s not in (i, j)]
                total = total + (
                    self._diagonal_with(others, cls, arity)
                    * self.ring.diagonal(i, j, arity)
                    * self.ring.embed(y, i, arity)
                )
        return total

    def symmetrized(self, words: WordSum) -> WordClasses:
        """Return each word's class averaged over the positions of equal indices."""
        result: WordClasses = {}
        for indices, cls in words.items():
            symmetric = self.ring.symmetrize(cls, equal_part_blocks(indices))
            if symmetric:
                result[indices] = symmetric
        return result

    # ------------------------------------------------------------------ bar calculus

    def _with_tail(self, k: int, gamma: SurfaceClass) -> SurfaceClass:
        """Δ_{1…k}γ₁ for γ on S × S^l, the trailing l factors appended after index k."""
        tail = gamma.arity - 1
        arity = k + tail
        lifted = self.ring.pullback(gamma, [0, *range(k, arity)], arity)
        return self.ring.small_diagonal(range(k), arity) * lifted

    def _integrate_head(self, cls: SurfaceClass, k: int) -> SurfaceClass:
        """∫_* cls_* placed on the trailing indices of S^{k+l}."""
        pushed = self.ring.pushforward(cls, (0,))
        tail = pushed.arity
        return self.ring.pullback(pushed, list(range(k, k + tail)), k + tail)

    def bar_claim(self, k: int, gamma: SurfaceClass) -> Sides[SurfaceClass]:
        """bar(Δ_{1…k}γ₁) = Δ_{1…k}[(k−1)γ₁ + ∫_*γ_*(c₁ − c_*)], the bar over indices 1…k."""
        if k < 1:
            raise ClaimRangeException("bar_claim", "k", k, 1)
        phi = self._with_tail(k, gamma)
        arity = phi.arity
        head_point = self.ring.pullback(self._point(), [0], gamma.arity)
        inner = (
            self.ring.pullback(gamma, [0, *range(k, arity)], arity).scale(k - 1)
            + self.ring.point(0, arity) * self._integrate_head(gamma, k)
            - self._integrate_head(gamma * head_point, k)
        )
        rhs = self.ring.small_diagonal(range(k), arity) * inner
        return Sides(self.ring.bar(phi, range(k)), rhs)

    def double_bar_claim(
        self, k: int, gamma: SurfaceClass, alpha: Label, beta: Label
    ) -> Sides[SurfaceClass]:
        """double_bar(Δ_{1…k}γ₁) = Δ_{1…k} ∫_*γ_*(α₁β_* − α_*β₁)."""
        if k < 1:
            raise ClaimRangeException("double_bar_claim", "k", k, 1)
        phi = self._with_tail(k, gamma)
        arity = phi.arity
        head_alpha = self.ring.label(alpha, 0, gamma.arity)
        head_beta = self.ring.label(beta, 0, gamma.arity)
        inner = self.ring.label(alpha, 0, arity) * self._integrate_head(
            gamma * head_beta, k
        ) - self.ring.label(beta, 0, arity) * self._integrate_head(gamma * head_alpha, k)
        rhs = self.ring.small_diagonal(range(k), arity) * inner
        return Sides(self.ring.double_bar(phi, range(k), alpha, beta), rhs)

    def small_diagonal_corollary(self, k: int) -> Sides[SurfaceClass]:
        """Σᵢ Δ_{1…î…k}cᵢ = (k−2)Δ_{1…k} + Σᵢ ∏_{j≠i} c_j."""
        if k < 2:
            raise ClaimRangeException("small_diagonal_corollary", "k", k, 2)
        lhs = self.spread(k, self.ring.one(1), self._point())
        rhs = self.ring.small_diagonal(range(k), k).scale(k - 2)
        for i in range(k):
            rhs = rhs + self._points_except((i,), k)
        return Sides(lhs, rhs)

    def summand_classes(self) -> list[SurfaceClass]:
        """Return the classes 1, the basis divisors, c, Δ and Δ·c₁."""
        one = self.ring.one(1)
        divisors = [self.operators.divisor_class(j) for j in range(self.ring.lattice.rank)]
        diagonal = self.ring.diagonal(0, 1, 2)
        return [
            one,
            *divisors,
            self._point(),
            diagonal,
            diagonal * self.ring.point(0, 2),
        ]

    def summand_criterion(self, gamma: SurfaceClass) -> Sides[SurfaceClass]:
        """bar(Γ) over all indices = (deg Γ − t)Γ for a homogeneous Γ on S^t."""
        degree = gamma.degree or 0
        return Sides(self.ring.bar(gamma, range(gamma.arity)), gamma.scale(degree - gamma.arity))

    def h_tilde_transform(self, ds: Sequence[int], gamma: SurfaceClass) -> SurfaceClass:
        """Return Γ' with [h̃, G_{d₁}…G_{d_t}(Γ)] = G_{d₁}…G_{d_t}(Γ')."""
        shift = sum(d - 1 for d in ds)
        return gamma.scale(shift) + self.ring.bar(gamma, range(gamma.arity))

    def h_alpha_beta_transform(
        self, gamma: SurfaceClass, alpha: Label, beta: Label
    ) -> SurfaceClass:
        """Return Γ'' with [h_{αβ}, G_{d₁}…G_{d_t}(Γ)] = G_{d₁}…G_{d_t}(Γ'')."""
        return self.ring.double_bar(gamma, range(gamma.arity), alpha, beta)

    # ------------------------------------------------------------------ A_k, B_k

    def form_A(self, k: int, alpha: SurfaceClass, gamma: SurfaceClass) -> SurfaceClass:
        """A_k(γ): each mixed pair spread over ordered pairs of indices."""
        if k < 3:
            raise ClaimRangeException("form_A", "k", k, 3)
        total = self.ring.zero(k)
        for x, y in self.mixed_pairs(alpha):
            total = total + self.spread_pairs(k, x * gamma, y)
        return total

    def form_B(self, k: int, alpha: SurfaceClass, gamma: SurfaceClass) -> SurfaceClass:
        """B_k(γ): each mixed pair spread over single indices."""
        if k < 2:
            raise ClaimRangeException("form_B", "k", k, 2)
        total = self.ring.zero(k)
        for x, y in self.mixed_pairs(alpha):
            total = total + self.spread(k, x * gamma, y)
        return total

    def form_difference(
        self, k: int, alpha: SurfaceClass, gamma: SurfaceClass
    ) -> Sides[SurfaceClass]:
        """A_k(γ) − (k−2)B_k(γ) = Δ_{1…k}(α₁∫γ + ∫αγ)."""
        lhs = self.form_A(k, alpha, gamma) - self.form_B(k, alpha, gamma).scale(k - 2)
        diagonal = self.ring.small_diagonal(range(k), k)
        rhs = diagonal * self.ring.embed(alpha, 0, k).scale(self._integral(gamma)) + diagonal.scale(
            self._integral(alpha * gamma)
        )
        return Sides(lhs, rhs)

    def form_A_point(
        self, k: int, alpha: SurfaceClass, gamma: SurfaceClass
    ) -> Sides[SurfaceClass]:
        """A_k(γc) = (k−1)Δ_{1…k}α₁∫γc."""
        gamma_c = gamma * self._point()
        rhs = self._diagonal_with(range(k), alpha, k).scale((k - 1) * self._integral(gamma_c))
        return Sides(self.form_A(k, alpha, gamma_c), rhs)

    def form_B_point(
        self, k: int, alpha: SurfaceClass, gamma: SurfaceClass
    ) -> Sides[SurfaceClass]:
        """B_k(γc) = Δ_{1…k}α₁∫γc."""
        gamma_c = gamma * self._point()
        rhs = self._diagonal_with(range(k), alpha, k).scale(self._integral(gamma_c))
        return Sides(self.form_B(k, alpha, gamma_c), rhs)

    def _closed_form_terms(
        self, k: int, alpha: SurfaceClass, gamma: SurfaceClass
    ) -> dict[str, SurfaceClass]:
        embed = self.ring.embed
        zero = self.ring.zero(k)
        alpha_gamma = alpha_points = pair_points = alpha_pair = alpha_double = zero
        one_missing = zero
        for i in range(k):
            alpha_points = alpha_points + embed(alpha, i, k) * self._points_except((i,), k)
            one_missing = one_missing + self._points_except((i,), k)
            for j in range(k):
                if j == i:
                    continue
                rest = self._points_except((i, j), k)
                alpha_gamma = alpha_gamma + embed(alpha, i, k) * embed(gamma, j, k) * rest
                alpha_double = alpha_double + embed(alpha, i, k) * rest
                if i < j:
                    pair_points = pair_points + self.ring.diagonal(i, j, k) * rest
            for s in range(k):
                for t in range(s + 1, k):
                    if i in (s, t):
                        continue
                    alpha_pair = alpha_pair + (
                        embed(alpha, i, k)
                        * self.ring.diagonal(s, t, k)
                        * self._points_except((i, s, t), k)
                    )
        return {
            "alpha_gamma": alpha_gamma,
            "alpha_points": alpha_points,
            "pair_points": pair_points,
            "one_missing": one_missing,
            "alpha_pair": alpha_pair,
            "alpha_double": alpha_double,
        }

    def form_A_closed(
        self, k: int, alpha: SurfaceClass, gamma: SurfaceClass
    ) -> Sides[SurfaceClass]:
        """A_k(γ) against its expansion in products of c, α, γ and single diagonals."""
        t = self._closed_form_terms(k, alpha, gamma)
        integral = self._integral(gamma)
        with_alpha = self._integral(gamma * alpha)
        with_point = self._integral(gamma * self._point())
        rhs = (
            t["alpha_gamma"].scale(k - 2)
            - t["alpha_points"].scale((k - 1) * (k - 3) * integral)
            + t["pair_points"].scale(with_alpha)
            + (t["alpha_pair"] - t["alpha_double"].scale(k - 3)).scale((k - 2) * with_point)
        )
        return Sides(self.form_A(k, alpha, gamma), rhs)

    def form_B_closed(
        self, k: int, alpha: SurfaceClass, gamma: SurfaceClass
    ) -> Sides[SurfaceClass]:
        """B_k(γ) against its expansion in products of c, α, γ and single diagonals."""
        t = self._closed_form_terms(k, alpha, gamma)
        integral = self._integral(gamma)
        with_alpha = self._integral(gamma * alpha)
        with_point = self._integral(gamma * self._point())
        rhs = (
            t["alpha_gamma"]
            - t["alpha_points"].scale((k - 2) * integral)
            + t["one_missing"].scale(with_alpha)
            + (t["alpha_pair"] - t["alpha_double"].scale(k - 3)).scale(with_point)
        )
        return Sides(self.form_B(k, alpha, gamma), rhs)

    # ------------------------------------------------------------------ word identities

    def _tail_words(
        self,
        words: WordSum,
        length: int,
        cls: SurfaceClass,
        n: int,
        weight: WeightRule,
    ) -> None:
        """Add Σ_k Σ_{|λ|=k, l(λ)=length} w(λ, k) :q_λ(cls) q₋ₖ: for every k ≠ 0."""
        for k in range(-n, n + 1):
            if k == 0:
                continue
            for lam in generalized_partitions(k, length, n):
                word = (*lam, -k)
                if _annihilation(word) <= n:
                    words.add(word, cls, weight(lam, k))

    def contraction_claim(
        self, x: SurfaceClass, y: SurfaceClass, gamma: SurfaceClass, d: int, n: int
    ) -> Sides[WordClasses]:
        """Σ_k Σ_{|λ|=k, l=d+1} :q_λ(Δ(xγ)₁) q₋ₖ(y):/λ! = Σ_{l(μ)=d+2} q_μ(Σᵢ Δ_{…î…}(xγ) yᵢ)/μ!."""
        if d < 0:
            raise ClaimRangeException("contraction_claim", "d", d, 0)
        arity = d + 2
        xg = x * gamma
        lhs = WordSum(0)
        cls = self._diagonal_with(range(d + 1), xg, arity) * self.ring.embed(y, d + 1, arity)
        self._tail_words(
            lhs, d + 1, cls, n, lambda lam, k: Fraction(1, multiplicity_factorial(lam))
        )
        rhs = WordSum(0)
        spread = self.spread(arity, xg, y)
        for mu in generalized_partitions(0, arity, n):
            rhs.add(mu, spread, Fraction(1, multiplicity_factorial(mu)))
        return Sides(self.symmetrized(lhs), self.symmetrized(rhs))

    def weighted_contraction_claim(
        self, x: SurfaceClass, y: SurfaceClass, gamma: SurfaceClass, d: int, n: int
    ) -> Sides[WordClasses]:
        """The (s(λ) + k² − 2)-weighted contraction against (s(μ) − 2) on words of length d."""
        if d < 2:
            raise ClaimRangeException("weighted_contraction_claim", "d", d, 2)
        xgc = x * gamma * self._point()
        lhs = WordSum(0)
        cls = self._diagonal_with(range(d - 1), xgc, d) * self.ring.embed(y, d - 1, d)
        self._tail_words(
            lhs,
            d - 1,
            cls,
            n,
            lambda lam, k: Fraction(square_sum(lam) + k * k - 2, multiplicity_factorial(lam)),
        )
        rhs = WordSum(0)
        spread = self.spread(d, xgc, y)
        for mu in generalized_partitions(0, d, n):
            rhs.add(mu, spread, Fraction(square_sum(mu) - 2, multiplicity_factorial(mu)))
        return Sides(self.symmetrized(lhs), self.symmetrized(rhs))

    def _pair_words(
        self, words: WordSum, y: SurfaceClass, cls: SurfaceClass, d: int, n: int, sign: int
    ) -> None:
        """Add sign·Σ_{i,j} Σ_{|λ|=−i−j, l=d−2} (ij/λ!) :q_i q_j(Δ₁₂y₁) q_λ(Δ(cls)₁):."""
        weight = (
            self.ring.diagonal(0, 1, d)
            * self.ring.embed(y, 0, d)
            * self._diagonal_with(range(2, d), cls, d)
        )
        for t in range(-n, n + 1):
            for lam in generalized_partitions(-t, d - 2, n):
                for i, j in ordered_words(t, 2, n):
                    word = (i, j, *lam)
                    if _annihilation(word) <= n:
                        words.add(word, weight, Fraction(sign * i * j, multiplicity_factorial(lam)))

    def point_line_claim(
        self, alpha: SurfaceClass, gamma: SurfaceClass, d: int, n: int
    ) -> Sides[WordClasses]:
        """The two c-lines of the h_{αδ} expansion add up to 2Σ_{l(μ)=d} q_μ(Σᵢ Δ(cγ) αᵢ)/μ!."""
        if d < 3:
            raise ClaimRangeException("point_line_claim", "d", d, 3)
        lhs = WordSum(0)
        for x, y in self.mixed_pairs(alpha):
            xcg = x * self._point() * gamma
            self._pair_words(lhs, y, xcg, d, n, -1)
            cls = self._diagonal_with(range(d - 1), xcg, d) * self.ring.embed(y, d - 1, d)
            self._tail_words(
                lhs,
                d - 1,
                cls,
                n,
                lambda lam, k: Fraction(-2 * (k * k - 1), multiplicity_factorial(lam)),
            )
        rhs = WordSum(0)
        spread = self.spread(d, self._point() * gamma, alpha)
        for mu in generalized_partitions(0, d, n):
            rhs.add(mu, spread, Fraction(2, multiplicity_factorial(mu)))
        return Sides(self.symmetrized(lhs), self.symmetrized(rhs))

    # ------------------------------------------------------------------ block-ordered identities

    @staticmethod
    def _block(k: int, left: OpExpr, right: OpExpr) -> OpExpr:
        """:L_k Q: with L_k on the left for k > 0, on the right for k < 0, half each for k = 0."""
        if k > 0:
            return left @ right
        if k < 0:
            return right @ left
        return LinearCombination.of((Fraction(1, 2), left @ right), (Fraction(1, 2), right @ left))

    def _virasoro_blocks(
        self,
        y: SurfaceClass,
        cls: SurfaceClass,
        length: int,
        n: int,
        weight: WeightRule,
    ) -> OpExpr:
        terms: list[tuple[Fraction | int, OpExpr]] = []
        for k in range(-n, n + 1):
            virasoro = self.operators.op_L(k, y, n)
            for lam in generalized_partitions(-k, length, n):
                coef = weight(lam, k)
                if coef:
                    terms.append((coef, self._block(k, virasoro, QWord(lam, cls))))
        return LinearCombination.of(*terms) if terms else ZeroOp(0)

    def virasoro_claim(
        self, x: SurfaceClass, y: SurfaceClass, gamma: SurfaceClass, d: int, n: int
    ) -> Sides[OpExpr]:
        """Σ_k Σ_{|λ|=−k, l=d} :L_k(y) q_λ(Δ(xγ)₁):/λ! against its normally ordered expansion."""
        if d < 1:
            raise ClaimRangeException("virasoro_claim", "d", d, 1)
        xg = x * gamma
        cls = self._diagonal_with(range(d), xg, d)
        lhs = self._virasoro_blocks(
            y, cls, d, n, lambda lam, k: Fraction(1, multiplicity_factorial(lam))
        )
        rhs = WordSum(0)
        pairs = self.spread_pairs(d + 2, xg, y)
        for mu in generalized_partitions(0, d + 2, n):
            rhs.add(mu, pairs, Fraction(1, multiplicity_factorial(mu)))
        correction = self._diagonal_with(range(d), x * y * gamma, d)
        for mu in generalized_partitions(0, d, n):
            rhs.add(mu, correction, Fraction(-square_sum(mu), 2 * multiplicity_factorial(mu)))
        return Sides(lhs, rhs.to_op())

    def weighted_virasoro_claim(
        self, x: SurfaceClass, y: SurfaceClass, gamma: SurfaceClass, d: int, n: int
    ) -> Sides[OpExpr]:
        """The (s(λ) + k² − 2)-weighted block identity on the c-line, for d ≥ 3."""
        if d < 3:
            raise ClaimRangeException("weighted_virasoro_claim", "d", d, 3)
        xcg = x * self._point() * gamma
        cls = self._diagonal_with(range(d - 2), xcg, d - 2)
        lhs = self._virasoro_blocks(
            y,
            cls,
            d - 2,
            n,
            lambda lam, k: Fraction(square_sum(lam) + k * k - 2, multiplicity_factorial(lam)),
        )
        rhs = WordSum(0)
        pairs = self.spread_pairs(d, xcg, y)
        for mu in generalized_partitions(0, d, n):
            rhs.add(mu, pairs, Fraction(square_sum(mu) - 2, multiplicity_factorial(mu)))
        self._pair_words(rhs, y, xcg, d, n, 1)
        return Sides(lhs, rhs.to_op())
