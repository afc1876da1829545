import logging
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from src.core.utils.partition_utils import ordered_words
from src.modules.fock.fock_service import FockSpace
from src.modules.taut_ring.taut_ring_model import SurfaceClass

from .operators_model import (
    GNSElement,
    Identity,
    LinearCombination,
    MukaiForm,
    MukaiKind,
    MukaiVector,
    OpExpr,
    UnsupportedWedgeException,
    WordSum,
    ZeroOp,
)

logger = logging.getLogger(__name__)


class CatalogueEntry(NamedTuple):
    """A named operator with its formula."""

    constructor: str
    anchor: str
    truncation: str


class OperatorCatalogue(Enum):
    """Every named operator constructor with its defining formula and truncation bound."""

    H = CatalogueEntry("op_h", "e^f: sum_{k>0} 1/k q_k q_-k(c_2 - c_1)", "k <= n")
    H_TILDE = CatalogueEntry("op_h_tilde", "h + n Id", "k <= n")
    H_ALPHA_BETA = CatalogueEntry(
        "op_h_alpha_beta", "a^b: sum_{k>0} 1/k q_k q_-k(a_2 b_1 - a_1 b_2)", "k <= n"
    )
    H_ALPHA_DELTA = CatalogueEntry(
        "op_h_alpha_delta",
        "a^delta: -1/2 sum_{i+j+k=0} 1/k :q_i q_j q_k(D_12 (a_1 + a_3)):",
        "annihilation <= n",
    )
    H_ALPHA_DELTA_VIRASORO = CatalogueEntry(
        "op_h_alpha_delta_virasoro",
        "sum_{k != 0} 1/k :L_k q_-k(a_1 + a_2):",
        "|k| <= n, annihilation <= n",
    )
    E_ALPHA = CatalogueEntry("op_e_alpha", "e^a: -sum_{k>0} q_k q_-k(a_1 c_2 + a_2 c_1)", "k <= n")
    E_DELTA = CatalogueEntry(
        "op_e_delta", "e^delta: -1/6 sum_{i+j+k=0} :q_i q_j q_k(D_123):", "annihilation <= n"
    )
    F_ALPHA = CatalogueEntry("op_f_alpha", "a^f: -sum_{k>0} 1/k^2 q_k q_-k(a_1 + a_2)", "k <= n")
    F_DELTA = CatalogueEntry(
        "op_f_delta",
        "delta^f: -1/6 sum_{i+j+k=0} :q_i q_j q_k(D_12/k^2 + D_13/j^2 + D_23/i^2"
        " + 2c_1/jk + 2c_2/ik + 2c_3/ij):",
        "annihilation <= n",
    )
    ACT = CatalogueEntry("op_act", "linear extension of the wedge-to-operator table", "per wedge")
    L = CatalogueEntry("op_L", "1/2 sum_{i+j=k} :q_i q_j(D_12 g_1):", "annihilation <= n")
    J = CatalogueEntry(
        "op_J",
        "d!(-sum_{|l|=m, l(l)=d+1} q_l(D g_1)/l! + sum_{|l|=m, l(l)=d-1} (s(l)+m^2-2)/l!"
        " q_l(D g_1 c_1))",
        "annihilation <= n",
    )
    G = CatalogueEntry(
        "op_G", "J_0^{d-1}(g)/(d-1)! - 2 J_0^{d-3}(gc)/(d-3)!", "annihilation <= n"
    )
    MULT_UNIVERSAL = CatalogueEntry(
        "op_mult_universal", "G_{d_1}...G_{d_t}(Gamma) by slot composition", "annihilation <= n"
    )
    UNIVERSAL_CLASS = CatalogueEntry(
        "universal_class", "G_{d_1}...G_{d_t}(Gamma) applied to 1_n", "annihilation <= n"
    )
    MULT_CHERN = CatalogueEntry(
        "op_mult_chern",
        "[k even](2G_{k+2}(1) + 4G_k(c)) + sum (-1)^{j+1} G_i G_j(D) + 2 sum (-1)^{j+1}"
        " G_i(c) G_j(c)",
        "annihilation <= n",
    )
    PROJECTOR = CatalogueEntry(
        "op_projector",
        "sum (-1)^{l}/zzz :q_l q_-l(c_2) q_m q_-m(D - c_1 - c_2) q_v q_-v(c_1):",
        "|l|+|m|+|v| = n",
    )
    PROJECTOR_LABELLED = CatalogueEntry(
        "op_projector_labelled",
        "sum_l (-1)^{l(l)}/z(l) sum_{i_1+...=i} q_l q_-l(prod tpi_{i_j})",
        "|l| = n",
    )
    DIAGONAL = CatalogueEntry(
        "op_diagonal", "sum_l (-1)^{l(l)}/z(l) q_l q_-l(prod D_{j,l+j})", "|l| = n"
    )


class OperatorService:
    """Constructors for the g_NS action and the Virasoro operators on the Fock model.

    Every constructor takes the level ``n`` it will be evaluated on and keeps only
    words whose annihilation weight is at most ``n``; heavier words vanish there.
    Passing a larger bound is always safe.
    """

    def __init__(self, space: FockSpace):
        self.space = space
        self.ring = space.ring

    # ------------------------------------------------------------------ helpers

    def _at(self, surface: SurfaceClass, index: int, arity: int) -> SurfaceClass:
        return self.ring.embed(surface, index, arity)

    def divisor_class(self, j: int) -> SurfaceClass:
        """Return the basis divisor αⱼ as a class on S."""
        return self.ring.divisor(j, 0, 1)

    def _diagonal_pairs(self, weight: SurfaceClass, n: int, power: int) -> OpExpr:
        """Σ_{0<k≤n} k^{-power} q_k q₋ₖ(weight)."""
        words = WordSum(0)
        for k in range(1, n + 1):
            words.add((k, -k), weight, Fraction(1, k**power))
        return words.to_op()

    # ------------------------------------------------------------------ grading

    def op_h(self, n: int) -> OpExpr:
        """Return h, which acts on A^i(Hilbₙ)_{2s} by i − s − n."""
        return self._diagonal_pairs(self.ring.point(1, 2) - self.ring.point(0, 2), n, 1)

    def op_h_tilde(self, n: int) -> OpExpr:
        """Return h̃ = h + n·Id, the derivation with eigenvalue i − s."""
        return LinearCombination.of((1, self.op_h(n)), (n, Identity()))

    def op_h_alpha_beta(self, alpha: SurfaceClass, beta: SurfaceClass, n: int) -> OpExpr:
        """Return h_{αβ} = Σ_{k>0} (1/k) q_k q₋ₖ(β₁α₂ − α₁β₂)."""
        weight = self._at(beta, 0, 2) * self._at(alpha, 1, 2) - self._at(alpha, 0, 2) * self._at(
            beta, 1, 2
        )
        return self._diagonal_pairs(weight, n, 1)

    def op_h_alpha_delta(self, alpha: SurfaceClass, n: int) -> OpExpr:
        """Return h_{αδ} as the cubic sum over ordered triples i + j + k = 0."""
        weight = self.ring.diagonal(0, 1, 3) * (self._at(alpha, 0, 3) + self._at(alpha, 2, 3))
        words = WordSum(0)
        for i, j, k in ordered_words(0, 3, n):
            words.add((i, j, k), weight, Fraction(-1, 2 * k))
        return words.to_op()

    def op_h_alpha_delta_virasoro(self, alpha: SurfaceClass, n: int) -> OpExpr:
        """Return h_{αδ} = Σ_{k≠0} (1/k) :L_k(x) q₋ₖ(y): over (x, y) ∈ {(α, 1), (1, α)}."""
        one = self.ring.one(1)
        words = WordSum(0)
        for x, y in ((alpha, one), (one, alpha)):
            weight = (
                self.ring.diagonal(0, 1, 3) * self._at(x, 0, 3) * self._at(y, 2, 3)
            )
            for k in range(-n, n + 1):
                if k == 0:
                    continue
                for i, j in ordered_words(k, 2, n):
                    words.add((i, j, -k), weight, Fraction(1, 2 * k))
        return words.to_op()

    # ------------------------------------------------------------------ raising / lowering

    def op_e_alpha(self, alpha: SurfaceClass, n: int) -> OpExpr:
        """Return e_α, the cup product with the divisor α."""
        weight = self._at(alpha, 0, 2) * self.ring.point(1, 2) + self._at(
            alpha, 1, 2
        ) * self.ring.point(0, 2)
        return self._diagonal_pairs(weight, n, 0).scale(-1)

    def op_e_delta(self, n: int) -> OpExpr:
        """Return e_δ, the cup product with δ = univ₃(1)."""
        weight = self.ring.small_diagonal((0, 1, 2), 3)
        words = WordSum(0)
        for word in ordered_words(0, 3, n):
            words.add(word, weight, Fraction(-1, 6))
        return words.to_op()

    def op_f_alpha(self, alpha: SurfaceClass, n: int) -> OpExpr:
        """Return f̃_α, adjoint of e_α."""
        weight = self._at(alpha, 0, 2) + self._at(alpha, 1, 2)
        return self._diagonal_pairs(weight, n, 2).scale(-1)

    def op_f_delta(self, n: int) -> OpExpr:
        """Return f̃_δ, adjoint of e_δ."""
        diagonal = self.ring.diagonal
        point = self.ring.point
        words = WordSum(0)
        for i, j, k in ordered_words(0, 3, n):
            weight = (
                diagonal(0, 1, 3).scale(Fraction(1, k * k))
                + diagonal(0, 2, 3).scale(Fraction(1, j * j))
                + diagonal(1, 2, 3).scale(Fraction(1, i * i))
                + point(0, 3).scale(Fraction(2, j * k))
                + point(1, 3).scale(Fraction(2, i * k))
                + point(2, 3).scale(Fraction(2, i * j))
            )
            words.add((i, j, k), weight, Fraction(-1, 6))
        return words.to_op()

    # ------------------------------------------------------------------ Virasoro

    def op_L(self, k: int, gamma: SurfaceClass, n: int) -> OpExpr:
        """Return L_k(γ) = ½ Σ_{i+j=k} :q_i q_j(Δ₁₂γ₁):."""
        weight = self.ring.diagonal(0, 1, 2) * self._at(gamma, 0, 2)
        words = WordSum(k)
        for word in ordered_words(k, 2, n):
            words.add(word, weight, Fraction(1, 2))
        return words.to_op()

    # ------------------------------------------------------------------ g_NS

    def mukai_form(self, n: int) -> MukaiForm:
        """Return the Mukai form on the lattice extended by e, f and δ."""
        return MukaiForm(self.ring.lattice, n)

    @staticmethod
    def gns_bracket(x: GNSElement, y: GNSElement, form: MukaiForm) -> GNSElement:
        """Return [x, y] using [a∧b, c∧d] = (a,d)b∧c − (a,c)b∧d − (b,d)a∧c + (b,c)a∧d."""
        result = GNSElement()
        for (a, b), s in x.terms.items():
            for (c, d), t in y.terms.items():
                coef = s * t
                result = (
                    result
                    + GNSElement.wedge(b, c, coef * form.pairing(a, d))
                    - GNSElement.wedge(b, d, coef * form.pairing(a, c))
                    - GNSElement.wedge(a, c, coef * form.pairing(b, d))
                    + GNSElement.wedge(a, d, coef * form.pairing(b, c))
                )
        return result

    def _wedge_op(self, a: MukaiVector, b: MukaiVector, n: int) -> OpExpr:
        for v in (a, b):
            if v.kind == MukaiKind.DIVISOR and v.divisor >= self.ring.lattice.rank:
                raise UnsupportedWedgeException(f"{a.to_text()}^{b.to_text()}")
        match (a.kind, b.kind):
            case (MukaiKind.E, MukaiKind.DIVISOR):
                return self.op_e_alpha(self.divisor_class(b.divisor), n)
            case (MukaiKind.E, MukaiKind.DELTA):
                return self.op_e_delta(n)
            case (MukaiKind.E, MukaiKind.F):
                return self.op_h(n)
            case (MukaiKind.DIVISOR, MukaiKind.DIVISOR):
                return self.op_h_alpha_beta(
                    self.divisor_class(a.divisor), self.divisor_class(b.divisor), n
                )
            case (MukaiKind.DIVISOR, MukaiKind.DELTA):
                return self.op_h_alpha_delta(self.divisor_class(a.divisor), n)
            case (MukaiKind.DIVISOR, MukaiKind.F):
                return self.op_f_alpha(self.divisor_class(a.divisor), n)
            case (MukaiKind.DELTA, MukaiKind.F):
                return self.op_f_delta(n)
            case _:
                raise UnsupportedWedgeException(f"{a.to_text()}^{b.to_text()}")

    def op_act(self, x: GNSElement, n: int) -> OpExpr:
        """Return the operator by which ``x`` ∈ g_NS acts on A*(Hilbₙ)."""
        if not x:
            return ZeroOp(0)
        return LinearCombination.of(
            *((coef, self._wedge_op(a, b, n)) for (a, b), coef in sorted(x.terms.items()))
        )
