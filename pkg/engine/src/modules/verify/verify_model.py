import json
from enum import Enum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from src.core.exceptions import ComputationException, UnprocessableEntityException
from src.modules.taut_ring.taut_ring_model import DivisorLattice

type ParamValue = int | str
type CheckParams = dict[str, ParamValue]


class InvalidSuiteConfigException(UnprocessableEntityException):
    """Raised when a suite configuration is well formed but unusable (exit code 2)."""

    def __init__(self, reason: str):
        super().__init__(f"Invalid suite configuration: {reason}")


class Suite(Enum):
    """Identity suites in execution order. The code is the short name used in reports."""

    RING = "ring"
    HEISENBERG = "heisenberg"
    DIAGONAL = "diagonal"
    PROJECTORS = "projectors"
    LQW = "lqw"
    LLV = "llv"
    COMMUTATORS = "commutators"
    DERIVATIONS = "derivations"
    CHERN = "chern"
    TABLES = "tables"

    @property
    def code(self) -> str:
        """Short suite code, S1 to S10."""
        return f"S{list(Suite).index(self) + 1}"


class CheckStatus(Enum):
    """Outcome of one check instance."""

    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class OutputFormat(Enum):
    """Report rendering."""

    TEXT = "text"
    JSON = "json"


class Fault(Enum):
    """Deliberately broken rules, used to prove that the suites can fail."""

    NONE = "none"
    FLIP_DIVISOR_TRANSFER = "flip_divisor_transfer"
    FLIP_ANNIHILATION_SIGN = "flip_annihilation_sign"
    PERTURB_SELF_INTERSECTION = "perturb_self_intersection"


class CheckCatalogue(Enum):
    """Every check: its report id, the identity it verifies, its suite and a description."""

    # S1 ring
    RING_RULE_LITERALS = (
        "ring.rule_literals",
        "D_12 c_1 = c_1 c_2; D_12 a_1 = a_1 c_2 + a_2 c_1; a.b = (a,b) c; D_12^2 = 24 c_1 c_2",
        Suite.RING,
        "Reduction rules on their defining products",
    )
    RING_COMMUTATIVE_ASSOCIATIVE = (
        "ring.commutative_associative",
        "x y = y x; (x y) z = x (y z)",
        Suite.RING,
        "Ring laws on the canonical basis",
    )
    RING_CONFLUENCE = (
        "ring.confluence",
        "rule-by-rule rewriting = cluster reduction",
        Suite.RING,
        "Randomized redex order reaches the canonical form",
    )
    RING_POINT_TRANSFER = (
        "ring.point_transfer",
        "g_1 c_1 = c_1 int g_* c_*",
        Suite.RING,
        "Point class absorbs the first factor of g",
    )
    RING_DIVISOR_TRANSFER = (
        "ring.divisor_transfer",
        "g_1 a_1 = c_1 int g_* a_* + a_1 int g_* c_*",
        Suite.RING,
        "Divisor times the first factor of g",
    )
    RING_DIAGONAL_TRANSFER = (
        "ring.diagonal_transfer",
        "g_1 D_1..k = sum_i g_i prod_{j!=i} c_j + (D_1..k - sum_i prod_{j!=i} c_j) int c_* g_*"
        " - (k-1) c_1..c_k int g_*",
        Suite.RING,
        "Small diagonal times the first factor of g",
    )
    RING_SMALL_DIAGONAL = (
        "ring.small_diagonal",
        "D_12 D_23 ... D_{k-1,k} = D_1..k",
        Suite.RING,
        "Iterated three-point relation equals the closed small diagonal",
    )
    RING_SMALL_DIAGONAL_COROLLARY = (
        "ring.small_diagonal_corollary",
        "sum_i D_1..^i..k c_i = (k-2) D_1..k + sum_i prod_{j!=i} c_j",
        Suite.RING,
        "Small diagonals with one index replaced by the point class",
    )
    RING_PROJECTION_FORMULA = (
        "ring.projection_formula",
        "int_* (p^* a) b = a int_* b",
        Suite.RING,
        "Pushforward is linear over pulled-back classes",
    )
    # S2 heisenberg
    FOCK_HEISENBERG = (
        "fock.heisenberg",
        "[q_k(x), q_l(y)] = k d_{k+l,0} (x,y) Id",
        Suite.HEISENBERG,
        "Heisenberg commutation relations as matrices",
    )
    FOCK_ANNIHILATION_SIGN = (
        "fock.annihilation_sign",
        "[q_-1(c), q_1(1)] = -Id",
        Suite.HEISENBERG,
        "Sign convention of the annihilation operators",
    )
    # S3 diagonal
    FOCK_DIAGONAL = (
        "fock.diagonal_decomposition",
        "sum_l (-1)^l(l)/z(l) q_l q_-l(prod D_{j,l+j}) = Id",
        Suite.DIAGONAL,
        "Decomposition of the diagonal into Nakajima operators",
    )
    # S4 projectors
    PROJECTORS_ORTHOGONAL = (
        "projectors.orthogonal",
        "P_i P_j = d_ij P_i",
        Suite.PROJECTORS,
        "Projectors are orthogonal idempotents",
    )
    PROJECTORS_WEIGHT = (
        "projectors.weight",
        "h P_i = i P_i",
        Suite.PROJECTORS,
        "Projectors land in h-eigenspaces",
    )
    PROJECTORS_COMPLETE = (
        "projectors.complete",
        "sum_i P_i = Id",
        Suite.PROJECTORS,
        "Projectors sum to the identity",
    )
    PROJECTORS_OUT_OF_RANGE = (
        "projectors.out_of_range",
        "P_i = 0 for |i| > n",
        Suite.PROJECTORS,
        "The defining sum is empty outside -n..n",
    )
    PROJECTORS_LABELLED = (
        "projectors.labelled_form",
        "sum_l (-1)^l(l)/z(l) sum_{i_1+...=i} q_l q_-l(prod tpi_{i_j}) = P_i",
        Suite.PROJECTORS,
        "Per-part labelled form agrees with P_i",
    )
    # S5 lqw
    LQW_J_DEGREE_ZERO = (
        "lqw.J_degree_zero",
        "J_k^0 = -q_k",
        Suite.LQW,
        "Degree zero LQW operators are Nakajima operators",
    )
    LQW_HEISENBERG_J = (
        "lqw.heisenberg_J",
        "[q_m(x), J_0^d(g)] = d m J_m^{d-1}(x g)",
        Suite.LQW,
        "Nakajima operators against J_0^d",
    )
    LQW_VIRASORO_J = (
        "lqw.virasoro_J",
        "[L_m(x), J_0^d(g)] = d m J_m^d(x g) + 2d(d-1)m(m^2-1) J_m^{d-2}(c x g)",
        Suite.LQW,
        "Virasoro operators against J_0^d",
    )
    LQW_VIRASORO_RELATION = (
        "lqw.virasoro_relation",
        "[L_k(g), q_1(1)] = -q_{k+1}(g)",
        Suite.LQW,
        "Virasoro operators against q_1(1)",
    )
    LQW_J_TO_G = (
        "lqw.J_to_G",
        "J_0^d(g) = d!(G_{d+1}(g) + 2 G_{d-1}(g c))",
        Suite.LQW,
        "Inverse of the J-to-G substitution",
    )
    LQW_G_TWO = (
        "lqw.G_two",
        "G_2(g) = -L_0(g)",
        Suite.LQW,
        "Multiplication by univ_2 is minus L_0",
    )
    LQW_SLOTTED_J = (
        "lqw.slotted_J",
        "J_m^d(g) = <J_m^d(slot), g>",
        Suite.LQW,
        "Open-slot J contracted with g",
    )
    # S6 llv
    LLV_UNIT = (
        "llv.unit",
        "h(1_n) = -n 1_n; h_ab(1_n) = 0; h_ad(1_n) = 0",
        Suite.LLV,
        "Weight-zero generators on the fundamental class",
    )
    LLV_HOMOMORPHISM = (
        "llv.homomorphism",
        "act([x, y]) = [act x, act y]",
        Suite.LLV,
        "act is a Lie algebra homomorphism on generator pairs",
    )
    LLV_E_DELTA = (
        "llv.e_delta",
        "e_delta = G_3(1)",
        Suite.LLV,
        "e_delta is multiplication by delta",
    )
    LLV_E_F = (
        "llv.e_f",
        "[e_a, f_a] = (a,a) h",
        Suite.LLV,
        "Raising and lowering operators of a divisor",
    )
    LLV_DIVISOR = (
        "llv.divisor",
        "e_a(1_n) = univ_2(a)",
        Suite.LLV,
        "e_a creates the divisor class",
    )
    LLV_H_ALPHA_DELTA_FORMS = (
        "llv.h_alpha_delta_forms",
        "h_ad = sum_{k!=0} 1/k :L_k q_-k(a_1 + a_2):",
        Suite.LLV,
        "Both constructions of h_ad agree",
    )
    LLV_BRACKET_LAWS = (
        "llv.bracket_laws",
        "[x, y] = -[y, x]; [x, [y, z]] = [[x, y], z] + [y, [x, z]]",
        Suite.LLV,
        "The g_NS bracket is antisymmetric and satisfies Jacobi",
    )
    # S7 commutators
    COMMUTATORS_BAR = (
        "commutators.bar",
        "[h, q_l(F)] = q_l(bar F)",
        Suite.COMMUTATORS,
        "h against creation words",
    )
    COMMUTATORS_DOUBLE_BAR = (
        "commutators.double_bar",
        "[h_ab, q_l(F)] = q_l(double bar F)",
        Suite.COMMUTATORS,
        "h_ab against creation words",
    )
    COMMUTATORS_BAR_CLOSED = (
        "commutators.bar_closed_form",
        "bar(D_1..k g_1) = D_1..k((k-1) g_1 + int g_*(c_1 - c_*))",
        Suite.COMMUTATORS,
        "Closed form of the bar on small diagonals",
    )
    COMMUTATORS_DOUBLE_BAR_CLOSED = (
        "commutators.double_bar_closed_form",
        "double bar(D_1..k g_1) = D_1..k int g_*(a_1 b_* - a_* b_1)",
        Suite.COMMUTATORS,
        "Closed form of the double bar on small diagonals",
    )
    COMMUTATORS_H_G = (
        "commutators.h_G",
        "[h, G_d(g)] = G_d((d-1) g + int g_*(c - c_*))",
        Suite.COMMUTATORS,
        "h against multiplication operators",
    )
    COMMUTATORS_H_AB_G = (
        "commutators.h_ab_G",
        "[h_ab, G_d(g)] = G_d(int g_*(a b_* - a_* b))",
        Suite.COMMUTATORS,
        "h_ab against multiplication operators",
    )
    COMMUTATORS_H_AD_G = (
        "commutators.h_ad_G",
        "[h_ad, G_d(g)] = -G_2(a) G_{d-1}(g) - G_2(1) G_{d-1}(g a)"
        " - G_{d+1}(a int g + int g a) + 2 G_{d-1}(a int g c)",
        Suite.COMMUTATORS,
        "h_ad against multiplication operators",
    )
    COMMUTATORS_H_AD_EXPLICIT = (
        "commutators.h_ad_explicit",
        "[h_ad, G_d(1)], [h_ad, G_d(c)], [h_ad, G_i G_j(D)] closed forms",
        Suite.COMMUTATORS,
        "Special cases used for the tangent bundle",
    )
    COMMUTATORS_CONTRACTION = (
        "commutators.contraction",
        "sum :q_l(D (x g)_1) q_-k(y):/l! = sum q_m(sum_i D_..^i..(x g) y_i)/m!",
        Suite.COMMUTATORS,
        "Contraction of one annihilator into a small diagonal",
    )
    COMMUTATORS_WEIGHTED_CONTRACTION = (
        "commutators.weighted_contraction",
        "(s(l) + k^2 - 2)-weighted contraction = (s(m) - 2)-weighted spread",
        Suite.COMMUTATORS,
        "Weighted contraction on the point-class line",
    )
    COMMUTATORS_POINT_LINES = (
        "commutators.point_lines",
        "two c-lines of [h_ad, J] = 2 sum q_m(sum_i D(c g) a_i)/m!",
        Suite.COMMUTATORS,
        "The point-class lines of the h_ad expansion",
    )
    COMMUTATORS_VIRASORO_BLOCKS = (
        "commutators.virasoro_blocks",
        "sum :L_k(y) q_l(D (x g)_1):/l! = normally ordered expansion",
        Suite.COMMUTATORS,
        "Block-ordered Virasoro words",
    )
    COMMUTATORS_WEIGHTED_VIRASORO_BLOCKS = (
        "commutators.weighted_virasoro_blocks",
        "(s(l) + k^2 - 2)-weighted :L_k(y) q_l(D (x c g)_1): = normally ordered expansion",
        Suite.COMMUTATORS,
        "Weighted block-ordered Virasoro words",
    )
    COMMUTATORS_FORM_DIFFERENCE = (
        "commutators.form_difference",
        "A_k(g) - (k-2) B_k(g) = D_1..k(a_1 int g + int a g)",
        Suite.COMMUTATORS,
        "Difference of the two spread forms",
    )
    COMMUTATORS_FORMS_ON_POINT = (
        "commutators.forms_on_point",
        "A_k(g c) = (k-1) D_1..k a_1 int g c; B_k(g c) = D_1..k a_1 int g c",
        Suite.COMMUTATORS,
        "Spread forms on point-class multiples",
    )
    COMMUTATORS_FORMS_CLOSED = (
        "commutators.forms_closed",
        "A_k(g), B_k(g) in products of c, a, g and single diagonals",
        Suite.COMMUTATORS,
        "Closed expansions of the spread forms",
    )
    # S8 derivations
    DERIVATIONS_H_TILDE_MULT = (
        "derivations.h_tilde_mult",
        "[h~, G_d1..G_dt(G)] = G_d1..G_dt((sum d_i - t) G + bar G)",
        Suite.DERIVATIONS,
        "h~ against products of multiplication operators",
    )
    DERIVATIONS_H_TILDE_UNIVERSAL = (
        "derivations.h_tilde_universal",
        "h~(univ(G)) = univ(G')",
        Suite.DERIVATIONS,
        "h~ on universal classes",
    )
    DERIVATIONS_H_AB_MULT = (
        "derivations.h_ab_mult",
        "[h_ab, G_d1..G_dt(G)] = G_d1..G_dt(double bar G)",
        Suite.DERIVATIONS,
        "h_ab against products of multiplication operators",
    )
    DERIVATIONS_LEIBNIZ = (
        "derivations.leibniz",
        "H(x y) = H(x) y + x H(y) for H in h~, h_ab, h_ad",
        Suite.DERIVATIONS,
        "Weight-zero generators are derivations of the cup product",
    )
    # S9 chern
    CHERN_DIVISOR = (
        "chern.divisor",
        "h~(univ_2(l)) = univ_2(l)",
        Suite.CHERN,
        "Divisor classes have h~-weight one",
    )
    CHERN_DELTA = (
        "chern.delta",
        "h~(univ_3(1)) = univ_3(1)",
        Suite.CHERN,
        "delta has h~-weight one",
    )
    CHERN_TANGENT = (
        "chern.tangent",
        "h~(ch_k) = k ch_k; h_ab(ch_k) = 0",
        Suite.CHERN,
        "Chern character of the tangent bundle is of pure weight",
    )
    CHERN_H_AD_COMMUTES = (
        "chern.h_ad_commutes",
        "[h_ad, mult_{ch_k}] = 0",
        Suite.CHERN,
        "h_ad commutes with multiplication by ch_k",
    )
    CHERN_SUMMAND = (
        "chern.summand_criterion",
        "sum_i int_* G_{i->*}(c_i - c_*) = (deg G - t) G",
        Suite.CHERN,
        "Classes lying in the weight-zero summand",
    )
    # S10 tables
    TABLES_ROW_SUMS = (
        "tables.row_sums",
        "sum_s dim A^i_2s = dim A^i",
        Suite.TABLES,
        "Bigraded blocks partition the basis",
    )
    TABLES_PROJECTOR_RANKS = (
        "tables.projector_ranks",
        "rank P_i = dim ker(h - i)",
        Suite.TABLES,
        "Projector ranks match the h-eigenspaces",
    )
    TABLES_LOW_CODIM = (
        "tables.low_codim",
        "A^0 = A^0_0; A^1 = A^1_0",
        Suite.TABLES,
        "Codimension zero and one carry no Beauville shift",
    )

    check_id: str
    anchor: str
    suite: Suite
    description: str

    def __new__(cls, check_id: str, anchor: str, suite: Suite, description: str):
        """Construct a member whose value is the check id."""
        obj = object.__new__(cls)
        obj._value_ = check_id
        obj.check_id = check_id
        obj.anchor = anchor
        obj.suite = suite
        obj.description = description
        return obj

    def to_text(self) -> str:
        """Render as one tab-separated catalogue line."""
        return f"{self.check_id}\t{self.suite.code}\t{self.anchor}"


class SuiteConfig(BaseModel):
    """Everything a verification run depends on; two equal configs give equal reports."""

    model_config = ConfigDict(frozen=True)

    n_max: int = Field(3, ge=0, description="Largest number of points n")
    lattice: DivisorLattice = Field(default_factory=DivisorLattice)
    suites: tuple[Suite, ...] = Field(tuple(Suite), description="Suites to run")
    d_max: int = Field(4, gt=0, description="Largest universal degree d")
    k_max: int = Field(4, gt=0, description="Largest Nakajima index or Chern degree")
    word_length_max: int = Field(3, gt=0, description="Longest creation word in bar checks")
    confluence_seeds: int = Field(100, gt=0, description="Random redex orders per product")
    output_format: OutputFormat = OutputFormat.TEXT
    seed: int = 0
    fault: Fault = Fault.NONE
    timings: bool = Field(True, description="Report wall time; disable for byte-stable output")

    @field_validator("suites")
    @classmethod
    def _dedupe_suites(cls, v: tuple[Suite, ...]) -> tuple[Suite, ...]:
        return tuple(suite for suite in Suite if suite in v)


class Witness(BaseModel):
    """Evidence attached to a failed check."""

    instance: str = Field(description="Parameters of the failing instance")
    basis_vector: str | None = Field(None, description="Basis column where the sides differ")
    lhs: str | None = None
    rhs: str | None = None
    detail: str | None = None


class CheckResult(BaseModel):
    """Outcome of one check at one parameter point."""

    id: str
    eq_anchor: str
    suite: Suite
    params: CheckParams = Field(default_factory=dict)
    status: CheckStatus
    witness: Witness | None = None
    millis: int = 0

    @model_validator(mode="after")
    def _failure_has_witness(self) -> Self:
        if self.status == CheckStatus.FAIL and self.witness is None:
            raise ValueError("a failed check must carry a witness")
        return self

    @property
    def sort_key(self) -> tuple[str, str]:
        """Order by check id, then by parameters."""
        return self.id, json.dumps(self.params, sort_keys=True)

    def to_json(self) -> dict[str, object]:
        """Serialize to the report schema; ``witness`` is present only on failure."""
        body: dict[str, object] = {
            "id": self.id,
            "eq_anchor": self.eq_anchor,
            "params": self.params,
            "status": self.status.value,
        }
        if self.witness is not None:
            body["witness"] = self.witness.model_dump(exclude_none=True)
        body["millis"] = self.millis
        return body


class Report(BaseModel):
    """Aggregated outcome of a run, ordered by check id then parameters."""

    results: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when no check failed."""
        return all(result.status != CheckStatus.FAIL for result in self.results)

    @property
    def exit_code(self) -> int:
        """Process exit code: 0 when every check passed."""
        return 0 if self.passed else ComputationException.exit_code

    def counts(self) -> dict[CheckStatus, int]:
        """Number of results per status."""
        return {
            status: sum(1 for result in self.results if result.status == status)
            for status in CheckStatus
        }

    def to_json(self) -> str:
        """Render as a JSON array of results."""
        return json.dumps([result.to_json() for result in self.results], indent=2) + "\n"

    def to_text(self) -> str:
        """Render one line per result, witnesses indented, then a summary line."""
        lines: list[str] = []
        for result in self.results:
            params = " ".join(f"{key}={value}" for key, value in sorted(result.params.items()))
            lines.append(
                f"{result.status.value.upper():7} {result.id:42} {params:24} {result.millis}ms"
            )
            if result.witness is not None:
                for key, value in result.witness.model_dump(exclude_none=True).items():
                    lines.append(f"        {key}: {value}")
        counts = self.counts()
        lines.append(
            f"{len(self.results)} checks: {counts[CheckStatus.PASS]} passed, "
            f"{counts[CheckStatus.FAIL]} failed, {counts[CheckStatus.SKIPPED]} skipped"
        )
        return "\n".join(lines) + "\n"

    def render(self, output_format: OutputFormat) -> str:
        """Render in the requested format."""
        return self.to_json() if output_format == OutputFormat.JSON else self.to_text()


class TableRow(BaseModel):
    """One cell of the bigraded decomposition table."""

    n: int
    i: int = Field(description="Codimension")
    s: int = Field(description="Beauville shift")
    dimension: int = Field(ge=0)
