"""Suite S1: identities of the tautological ring R*(S^k)."""

import itertools
import random

from src.modules.operators.operators_model import Sides
from src.modules.taut_ring.taut_ring_model import SurfaceClass, euler_characteristic
from src.modules.taut_ring.taut_ring_rewriter import Strategy, rewrite_product

from .verify_context import VerifyContext, describe
from .verify_model import CheckCatalogue, CheckParams, SuiteConfig
from .verify_registry import registry


# Above this many basis triples the associativity check samples instead.
_EXHAUSTIVE_TRIPLES = 1000


def _arities(config: SuiteConfig) -> list[CheckParams]:
    return [{"k": k} for k in range(1, config.k_max + 1)]


def _projection_arities(config: SuiteConfig) -> list[CheckParams]:
    return [{"k": 1}, {"k": 2}]


def _tails(config: SuiteConfig) -> list[CheckParams]:
    return [{"l": 0}, {"l": 1}]


def _diagonal_tails(config: SuiteConfig) -> list[CheckParams]:
    return [{"k": k, "l": tail} for k in range(2, config.k_max + 1) for tail in (0, 1)]


def _chain_lengths(config: SuiteConfig) -> list[CheckParams]:
    return [{"k": k} for k in range(2, config.k_max + 2)]


def _integrate_first(
    ctx: VerifyContext, gamma: SurfaceClass, weight: SurfaceClass
) -> SurfaceClass:
    """∫_• γ_• w_• on S × S^l, constant in the first factor."""
    arity = gamma.arity
    moved = ctx.ring.move_to_new_index(gamma, 0)
    return ctx.ring.pushforward(moved * ctx.ring.embed(weight, arity, arity + 1), (arity,))


@registry.register(CheckCatalogue.RING_RULE_LITERALS)
def check_rule_literals(ctx: VerifyContext, params: CheckParams) -> None:
    """The six multiplication rules on their defining products."""
    ring = ctx.ring
    diagonal = ring.diagonal(0, 1, 2)
    points = ring.product_of_points((0, 1), 2)
    ctx.expect_classes(Sides(diagonal * ring.point(0, 2), points), "D_12 c_1")
    # The degree of Δ·Δ comes from the Betti numbers, not from the rule under test.
    euler = euler_characteristic()
    square = diagonal * diagonal
    degree = ring.pushforward(square, (0, 1))
    ctx.expect_classes(Sides(degree, ring.one(0).scale(euler)), "int D_12 D_12")
    ctx.expect_classes(Sides(square, points.scale(euler)), "D_12 D_12")
    ctx.expect_classes(Sides(ctx.point() * ctx.point(), ring.zero(1)), "c c")
    for j in range(ctx.rank):
        alpha_first = ring.divisor(j, 0, 2)
        transfer = alpha_first * ring.point(1, 2) + ring.divisor(j, 1, 2) * ring.point(0, 2)
        ctx.expect_classes(Sides(diagonal * alpha_first, transfer), f"D_12 a{j + 1}_1")
        point_divisor = ctx.point() * ring.divisor(j, 0, 1)
        ctx.expect_classes(Sides(point_divisor, ring.zero(1)), f"c a{j + 1}")
        for i in range(ctx.rank):
            expected = ctx.point().scale(ring.lattice.pairing(i, j))
            ctx.expect_classes(
                Sides(ring.divisor(i, 0, 1) * ring.divisor(j, 0, 1), expected),
                f"a{i + 1} a{j + 1}",
            )


@registry.register(CheckCatalogue.RING_COMMUTATIVE_ASSOCIATIVE, _arities)
def check_commutative_associative(ctx: VerifyContext, params: CheckParams) -> None:
    """Products of basis monomials commute and associate.

    Every pair is checked. Triples are exhaustive while there are at most
    ``_EXHAUSTIVE_TRIPLES`` of them and a seeded sample of ``confluence_seeds``
    triples beyond that.
    """
    k = int(params["k"])
    basis = ctx.surface_basis(k)
    for x, y in itertools.product(basis, repeat=2):
        ctx.expect_classes(Sides(x * y, y * x), describe(x=x, y=y))
    if len(basis) ** 3 <= _EXHAUSTIVE_TRIPLES:
        triples = list(itertools.product(basis, repeat=3))
    else:
        rng = random.Random(ctx.config.seed + k)
        triples = [
            (rng.choice(basis), rng.choice(basis), rng.choice(basis))
            for _ in range(ctx.config.confluence_seeds)
        ]
    for x, y, z in triples:
        ctx.expect_classes(Sides((x * y) * z, x * (y * z)), describe(x=x, y=y, z=z))


@registry.register(CheckCatalogue.RING_CONFLUENCE)
def check_confluence(ctx: VerifyContext, params: CheckParams) -> None:
    """Random monomial pairs of arity ≤ 4, reduced under every strategy."""
    config = ctx.config
    rng = random.Random(config.seed)
    bases = {k: ctx.ring.canonical_basis(k) for k in range(1, 5)}
    for seed in range(config.confluence_seeds):
        arity = rng.randint(1, 4)
        x = rng.choice(bases[arity])
        y = rng.choice(bases[arity])
        expected = ctx.ring.mul(ctx.ring.from_monomial(x), ctx.ring.from_monomial(y))
        for strategy in Strategy:
            reduced = rewrite_product(ctx.ring, x, y, strategy, config.seed + seed)
            ctx.expect_classes(
                Sides(reduced, expected),
                f"x={x.to_text()} y={y.to_text()} strategy={strategy.value} seed={seed}",
            )


@registry.register(CheckCatalogue.RING_POINT_TRANSFER, _tails)
def check_point_transfer(ctx: VerifyContext, params: CheckParams) -> None:
    """γ₁c₁ = c₁∫γ_•c_•."""
    ring = ctx.ring
    arity = 1 + int(params["l"])
    for gamma in ctx.surface_basis(arity):
        rhs = ring.point(0, arity) * _integrate_first(ctx, gamma, ctx.point())
        ctx.expect_classes(Sides(gamma * ring.point(0, arity), rhs), describe(g=gamma))


@registry.register(CheckCatalogue.RING_DIVISOR_TRANSFER, _tails)
def check_divisor_transfer(ctx: VerifyContext, params: CheckParams) -> None:
    """γ₁α₁ = c₁∫γ_•α_• + α₁∫γ_•c_•."""
    ring = ctx.ring
    arity = 1 + int(params["l"])
    for j, alpha in enumerate(ctx.divisors()):
        for gamma in ctx.surface_basis(arity):
            rhs = ring.point(0, arity) * _integrate_first(ctx, gamma, alpha) + ring.divisor(
                j, 0, arity
            ) * _integrate_first(ctx, gamma, ctx.point())
            ctx.expect_classes(
                Sides(gamma * ring.divisor(j, 0, arity), rhs), describe(a=alpha, g=gamma)
            )


@registry.register(CheckCatalogue.RING_DIAGONAL_TRANSFER, _diagonal_tails)
def check_diagonal_transfer(ctx: VerifyContext, params: CheckParams) -> None:
    """γ₁Δ_{1…k} expanded into points, diagonals and integrals of γ."""
    ring = ctx.ring
    k = int(params["k"])
    tail = int(params["l"])
    arity = k + tail
    tail_indices = list(range(k, arity))
    diagonal = ring.small_diagonal(range(k), arity)
    all_points = ring.product_of_points(range(k), arity)
    missing_one = ring.zero(arity)
    for i in range(k):
        missing_one = missing_one + ring.product_of_points(
            (j for j in range(k) if j != i), arity
        )

    def placed(cls: SurfaceClass, index: int) -> SurfaceClass:
        return ring.pullback(cls, [index, *tail_indices], arity)

    for gamma in ctx.surface_basis(1 + tail):
        with_point = placed(_integrate_first(ctx, gamma, ctx.point()), 0)
        plain = placed(_integrate_first(ctx, gamma, ctx.one()), 0)
        rhs = (diagonal - missing_one) * with_point - all_points * plain.scale(k - 1)
        for i in range(k):
            rhs = rhs + placed(gamma, i) * ring.product_of_points(
                (j for j in range(k) if j != i), arity
            )
        ctx.expect_classes(Sides(placed(gamma, 0) * diagonal, rhs), describe(g=gamma))


@registry.register(CheckCatalogue.RING_SMALL_DIAGONAL, _chain_lengths)
def check_small_diagonal(ctx: VerifyContext, params: CheckParams) -> None:
    """Δ₁₂Δ₂₃…Δ_{k−1,k} = Δ_{1…k}."""
    k = int(params["k"])
    chain = ctx.ring.product((ctx.ring.diagonal(i, i + 1, k) for i in range(k - 1)), k)
    ctx.expect_classes(Sides(chain, ctx.ring.small_diagonal(range(k), k)), f"k={k}")


@registry.register(CheckCatalogue.RING_SMALL_DIAGONAL_COROLLARY, _chain_lengths)
def check_small_diagonal_corollary(ctx: VerifyContext, params: CheckParams) -> None:
    """Σᵢ Δ_{1…î…k}cᵢ = (k − 2)Δ_{1…k} + Σᵢ ∏_{j≠i} c_j."""
    k = int(params["k"])
    ctx.expect_classes(ctx.claims.small_diagonal_corollary(k), f"k={k}")


@registry.register(CheckCatalogue.RING_PROJECTION_FORMULA, _projection_arities)
def check_projection_formula(ctx: VerifyContext, params: CheckParams) -> None:
    """π_*(π*a · b) = a · π_*b for the projection forgetting the last factor."""
    ring = ctx.ring
    k = int(params["k"])
    for a in ctx.surface_basis(k):
        lifted = ring.pullback(a, range(k), k + 1)
        for b in ctx.surface_basis(k + 1):
            lhs = ring.pushforward(lifted * b, (k,))
            rhs = a * ring.pushforward(b, (k,))
            ctx.expect_classes(Sides(lhs, rhs), describe(a=a, b=b))
