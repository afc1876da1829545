"""Suite S6: the g_NS action on the Fock model."""

import itertools

from src.modules.operators.operators_model import (
    DELTA,
    E,
    F,
    GNSElement,
    Identity,
    bracket,
    mukai_divisor,
)

from .verify_context import VerifyContext, describe
from .verify_model import CheckCatalogue, CheckParams
from .verify_registry import levels, registry


def _generators(ctx: VerifyContext) -> list[GNSElement]:
    """e∧α, e∧δ, α∧f, δ∧f, e∧f, α∧β and α∧δ over the lattice basis."""
    divisors = [mukai_divisor(j) for j in range(ctx.rank)]
    generators = [GNSElement.wedge(E, a) for a in divisors]
    generators.append(GNSElement.wedge(E, DELTA))
    generators.extend(GNSElement.wedge(a, F) for a in divisors)
    generators.append(GNSElement.wedge(DELTA, F))
    generators.append(GNSElement.wedge(E, F))
    generators.extend(GNSElement.wedge(a, b) for a, b in itertools.combinations(divisors, 2))
    generators.extend(GNSElement.wedge(a, DELTA) for a in divisors)
    return generators


@registry.register(CheckCatalogue.LLV_UNIT, levels(1))
def check_unit(ctx: VerifyContext, params: CheckParams) -> None:
    """h(1ₙ) = −n·1ₙ, h_{αβ}(1ₙ) = h_{αδ}(1ₙ) = 0."""
    n = int(params["n"])
    space = ctx.space
    unit = space.one_n(n)
    zero = space.zero(n)
    ctx.expect_vectors(
        ctx.operators.op_h(n).apply(space, unit), unit.scale(-n), describe(n=n, op="h")
    )
    for alpha in ctx.divisors():
        image = ctx.operators.op_h_alpha_delta(alpha, n).apply(space, unit)
        ctx.expect_vectors(image, zero, describe(n=n, op="h_ad", a=alpha))
        for beta in ctx.divisors():
            image = ctx.operators.op_h_alpha_beta(alpha, beta, n).apply(space, unit)
            ctx.expect_vectors(image, zero, describe(n=n, op="h_ab", a=alpha, b=beta))


@registry.register(CheckCatalogue.LLV_HOMOMORPHISM, levels(1))
def check_homomorphism(ctx: VerifyContext, params: CheckParams) -> None:
    """The action respects brackets of g_NS generators."""
    n = int(params["n"])
    form = ctx.operators.mukai_form(n)
    act = ctx.operators.op_act
    for x, y in itertools.combinations(_generators(ctx), 2):
        image = act(ctx.operators.gns_bracket(x, y, form), n)
        ctx.expect_operators(
            image,
            bracket(act(x, n), act(y, n)),
            n,
            describe(n=n, x=x.to_text(), y=y.to_text()),
        )


@registry.register(CheckCatalogue.LLV_E_DELTA, levels(2))
def check_e_delta(ctx: VerifyContext, params: CheckParams) -> None:
    """e_δ = G₃(1)."""
    n = int(params["n"])
    ctx.expect_operators(
        ctx.operators.op_e_delta(n), ctx.lqw.op_G(3, ctx.one(), n), n, describe(n=n)
    )


@registry.register(CheckCatalogue.LLV_E_F, levels(1))
def check_e_f(ctx: VerifyContext, params: CheckParams) -> None:
    """[e_α, f̃_α] = (α, α)·h."""
    n = int(params["n"])
    h = ctx.operators.op_h(n)
    for alpha in ctx.divisors():
        lhs = bracket(ctx.operators.op_e_alpha(alpha, n), ctx.operators.op_f_alpha(alpha, n))
        square = ctx.ring.pairing(alpha, alpha)
        ctx.expect_operators(lhs, h.scale(square), n, describe(n=n, a=alpha))


@registry.register(CheckCatalogue.LLV_DIVISOR, levels(1))
def check_divisor(ctx: VerifyContext, params: CheckParams) -> None:
    """e_α(1ₙ) = univ₂(α)."""
    n = int(params["n"])
    unit = ctx.space.one_n(n)
    for alpha in ctx.divisors():
        ctx.expect_vectors(
            ctx.operators.op_e_alpha(alpha, n).apply(ctx.space, unit),
            ctx.lqw.universal_class((2,), alpha, n),
            describe(n=n, a=alpha),
        )


@registry.register(CheckCatalogue.LLV_H_ALPHA_DELTA_FORMS, levels(1))
def check_h_alpha_delta_forms(ctx: VerifyContext, params: CheckParams) -> None:
    """The cubic and the Virasoro forms of h_{αδ} agree."""
    n = int(params["n"])
    for alpha in ctx.divisors():
        ctx.expect_operators(
            ctx.operators.op_h_alpha_delta(alpha, n),
            ctx.operators.op_h_alpha_delta_virasoro(alpha, n),
            n,
            describe(n=n, a=alpha),
        )


@registry.register(CheckCatalogue.LLV_BRACKET_LAWS, levels(1))
def check_bracket_laws(ctx: VerifyContext, params: CheckParams) -> None:
    """The g_NS bracket is antisymmetric and satisfies Jacobi; e∧f acts by h."""
    n = int(params["n"])
    form = ctx.operators.mukai_form(n)

    def br(x: GNSElement, y: GNSElement) -> GNSElement:
        return ctx.operators.gns_bracket(x, y, form)

    generators = _generators(ctx)
    for x, y in itertools.product(generators, repeat=2):
        ctx.expect_values(
            br(x, y).to_text(),
            (-br(y, x)).to_text(),
            describe(n=n, x=x.to_text(), y=y.to_text()),
        )
    for x, y, z in itertools.combinations(generators, 3):
        lhs = br(x, br(y, z))
        rhs = br(br(x, y), z) + br(y, br(x, z))
        ctx.expect_values(
            lhs.to_text(), rhs.to_text(), describe(x=x.to_text(), y=y.to_text(), z=z.to_text())
        )
    ctx.expect_operators(
        ctx.operators.op_act(GNSElement.wedge(E, F), n), ctx.operators.op_h(n), n, "act(e^f)"
    )
    ctx.expect_operators(ctx.operators.op_act(GNSElement(), n), Identity().scale(0), n, "act(0)")
