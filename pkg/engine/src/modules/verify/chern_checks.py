"""Suite S9: divisor classes, δ and the Chern character of the tangent bundle."""

from src.modules.operators.operators_model import bracket

from .verify_context import VerifyContext, describe
from .verify_model import CheckCatalogue, CheckParams
from .verify_registry import levels, once, registry


@registry.register(CheckCatalogue.CHERN_DIVISOR, levels(1))
def check_divisor(ctx: VerifyContext, params: CheckParams) -> None:
    """h̃(univ₂(l)) = univ₂(l)."""
    n = int(params["n"])
    h_tilde = ctx.operators.op_h_tilde(n)
    for alpha in ctx.divisors():
        univ = ctx.lqw.universal_class((2,), alpha, n)
        ctx.expect_vectors(h_tilde.apply(ctx.space, univ), univ, describe(n=n, l=alpha))


@registry.register(CheckCatalogue.CHERN_DELTA, levels(1))
def check_delta(ctx: VerifyContext, params: CheckParams) -> None:
    """h̃(univ₃(1)) = univ₃(1)."""
    n = int(params["n"])
    univ = ctx.lqw.universal_class((3,), ctx.one(), n)
    ctx.expect_vectors(ctx.operators.op_h_tilde(n).apply(ctx.space, univ), univ, describe(n=n))


@registry.register(CheckCatalogue.CHERN_TANGENT, levels(1))
def check_tangent(ctx: VerifyContext, params: CheckParams) -> None:
    """h̃(ch_k) = k·ch_k and h_{αβ}(ch_k) = 0."""
    n = int(params["n"])
    h_tilde = ctx.operators.op_h_tilde(n)
    zero = ctx.space.zero(n)
    for k in range(ctx.config.k_max + 1):
        ch = ctx.lqw.chern_character(k, n)
        ctx.expect_vectors(h_tilde.apply(ctx.space, ch), ch.scale(k), describe(n=n, k=k))
        for alpha in ctx.divisors():
            for beta in ctx.divisors():
                h_ab = ctx.operators.op_h_alpha_beta(alpha, beta, n)
                ctx.expect_vectors(
                    h_ab.apply(ctx.space, ch), zero, describe(n=n, k=k, a=alpha, b=beta)
                )


@registry.register(CheckCatalogue.CHERN_H_AD_COMMUTES, levels(1))
def check_h_ad_commutes(ctx: VerifyContext, params: CheckParams) -> None:
    """[h_{αδ}, mult by ch_k] = 0."""
    n = int(params["n"])
    for alpha in ctx.divisors():
        h_ad = ctx.operators.op_h_alpha_delta(alpha, n)
        for k in range(ctx.config.k_max + 1):
            ctx.expect_zero(
                bracket(h_ad, ctx.lqw.op_mult_chern(k, n)), n, describe(n=n, k=k, a=alpha)
            )


@registry.register(CheckCatalogue.CHERN_SUMMAND, once)
def check_summand(ctx: VerifyContext, params: CheckParams) -> None:
    """bar(Γ) = (deg Γ − t)Γ over the listed summand classes."""
    for gamma in ctx.claims.summand_classes():
        ctx.expect_classes(ctx.claims.summand_criterion(gamma), describe(g=gamma))
