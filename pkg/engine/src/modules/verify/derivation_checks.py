"""Suite S8: h̃, h_{αβ} and h_{αδ} act as derivations of the cup product."""

import itertools
from collections.abc import Callable, Iterator

from src.modules.operators.operators_model import OpExpr, bracket
from src.modules.taut_ring.taut_ring_model import Label, SurfaceClass

from .verify_context import VerifyContext, describe
from .verify_model import CheckCatalogue, CheckParams
from .verify_registry import levels, registry

_LEIBNIZ_DEGREES = (2, 3)


def _generators(ctx: VerifyContext) -> Iterator[tuple[tuple[int, ...], SurfaceClass]]:
    """Yield (d₁…d_t, Γ) for t ≤ 2, every dᵢ in 2…d_max and Γ over the basis of S^t."""
    degrees = range(2, ctx.config.d_max + 1)
    for t in (1, 2):
        classes = ctx.surface_basis(t)
        for ds in itertools.product(degrees, repeat=t):
            for gamma in classes:
                yield ds, gamma


def _check_transform(
    ctx: VerifyContext,
    n: int,
    op: OpExpr,
    transform: Callable[[tuple[int, ...], SurfaceClass], SurfaceClass],
    label: str,
) -> None:
    mult = ctx.lqw.op_mult_universal
    for ds, gamma in _generators(ctx):
        ctx.expect_operators(
            bracket(op, mult(ds, gamma, n)),
            mult(ds, transform(ds, gamma), n),
            n,
            describe(n=n, op=label, ds=list(ds), g=gamma),
        )


@registry.register(CheckCatalogue.DERIVATIONS_H_TILDE_MULT, levels(1))
def check_h_tilde_mult(ctx: VerifyContext, params: CheckParams) -> None:
    """[h̃, G_{d₁}…G_{d_t}(Γ)] = G_{d₁}…G_{d_t}((Σdᵢ − t)Γ + bar Γ)."""
    n = int(params["n"])
    _check_transform(
        ctx, n, ctx.operators.op_h_tilde(n), ctx.claims.h_tilde_transform, "h_tilde"
    )


@registry.register(CheckCatalogue.DERIVATIONS_H_TILDE_UNIVERSAL, levels(1))
def check_h_tilde_universal(ctx: VerifyContext, params: CheckParams) -> None:
    """h̃(univ(Γ)) = univ(Γ′) with Γ′ the transformed class."""
    n = int(params["n"])
    h_tilde = ctx.operators.op_h_tilde(n)
    unit = ctx.space.one_n(n)
    for ds, gamma in _generators(ctx):
        image = ctx.claims.h_tilde_transform(ds, gamma)
        ctx.expect_vectors(
            h_tilde.apply(ctx.space, ctx.lqw.universal_class(ds, gamma, n)),
            ctx.lqw.op_mult_universal(ds, image, n).apply(ctx.space, unit),
            describe(n=n, ds=list(ds), g=gamma),
        )


def _double_bar_transform(
    ctx: VerifyContext, alpha: Label, beta: Label
) -> Callable[[tuple[int, ...], SurfaceClass], SurfaceClass]:
    def transform(ds: tuple[int, ...], gamma: SurfaceClass) -> SurfaceClass:
        return ctx.claims.h_alpha_beta_transform(gamma, alpha, beta)

    return transform


@registry.register(CheckCatalogue.DERIVATIONS_H_AB_MULT, levels(1))
def check_h_ab_mult(ctx: VerifyContext, params: CheckParams) -> None:
    """[h_{αβ}, G_{d₁}…G_{d_t}(Γ)] = G_{d₁}…G_{d_t}(double bar Γ)."""
    n = int(params["n"])
    for alpha, la in zip(ctx.divisors(), ctx.divisor_labels(), strict=True):
        for beta, lb in zip(ctx.divisors(), ctx.divisor_labels(), strict=True):
            _check_transform(
                ctx,
                n,
                ctx.operators.op_h_alpha_beta(alpha, beta, n),
                _double_bar_transform(ctx, la, lb),
                f"h_ab a={alpha.to_text()} b={beta.to_text()}",
            )


@registry.register(CheckCatalogue.DERIVATIONS_LEIBNIZ, levels(1))
def check_leibniz(ctx: VerifyContext, params: CheckParams) -> None:
    """H(xy) = H(x)y + xH(y) on products of universal classes."""
    n = int(params["n"])
    space = ctx.space
    derivations: list[tuple[str, OpExpr]] = [("h_tilde", ctx.operators.op_h_tilde(n))]
    for alpha in ctx.divisors():
        for beta in ctx.divisors():
            name = f"h_ab({alpha.to_text()},{beta.to_text()})"
            derivations.append((name, ctx.operators.op_h_alpha_beta(alpha, beta, n)))
        derivations.append((f"h_ad({alpha.to_text()})", ctx.operators.op_h_alpha_delta(alpha, n)))
    classes = ctx.surface_basis(1)
    for name, op in derivations:
        for d, e in itertools.product(_LEIBNIZ_DEGREES, repeat=2):
            for gamma, eta in itertools.product(classes, repeat=2):
                g_gamma = ctx.lqw.op_G(d, gamma, n)
                g_eta = ctx.lqw.op_G(e, eta, n)
                x = ctx.lqw.universal_class((d,), gamma, n)
                y = ctx.lqw.universal_class((e,), eta, n)
                lhs = op.apply(space, g_gamma.apply(space, y))
                rhs = g_eta.apply(space, op.apply(space, x)) + g_gamma.apply(
                    space, op.apply(space, y)
                )
                ctx.expect_vectors(lhs, rhs, describe(n=n, op=name, d=d, e=e, g=gamma, h=eta))
