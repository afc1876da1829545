"""Suite S5: LQW operators J, the Virasoro operators and the multiplication operators G."""

import itertools
import math

from src.modules.operators.operators_model import (
    LinearCombination,
    OpExpr,
    SlottedProduct,
    ZeroOp,
    bracket,
)

from .verify_context import VerifyContext, describe
from .verify_model import CheckCatalogue, CheckParams
from .verify_registry import levels, registry

_M_MAX = 2


def _indices(bound: int) -> list[int]:
    return [m for m in range(-bound, bound + 1) if m]


@registry.register(CheckCatalogue.LQW_J_DEGREE_ZERO, levels(1))
def check_J_degree_zero(ctx: VerifyContext, params: CheckParams) -> None:
    """J_k⁰(γ) = −q_k(γ)."""
    n = int(params["n"])
    for k in _indices(ctx.config.k_max):
        for gamma in ctx.surface_basis(1):
            ctx.expect_operators(
                ctx.lqw.op_J(k, 0, gamma, n),
                ctx.space.nakajima_op([k], gamma).scale(-1),
                n,
                describe(n=n, k=k, g=gamma),
            )


@registry.register(CheckCatalogue.LQW_HEISENBERG_J, levels(1))
def check_heisenberg_J(ctx: VerifyContext, params: CheckParams) -> None:
    """[q_m(x), J₀^d(γ)] = d·m·J_m^{d−1}(xγ)."""
    n = int(params["n"])
    classes = ctx.surface_basis(1)
    for d in range(1, ctx.config.d_max):
        for m in _indices(_M_MAX):
            bound = n + max(m, 0)
            for x, gamma in itertools.product(classes, repeat=2):
                lhs = bracket(ctx.space.nakajima_op([m], x), ctx.lqw.op_J(0, d, gamma, bound))
                rhs = ctx.lqw.op_J(m, d - 1, x * gamma, bound).scale(d * m)
                ctx.expect_operators(lhs, rhs, n, describe(n=n, d=d, m=m, x=x, g=gamma))


@registry.register(CheckCatalogue.LQW_VIRASORO_J, levels(1))
def check_virasoro_J(ctx: VerifyContext, params: CheckParams) -> None:
    """[L_m(x), J₀^d(γ)] against d·m·J_m^d(xγ) plus the c-correction."""
    n = int(params["n"])
    classes = ctx.surface_basis(1)
    for d in range(1, ctx.config.d_max):
        for m in _indices(_M_MAX):
            bound = n + max(m, 0)
            for x, gamma in itertools.product(classes, repeat=2):
                lhs = bracket(ctx.operators.op_L(m, x, bound), ctx.lqw.op_J(0, d, gamma, bound))
                terms: list[tuple[int, OpExpr]] = [
                    (d * m, ctx.lqw.op_J(m, d, x * gamma, bound))
                ]
                if d >= 2:
                    point_term = ctx.lqw.op_J(m, d - 2, ctx.point() * x * gamma, bound)
                    terms.append((2 * d * (d - 1) * m * (m * m - 1), point_term))
                rhs = LinearCombination.of(*terms)
                ctx.expect_operators(lhs, rhs, n, describe(n=n, d=d, m=m, x=x, g=gamma))


@registry.register(CheckCatalogue.LQW_VIRASORO_RELATION, levels(0))
def check_virasoro_relation(ctx: VerifyContext, params: CheckParams) -> None:
    """[L_k(γ), q₁(1)] = −q_{k+1}(γ)."""
    n = int(params["n"])
    create = ctx.space.nakajima_op([1], ctx.one())
    for k in range(-n - 1, n + 2):
        for gamma in ctx.surface_basis(1):
            lhs = bracket(ctx.operators.op_L(k, gamma, n + 1), create)
            rhs: OpExpr = ZeroOp(0)
            if k + 1:
                rhs = ctx.space.nakajima_op([k + 1], gamma).scale(-1)
            ctx.expect_operators(lhs, rhs, n, describe(n=n, k=k, g=gamma))


@registry.register(CheckCatalogue.LQW_J_TO_G, levels(1))
def check_J_to_G(ctx: VerifyContext, params: CheckParams) -> None:
    """J₀^d(γ) = d!(G_{d+1}(γ) + 2G_{d−1}(γc))."""
    n = int(params["n"])
    for d in range(1, ctx.config.d_max):
        for gamma in ctx.surface_basis(1):
            rhs = LinearCombination.of(
                (1, ctx.lqw.op_G(d + 1, gamma, n)),
                (2, ctx.lqw.op_G(d - 1, gamma * ctx.point(), n)),
            ).scale(math.factorial(d))
            ctx.expect_operators(
                ctx.lqw.op_J(0, d, gamma, n), rhs, n, describe(n=n, d=d, g=gamma)
            )


@registry.register(CheckCatalogue.LQW_G_TWO, levels(1))
def check_G_two(ctx: VerifyContext, params: CheckParams) -> None:
    """G₂(γ) = −L₀(γ)."""
    n = int(params["n"])
    for gamma in ctx.surface_basis(1):
        ctx.expect_operators(
            ctx.lqw.op_G(2, gamma, n),
            ctx.operators.op_L(0, gamma, n).scale(-1),
            n,
            describe(n=n, g=gamma),
        )


@registry.register(CheckCatalogue.LQW_SLOTTED_J, levels(1))
def check_slotted_J(ctx: VerifyContext, params: CheckParams) -> None:
    """Pairing the slotted J with γ recovers J_m^d(γ)."""
    n = int(params["n"])
    for d in range(ctx.config.d_max):
        for m in range(-_M_MAX, _M_MAX + 1):
            slotted = ctx.lqw.op_J_slotted(m, d, n)
            for gamma in ctx.surface_basis(1):
                ctx.expect_operators(
                    ctx.lqw.op_J(m, d, gamma, n),
                    SlottedProduct((slotted,), gamma),
                    n,
                    describe(n=n, d=d, m=m, g=gamma),
                )
