"""Suites S2 and S3: Heisenberg relations and the decomposition of the diagonal."""

import itertools

from src.modules.operators.operators_model import Identity, OpExpr, ZeroOp, bracket

from .verify_context import VerifyContext, describe
from .verify_model import CheckCatalogue, CheckParams
from .verify_registry import levels, registry


@registry.register(CheckCatalogue.FOCK_HEISENBERG, levels(0))
def check_heisenberg(ctx: VerifyContext, params: CheckParams) -> None:
    """[q_k(x), q_l(y)] = k·δ_{k+l,0}·(x, y)·Id for nonzero k, l."""
    n = int(params["n"])
    k_max = ctx.config.k_max
    indices = [k for k in range(-k_max, k_max + 1) if k]
    classes = ctx.surface_basis(1)
    for k, l in itertools.product(indices, repeat=2):
        for x, y in itertools.product(classes, repeat=2):
            lhs = bracket(ctx.space.nakajima_op([k], x), ctx.space.nakajima_op([l], y))
            rhs: OpExpr = ZeroOp(k + l)
            if k + l == 0:
                rhs = Identity().scale(k * ctx.ring.pairing(x, y))
            ctx.expect_operators(lhs, rhs, n, describe(n=n, k=k, l=l, x=x, y=y))


@registry.register(CheckCatalogue.FOCK_ANNIHILATION_SIGN, levels(0))
def check_annihilation_sign(ctx: VerifyContext, params: CheckParams) -> None:
    """[q₋₁(c), q₁(1)] = −Id."""
    n = int(params["n"])
    lhs = bracket(
        ctx.space.nakajima_op([-1], ctx.point()), ctx.space.nakajima_op([1], ctx.one())
    )
    ctx.expect_operators(lhs, Identity().scale(-1), n, describe(n=n))


@registry.register(CheckCatalogue.FOCK_DIAGONAL, levels(1))
def check_diagonal(ctx: VerifyContext, params: CheckParams) -> None:
    """The three Künneth components of the diagonal sum to the identity."""
    n = int(params["n"])
    ctx.expect_operators(ctx.projectors.op_diagonal(n), Identity(), n, describe(n=n))
