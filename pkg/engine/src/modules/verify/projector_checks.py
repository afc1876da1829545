"""Suites S4 and S10: Chow–Künneth projectors and the bigraded decomposition table."""

from collections import Counter

import sympy
from sympy import Matrix
from src.modules.operators.operators_model import Identity

from .verify_context import VerifyContext, describe
from .verify_model import CheckCatalogue, CheckParams
from .verify_registry import levels, registry


def _projector_matrices(ctx: VerifyContext, n: int) -> dict[int, Matrix]:
    return {i: ctx.matrix(ctx.projectors.op_projector(i, n), n) for i in range(-n, n + 1)}


@registry.register(CheckCatalogue.PROJECTORS_ORTHOGONAL, levels(1))
def check_orthogonal(ctx: VerifyContext, params: CheckParams) -> None:
    """P_i P_j = δ_ij P_i."""
    n = int(params["n"])
    projectors = _projector_matrices(ctx, n)
    for i, p in projectors.items():
        for j, q in projectors.items():
            expected = p if i == j else sympy.zeros(*p.shape)
            ctx.expect_matrices(p * q, expected, n, n, describe(n=n, i=i, j=j))


@registry.register(CheckCatalogue.PROJECTORS_WEIGHT, levels(1))
def check_weight(ctx: VerifyContext, params: CheckParams) -> None:
    """h acts on the image of P_i by i."""
    n = int(params["n"])
    h = ctx.matrix(ctx.operators.op_h(n), n)
    for i, p in _projector_matrices(ctx, n).items():
        ctx.expect_matrices(h * p, p * i, n, n, describe(n=n, i=i))


@registry.register(CheckCatalogue.PROJECTORS_COMPLETE, levels(1))
def check_complete(ctx: VerifyContext, params: CheckParams) -> None:
    """Σᵢ P_i = Id."""
    n = int(params["n"])
    projectors = _projector_matrices(ctx, n)
    total = sum(projectors.values(), sympy.zeros(*projectors[0].shape))
    ctx.expect_matrices(total, ctx.matrix(Identity(), n), n, n, describe(n=n))


@registry.register(CheckCatalogue.PROJECTORS_OUT_OF_RANGE, levels(1))
def check_out_of_range(ctx: VerifyContext, params: CheckParams) -> None:
    """P_i = 0 for |i| > n."""
    n = int(params["n"])
    for i in (-n - 2, -n - 1, n + 1, n + 2):
        ctx.expect_zero(ctx.projectors.op_projector(i, n), n, describe(n=n, i=i))


@registry.register(CheckCatalogue.PROJECTORS_LABELLED, levels(1))
def check_labelled(ctx: VerifyContext, params: CheckParams) -> None:
    """The labelled projector sum agrees with the component sum."""
    n = int(params["n"])
    for i in range(-n, n + 1):
        ctx.expect_operators(
            ctx.projectors.op_projector_labelled(i, n),
            ctx.projectors.op_projector(i, n),
            n,
            describe(n=n, i=i),
        )


@registry.register(CheckCatalogue.TABLES_ROW_SUMS, levels(1))
def check_row_sums(ctx: VerifyContext, params: CheckParams) -> None:
    """Each codimension row of the bigraded table sums to dim Aⁱ(Hilbₙ)."""
    n = int(params["n"])
    per_codim: Counter[int] = Counter()
    for (i, _), dimension in ctx.projectors.bigraded_dimensions(n).items():
        per_codim[i] += dimension
    expected = Counter(entry.codim for entry in ctx.space.basis(n))
    ctx.expect_values(dict(sorted(per_codim.items())), dict(sorted(expected.items())), f"n={n}")


@registry.register(CheckCatalogue.TABLES_PROJECTOR_RANKS, levels(1))
def check_projector_ranks(ctx: VerifyContext, params: CheckParams) -> None:
    """rank P_i equals the dimension of the h̃-eigenspace it projects to."""
    n = int(params["n"])
    eigenspaces: Counter[int] = Counter()
    for weight, _ in ctx.projectors.weight_decomposition(n, [ctx.operators.op_h_tilde(n)]):
        eigenspaces[int(weight.mu[0]) - n] += weight.dimension
    for i, p in _projector_matrices(ctx, n).items():
        ctx.expect_values(p.rank(), eigenspaces[i], describe(n=n, i=i))


@registry.register(CheckCatalogue.TABLES_LOW_CODIM, levels(1))
def check_low_codim(ctx: VerifyContext, params: CheckParams) -> None:
    """Codimensions 0 and 1 carry only s = 0."""
    n = int(params["n"])
    for (i, s), dimension in ctx.projectors.bigraded_dimensions(n).items():
        if i <= 1:
            ctx.expect_values(s, 0, describe(n=n, i=i, dimension=dimension))
