"""Suite S7: commutators of h, h_{αβ}, h_{αδ} with q-words and G-operators.

Ring-level identities (bar closed forms, the A_k/B_k forms) are compared as
classes, word identities as symmetrized class dictionaries, and everything
else as matrices on A*(Hilbₙ).
"""

import itertools

from src.core.utils.partition_utils import generalized_partitions
from src.modules.operators.operators_model import LinearCombination, QWord, bracket
from src.modules.taut_ring.taut_ring_model import Label, SurfaceClass

from .verify_context import VerifyContext, describe
from .verify_model import CheckCatalogue, CheckParams, SuiteConfig
from .verify_registry import ParamGrid, levels, registry

_BAR_K_MAX = 3


def _labelled_pairs(ctx: VerifyContext) -> list[tuple[SurfaceClass, SurfaceClass, Label, Label]]:
    """Every ordered pair of basis divisors, as classes and as labels."""
    named = list(zip(ctx.divisors(), ctx.divisor_labels(), strict=True))
    return [(a, b, la, lb) for (a, la), (b, lb) in itertools.product(named, repeat=2)]


def _words(ctx: VerifyContext, n: int) -> list[tuple[int, ...]]:
    """Normally ordered words acting on level n with target level at most n + 1."""
    words: list[tuple[int, ...]] = []
    for length in range(1, ctx.config.word_length_max + 1):
        for total in range(-n, 2):
            words.extend(generalized_partitions(total, length, n))
    return words


def _bar_grid(config: SuiteConfig) -> list[CheckParams]:
    return [{"k": k, "l": tail} for k in range(1, _BAR_K_MAX + 1) for tail in (0, 1)]


def _form_grid(minimum: int) -> ParamGrid:
    def grid(config: SuiteConfig) -> list[CheckParams]:
        return [{"k": k} for k in range(minimum, config.k_max + 1)]

    return grid


# ---------------------------------------------------------------------- q-words


@registry.register(CheckCatalogue.COMMUTATORS_BAR, levels(0))
def check_bar(ctx: VerifyContext, params: CheckParams) -> None:
    """[h, q_λ(Φ)] = q_λ(bar Φ)."""
    n = int(params["n"])
    for word in _words(ctx, n):
        bound = n + max(sum(word), 0)
        h = ctx.operators.op_h(bound)
        for phi in ctx.surface_basis(len(word)):
            bar = ctx.ring.bar(phi, range(len(word)))
            ctx.expect_operators(
                bracket(h, QWord(word, phi)),
                QWord(word, bar),
                n,
                describe(n=n, word=list(word), phi=phi),
            )


@registry.register(CheckCatalogue.COMMUTATORS_DOUBLE_BAR, levels(0))
def check_double_bar(ctx: VerifyContext, params: CheckParams) -> None:
    """[h_{αβ}, q_λ(Φ)] = q_λ(double bar Φ)."""
    n = int(params["n"])
    for word in _words(ctx, n):
        bound = n + max(sum(word), 0)
        for alpha, beta, la, lb in _labelled_pairs(ctx):
            h_ab = ctx.operators.op_h_alpha_beta(alpha, beta, bound)
            for phi in ctx.surface_basis(len(word)):
                image = ctx.ring.double_bar(phi, range(len(word)), la, lb)
                ctx.expect_operators(
                    bracket(h_ab, QWord(word, phi)),
                    QWord(word, image),
                    n,
                    describe(n=n, word=list(word), a=alpha, b=beta, phi=phi),
                )


@registry.register(CheckCatalogue.COMMUTATORS_BAR_CLOSED, _bar_grid)
def check_bar_closed(ctx: VerifyContext, params: CheckParams) -> None:
    """Closed form of bar on Δ_{1…k}γ₁."""
    k, tail = int(params["k"]), int(params["l"])
    for gamma in ctx.surface_basis(1 + tail):
        ctx.expect_classes(ctx.claims.bar_claim(k, gamma), describe(k=k, g=gamma))


@registry.register(CheckCatalogue.COMMUTATORS_DOUBLE_BAR_CLOSED, _bar_grid)
def check_double_bar_closed(ctx: VerifyContext, params: CheckParams) -> None:
    """Closed form of the double bar on Δ_{1…k}γ₁."""
    k, tail = int(params["k"]), int(params["l"])
    for gamma in ctx.surface_basis(1 + tail):
        for alpha, beta, la, lb in _labelled_pairs(ctx):
            ctx.expect_classes(
                ctx.claims.double_bar_claim(k, gamma, la, lb),
                describe(k=k, g=gamma, a=alpha, b=beta),
            )


# ---------------------------------------------------------------------- G-operators


@registry.register(CheckCatalogue.COMMUTATORS_H_G, levels(1))
def check_h_G(ctx: VerifyContext, params: CheckParams) -> None:
    """[h, G_d(γ)] = G_d(γ′) with γ′ the h̃-transform."""
    n = int(params["n"])
    h = ctx.operators.op_h(n)
    for d in range(2, ctx.config.d_max + 1):
        for gamma in ctx.surface_basis(1):
            image = ctx.claims.h_tilde_transform((d,), gamma)
            ctx.expect_operators(
                bracket(h, ctx.lqw.op_G(d, gamma, n)),
                ctx.lqw.op_G(d, image, n),
                n,
                describe(n=n, d=d, g=gamma),
            )


@registry.register(CheckCatalogue.COMMUTATORS_H_AB_G, levels(1))
def check_h_ab_G(ctx: VerifyContext, params: CheckParams) -> None:
    """[h_{αβ}, G_d(γ)] = G_d(double bar γ)."""
    n = int(params["n"])
    for alpha, beta, la, lb in _labelled_pairs(ctx):
        h_ab = ctx.operators.op_h_alpha_beta(alpha, beta, n)
        for d in range(2, ctx.config.d_max + 1):
            for gamma in ctx.surface_basis(1):
                image = ctx.claims.h_alpha_beta_transform(gamma, la, lb)
                ctx.expect_operators(
                    bracket(h_ab, ctx.lqw.op_G(d, gamma, n)),
                    ctx.lqw.op_G(d, image, n),
                    n,
                    describe(n=n, d=d, a=alpha, b=beta, g=gamma),
                )


@registry.register(CheckCatalogue.COMMUTATORS_H_AD_G, levels(1))
def check_h_ad_G(ctx: VerifyContext, params: CheckParams) -> None:
    """The four-term expansion of [h_{αδ}, G_d(γ)]."""
    n = int(params["n"])
    G = ctx.lqw.op_G
    one, point = ctx.one(), ctx.point()
    integral = ctx.ring.integrate_all
    for alpha in ctx.divisors():
        h_ad = ctx.operators.op_h_alpha_delta(alpha, n)
        for d in range(2, ctx.config.d_max + 1):
            for gamma in ctx.surface_basis(1):
                spread = alpha.scale(integral(gamma)) + one.scale(integral(gamma * alpha))
                rhs = LinearCombination.of(
                    (-1, G(2, alpha, n) @ G(d - 1, gamma, n)),
                    (-1, G(2, one, n) @ G(d - 1, gamma * alpha, n)),
                    (-1, G(d + 1, spread, n)),
                    (2, G(d - 1, alpha.scale(integral(gamma * point)), n)),
                )
                ctx.expect_operators(
                    bracket(h_ad, G(d, gamma, n)), rhs, n, describe(n=n, d=d, a=alpha, g=gamma)
                )


@registry.register(CheckCatalogue.COMMUTATORS_H_AD_EXPLICIT, levels(1))
def check_h_ad_explicit(ctx: VerifyContext, params: CheckParams) -> None:
    """[h_{αδ}, G_d(1)], [h_{αδ}, G_d(c)] and [h_{αδ}, G_iG_j(Δ)] in closed form."""
    n = int(params["n"])
    lqw = ctx.lqw
    diagonal = ctx.ring.diagonal(0, 1, 2)
    for alpha in ctx.divisors():
        h_ad = ctx.operators.op_h_alpha_delta(alpha, n)
        for d in range(2, ctx.config.d_max + 1):
            ctx.expect_operators(
                bracket(h_ad, lqw.op_G(d, ctx.one(), n)),
                lqw.h_alpha_delta_on_G_one(alpha, d, n),
                n,
                describe(n=n, d=d, a=alpha, g="1"),
            )
            ctx.expect_operators(
                bracket(h_ad, lqw.op_G(d, ctx.point(), n)),
                lqw.h_alpha_delta_on_G_point(alpha, d, n),
                n,
                describe(n=n, d=d, a=alpha, g="c"),
            )
        for i, j in itertools.product((2, 3), repeat=2):
            ctx.expect_operators(
                bracket(h_ad, lqw.op_mult_universal((i, j), diagonal, n)),
                lqw.h_alpha_delta_on_G_pair(alpha, i, j, n),
                n,
                describe(n=n, i=i, j=j, a=alpha),
            )


# ---------------------------------------------------------------------- word identities


@registry.register(CheckCatalogue.COMMUTATORS_CONTRACTION, levels(1))
def check_contraction(ctx: VerifyContext, params: CheckParams) -> None:
    """Contracting one annihilator into a diagonal word."""
    n = int(params["n"])
    classes = ctx.surface_basis(1)
    for d in range(ctx.config.word_length_max):
        for x, y, gamma in itertools.product(classes, repeat=3):
            ctx.expect_words(
                ctx.claims.contraction_claim(x, y, gamma, d, n),
                describe(n=n, d=d, x=x, y=y, g=gamma),
            )


@registry.register(CheckCatalogue.COMMUTATORS_WEIGHTED_CONTRACTION, levels(1))
def check_weighted_contraction(ctx: VerifyContext, params: CheckParams) -> None:
    """The weighted contraction on the c-line."""
    n = int(params["n"])
    classes = ctx.surface_basis(1)
    for d in range(2, ctx.config.word_length_max + 2):
        for x, y, gamma in itertools.product(classes, repeat=3):
            ctx.expect_words(
                ctx.claims.weighted_contraction_claim(x, y, gamma, d, n),
                describe(n=n, d=d, x=x, y=y, g=gamma),
            )


@registry.register(CheckCatalogue.COMMUTATORS_POINT_LINES, levels(1))
def check_point_lines(ctx: VerifyContext, params: CheckParams) -> None:
    """The two c-lines of the h_{αδ} expansion."""
    n = int(params["n"])
    for d in range(3, ctx.config.word_length_max + 2):
        for alpha in ctx.divisors():
            for gamma in ctx.surface_basis(1):
                ctx.expect_words(
                    ctx.claims.point_line_claim(alpha, gamma, d, n),
                    describe(n=n, d=d, a=alpha, g=gamma),
                )


@registry.register(CheckCatalogue.COMMUTATORS_VIRASORO_BLOCKS, levels(1))
def check_virasoro_blocks(ctx: VerifyContext, params: CheckParams) -> None:
    """Normal ordering of Virasoro blocks against diagonal words."""
    n = int(params["n"])
    classes = ctx.surface_basis(1)
    for d in range(1, ctx.config.word_length_max):
        for x, y in itertools.product(classes, repeat=2):
            for gamma in (ctx.one(), ctx.point()):
                sides = ctx.claims.virasoro_claim(x, y, gamma, d, n)
                ctx.expect_operators(
                    sides.lhs, sides.rhs, n, describe(n=n, d=d, x=x, y=y, g=gamma)
                )


@registry.register(CheckCatalogue.COMMUTATORS_WEIGHTED_VIRASORO_BLOCKS, levels(1))
def check_weighted_virasoro_blocks(ctx: VerifyContext, params: CheckParams) -> None:
    """The weighted Virasoro block identity."""
    n = int(params["n"])
    classes = ctx.surface_basis(1)
    for d in range(3, ctx.config.word_length_max + 2):
        for x, y in itertools.product(classes, repeat=2):
            sides = ctx.claims.weighted_virasoro_claim(x, y, ctx.one(), d, n)
            ctx.expect_operators(sides.lhs, sides.rhs, n, describe(n=n, d=d, x=x, y=y))


# ---------------------------------------------------------------------- A_k and B_k


@registry.register(CheckCatalogue.COMMUTATORS_FORM_DIFFERENCE, _form_grid(3))
def check_form_difference(ctx: VerifyContext, params: CheckParams) -> None:
    """A_k(γ) − (k − 2)B_k(γ) = Δ_{1…k}(α₁∫γ + ∫αγ)."""
    k = int(params["k"])
    for alpha in ctx.divisors():
        for gamma in ctx.surface_basis(1):
            ctx.expect_classes(
                ctx.claims.form_difference(k, alpha, gamma), describe(k=k, a=alpha, g=gamma)
            )


@registry.register(CheckCatalogue.COMMUTATORS_FORMS_ON_POINT, _form_grid(2))
def check_forms_on_point(ctx: VerifyContext, params: CheckParams) -> None:
    """A_k and B_k on γc."""
    k = int(params["k"])
    for alpha in ctx.divisors():
        for gamma in ctx.surface_basis(1):
            if k >= 3:
                ctx.expect_classes(
                    ctx.claims.form_A_point(k, alpha, gamma),
                    describe(form="A", k=k, a=alpha, g=gamma),
                )
            ctx.expect_classes(
                ctx.claims.form_B_point(k, alpha, gamma),
                describe(form="B", k=k, a=alpha, g=gamma),
            )


@registry.register(CheckCatalogue.COMMUTATORS_FORMS_CLOSED, _form_grid(3))
def check_forms_closed(ctx: VerifyContext, params: CheckParams) -> None:
    """A_k and B_k against their closed forms."""
    k = int(params["k"])
    for alpha in ctx.divisors():
        for gamma in ctx.surface_basis(1):
            ctx.expect_classes(
                ctx.claims.form_A_closed(k, alpha, gamma),
                describe(form="A", k=k, a=alpha, g=gamma),
            )
            ctx.expect_classes(
                ctx.claims.form_B_closed(k, alpha, gamma),
                describe(form="B", k=k, a=alpha, g=gamma),
            )
