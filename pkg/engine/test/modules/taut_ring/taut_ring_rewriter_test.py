import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from src.modules.taut_ring.taut_ring_model import POINT, Monomial, divisor_label
from src.modules.taut_ring.taut_ring_rewriter import (
    RawTerm,
    RewriteRule,
    Strategy,
    contract,
    find_redexes,
    rewrite_product,
)
from src.modules.taut_ring.taut_ring_service import TautologicalRing


class TestRedexes:
    def test_canonical_term_has_no_redex(self):
        term = RawTerm(Fraction(1), ((0, 1),), ((2, POINT),))
        assert find_redexes(term) == []

    def test_every_rule_is_found(self):
        term = RawTerm(
            Fraction(1),
            ((0, 1), (0, 1), (1, 2)),
            ((0, POINT), (3, POINT), (3, divisor_label(0))),
        )
        rules = {redex.rule for redex in find_redexes(term)}
        assert rules == set(RewriteRule)

    def test_rule_codes(self):
        assert [rule.value for rule in RewriteRule] == ["R1", "R2", "R3", "R4"]
        assert all(rule.description for rule in RewriteRule)

    def test_label_product_contracts_to_gram_entry(self, ring: TautologicalRing):
        alpha = divisor_label(0)
        term = RawTerm(Fraction(1), (), ((0, alpha), (0, alpha)))
        (redex,) = find_redexes(term)
        assert contract(ring, term, redex) == [RawTerm(Fraction(2), (), ((0, POINT),))]

    def test_vanishing_label_product_drops_term(self, ring: TautologicalRing):
        term = RawTerm(Fraction(1), (), ((0, POINT), (0, POINT)))
        (redex,) = find_redexes(term)
        assert contract(ring, term, redex) == []


class TestConfluence:
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_all_products_in_arity_two(self, ring: TautologicalRing, strategy: Strategy):
        basis = ring.canonical_basis(2)
        for x, y in itertools.product(basis, repeat=2):
            expected = ring.from_monomial(x) * ring.from_monomial(y)
            assert rewrite_product(ring, x, y, strategy, seed=7) == expected, (x, y)

    @given(data=st.data(), seed=st.integers(min_value=0, max_value=10_000))
    def test_random_strategy_in_arity_four(
        self, ring: TautologicalRing, data: st.DataObject, seed: int
    ):
        basis = ring.canonical_basis(4)
        x: Monomial = data.draw(st.sampled_from(basis))
        y: Monomial = data.draw(st.sampled_from(basis))
        expected = ring.from_monomial(x) * ring.from_monomial(y)
        assert rewrite_product(ring, x, y, Strategy.RANDOM, seed) == expected

    @given(data=st.data())
    def test_hyperbolic_lattice(self, hyperbolic_ring: TautologicalRing, data: st.DataObject):
        basis = hyperbolic_ring.canonical_basis(3)
        x = data.draw(st.sampled_from(basis))
        y = data.draw(st.sampled_from(basis))
        expected = hyperbolic_ring.from_monomial(x) * hyperbolic_ring.from_monomial(y)
        for strategy in Strategy:
            assert rewrite_product(hyperbolic_ring, x, y, strategy, 3) == expected
