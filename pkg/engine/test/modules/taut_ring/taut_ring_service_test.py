from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from src.modules.taut_ring.taut_ring_codec import parse_class
from src.modules.taut_ring.taut_ring_model import (
    POINT,
    ArityMismatchException,
    DivisorLattice,
    Monomial,
    SurfaceClass,
    divisor_label,
    euler_characteristic,
)
from src.modules.taut_ring.taut_ring_service import (
    InvalidLabelException,
    NonInjectiveMapException,
    RewriteRules,
    TautologicalRing,
)


def classes(ring: TautologicalRing, arity: int) -> st.SearchStrategy[SurfaceClass]:
    """Random rational combinations of up to three canonical monomials."""
    basis = ring.canonical_basis(arity)
    term = st.tuples(
        st.sampled_from(basis), st.fractions(min_value=-3, max_value=3, max_denominator=3)
    )
    return st.lists(term, max_size=3).map(lambda terms: ring.from_terms(arity, terms))


class TestDivisorLattice:
    def test_default_is_degree_two(self):
        lattice = DivisorLattice()
        assert lattice.rank == 1
        assert lattice.pairing(0, 0) == 2

    @pytest.mark.parametrize(
        ("text", "rank"), [("2", 1), ("0 1; 1 0", 2), ("", 0), ("2 0 0; 0 -2 0; 0 0 -2", 3)]
    )
    def test_from_text(self, text: str, rank: int):
        lattice = DivisorLattice.from_text(text)
        assert lattice.rank == rank
        assert DivisorLattice.from_text(lattice.to_text()) == lattice

    def test_rational_entries(self):
        assert DivisorLattice.from_text("1/2").pairing(0, 0) == Fraction(1, 2)

    @pytest.mark.parametrize("text", ["0 1; 2 0", "1 2"])
    def test_malformed_gram_rejected(self, text: str):
        with pytest.raises(ValueError):
            DivisorLattice.from_text(text)


class TestMultiplicationRules:
    ring: TautologicalRing

    @pytest.fixture(autouse=True)
    def _setup(self, ring: TautologicalRing):
        self.ring = ring

    def parse(self, text: str, arity: int) -> SurfaceClass:
        return parse_class(self.ring, text, arity)

    def test_diagonal_absorbs_point(self):
        product = self.ring.diagonal(0, 1, 2) * self.ring.point(0, 2)
        assert product == self.parse("c_1*c_2", 2)

    def test_diagonal_transfers_divisor(self):
        product = self.ring.diagonal(0, 1, 2) * self.ring.divisor(0, 0, 2)
        assert product == self.parse("a1_1*c_2 + a1_2*c_1", 2)

    def test_point_squared_vanishes(self):
        point = self.ring.point(0, 1)
        assert point * point == self.ring.zero(1)

    def test_point_times_divisor_vanishes(self):
        assert self.ring.point(0, 1) * self.ring.divisor(0, 0, 1) == self.ring.zero(1)

    def test_divisor_square_is_gram_entry(self):
        alpha = self.ring.divisor(0, 0, 1)
        assert alpha * alpha == self.ring.point(0, 1).scale(2)

    def test_diagonal_self_intersection(self):
        diagonal = self.ring.diagonal(0, 1, 2)
        assert diagonal * diagonal == self.parse("24*c_1*c_2", 2)

    def test_diagonal_self_intersection_degree_is_euler_characteristic(self):
        square = self.ring.diagonal(0, 1, 2) * self.ring.diagonal(0, 1, 2)
        euler = euler_characteristic()
        assert self.ring.pushforward(square, (0, 1)) == self.ring.one(0).scale(euler)
        assert square == self.ring.product_of_points((0, 1), 2).scale(euler)

    def test_chain_of_diagonals_is_small_diagonal(self):
        chain = self.ring.diagonal(0, 1, 3) * self.ring.diagonal(1, 2, 3)
        assert chain == self.ring.small_diagonal((0, 1, 2), 3)

    def test_small_diagonal_closed_form(self):
        expected = self.parse(
            "D(1,2)*c_3 + D(1,3)*c_2 + D(2,3)*c_1 - c_1*c_2 - c_1*c_3 - c_2*c_3", 3
        )
        assert self.ring.small_diagonal((0, 1, 2), 3) == expected

    def test_small_diagonal_of_one_index_is_unit(self):
        assert self.ring.small_diagonal((1,), 2) == self.ring.one(2)

    def test_triangle_of_diagonals(self):
        """Δ₁₂Δ₂₃Δ₁₃ carries a cycle, so it equals Δ₁₂₃ times the self-intersection."""
        triangle = (
            self.ring.diagonal(0, 1, 3) * self.ring.diagonal(1, 2, 3) * self.ring.diagonal(0, 2, 3)
        )
        assert triangle == self.parse("24*c_1*c_2*c_3", 3)

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatchException):
            self.ring.one(1) * self.ring.one(2)

    def test_divisor_outside_lattice(self):
        with pytest.raises(InvalidLabelException):
            self.ring.divisor(1, 0, 1)

    def test_scalar_multiplication(self):
        point = self.ring.point(0, 1)
        assert 3 * point == point.scale(3) == point * 3
        assert point.scale(0) == self.ring.zero(1)


class TestHyperbolicLattice:
    def test_isotropic_divisors(self, hyperbolic_ring: TautologicalRing):
        first = hyperbolic_ring.divisor(0, 0, 1)
        second = hyperbolic_ring.divisor(1, 0, 1)
        assert first * first == hyperbolic_ring.zero(1)
        assert first * second == hyperbolic_ring.point(0, 1)
        assert hyperbolic_ring.pairing(first, second) == 1


class TestIndexMaps:
    ring: TautologicalRing

    @pytest.fixture(autouse=True)
    def _setup(self, ring: TautologicalRing):
        self.ring = ring

    def test_pullback_moves_point(self):
        assert self.ring.pullback(self.ring.point(0, 1), (1,), 2) == self.ring.point(1, 2)

    def test_pullback_moves_diagonal(self):
        moved = self.ring.pullback(self.ring.diagonal(0, 1, 2), (0, 2), 3)
        assert moved == self.ring.diagonal(0, 2, 3)

    def test_pullback_relabels(self):
        cls = parse_class(self.ring, "a1_1*c_2", 2)
        assert self.ring.pullback(cls, (1, 0), 2) == parse_class(self.ring, "a1_2*c_1", 2)

    def test_pullback_rejects_non_injective_map(self):
        with pytest.raises(NonInjectiveMapException):
            self.ring.pullback(self.ring.one(2), (0, 0), 2)

    def test_pullback_rejects_short_map(self):
        with pytest.raises(ArityMismatchException):
            self.ring.pullback(self.ring.one(2), (0,), 2)

    @pytest.mark.parametrize(
        ("text", "expected"), [("c_1", "1"), ("a1_1", "0"), ("1", "0")]
    )
    def test_pushforward_single_factor(self, text: str, expected: str):
        pushed = self.ring.pushforward(parse_class(self.ring, text, 1), (0,))
        assert pushed == parse_class(self.ring, expected, 0)

    @pytest.mark.parametrize("gamma", ["1", "a1_1", "c_1"])
    def test_integrating_against_diagonal_returns_class(self, gamma: str):
        """∫_• Δ₁•γ_• = γ₁."""
        cls = parse_class(self.ring, gamma, 1)
        moved = self.ring.pullback(cls, (1,), 2)
        pushed = self.ring.pushforward(self.ring.diagonal(0, 1, 2) * moved, (1,))
        assert pushed == cls

    def test_pushforward_renumbers_survivors(self):
        cls = parse_class(self.ring, "c_1*a1_3", 3)
        assert self.ring.pushforward(cls, (0,)) == parse_class(self.ring, "a1_2", 2)

    @pytest.mark.parametrize(
        ("text", "arity", "value"),
        [("5*c_1*c_2", 2, 5), ("a1_1*c_2", 2, 0), ("D(1,2)", 2, 0), ("c_1", 1, 1)],
    )
    def test_integrate_all(self, text: str, arity: int, value: int):
        assert self.ring.integrate_all(parse_class(self.ring, text, arity)) == value

    @pytest.mark.parametrize(
        ("a", "b", "value"), [("1", "c_1", 1), ("a1_1", "a1_1", 2), ("a1_1", "1", 0)]
    )
    def test_pairing(self, a: str, b: str, value: int):
        left, right = parse_class(self.ring, a, 1), parse_class(self.ring, b, 1)
        assert self.ring.pairing(left, right) == value

    def test_pairing_requires_surface_classes(self):
        with pytest.raises(ArityMismatchException):
            self.ring.pairing(self.ring.one(2), self.ring.one(1))

    def test_transpose_swaps_blocks(self):
        cls = parse_class(self.ring, "c_1*a1_3", 3)
        assert self.ring.transpose(cls, 1, 2) == parse_class(self.ring, "a1_2*c_3", 3)

    def test_symmetrize_averages(self):
        symmetric = self.ring.symmetrize(self.ring.point(0, 2), [(0, 1)])
        assert symmetric == parse_class(self.ring, "1/2*c_1 + 1/2*c_2", 2)

    def test_orbit_representative(self):
        monomial = Monomial.build(2, (), ((1, POINT),))
        representative = self.ring.orbit_representative(monomial, [(0, 1)])
        assert representative == Monomial.build(2, (), ((0, POINT),))


class TestCanonicalBasis:
    @pytest.mark.parametrize(("arity", "size"), [(0, 1), (1, 3), (2, 10), (3, 36)])
    def test_sizes_rank_one(self, ring: TautologicalRing, arity: int, size: int):
        assert len(ring.canonical_basis(arity)) == size

    def test_sizes_rank_two(self, hyperbolic_ring: TautologicalRing):
        assert len(hyperbolic_ring.canonical_basis(1)) == 4
        assert len(hyperbolic_ring.canonical_basis(2)) == 17

    def test_ordered_by_codimension(self, ring: TautologicalRing):
        codims = [m.codim for m in ring.canonical_basis(2)]
        assert codims == sorted(codims)

    def test_matched_indices_carry_no_label(self, ring: TautologicalRing):
        for monomial in ring.canonical_basis(3):
            matched = {i for pair in monomial.pairs for i in pair}
            assert not matched & {i for i, _ in monomial.labels}


class TestBarCalculus:
    ring: TautologicalRing

    @pytest.fixture(autouse=True)
    def _setup(self, ring: TautologicalRing):
        self.ring = ring

    @pytest.mark.parametrize(("text", "factor"), [("1", -1), ("a1_1", 0), ("c_1", 1)])
    def test_bar_scales_surface_classes(self, text: str, factor: int):
        cls = parse_class(self.ring, text, 1)
        assert self.ring.bar(cls, (0,)) == cls.scale(factor)

    def test_double_bar_of_unit_vanishes(self):
        alpha = divisor_label(0)
        assert self.ring.double_bar(self.ring.one(1), (0,), alpha, alpha) == self.ring.zero(1)

    def test_double_bar_is_antisymmetric(self, hyperbolic_ring: TautologicalRing):
        first, second = divisor_label(0), divisor_label(1)
        cls = hyperbolic_ring.divisor(0, 0, 1)
        forward = hyperbolic_ring.double_bar(cls, (0,), first, second)
        backward = hyperbolic_ring.double_bar(cls, (0,), second, first)
        assert forward == -backward


class TestRingLaws:
    """Property tests over random combinations of canonical monomials."""

    @given(data=st.data(), arity=st.integers(min_value=1, max_value=4))
    def test_commutative(self, ring: TautologicalRing, data: st.DataObject, arity: int):
        x = data.draw(classes(ring, arity))
        y = data.draw(classes(ring, arity))
        assert x * y == y * x

    @pytest.mark.slow
    @given(data=st.data(), arity=st.integers(min_value=1, max_value=4))
    def test_associative(self, ring: TautologicalRing, data: st.DataObject, arity: int):
        x, y, z = (data.draw(classes(ring, arity)) for _ in range(3))
        assert (x * y) * z == x * (y * z)

    @given(data=st.data(), arity=st.integers(min_value=1, max_value=3))
    def test_distributive(self, ring: TautologicalRing, data: st.DataObject, arity: int):
        x, y, z = (data.draw(classes(ring, arity)) for _ in range(3))
        assert x * (y + z) == x * y + x * z

    @given(data=st.data(), arity=st.integers(min_value=1, max_value=2))
    def test_projection_formula(self, ring: TautologicalRing, data: st.DataObject, arity: int):
        a = data.draw(classes(ring, arity))
        b = data.draw(classes(ring, arity + 1))
        lifted = ring.pullback(a, range(arity), arity + 1)
        assert ring.pushforward(lifted * b, (arity,)) == a * ring.pushforward(b, (arity,))

    @given(data=st.data())
    def test_symmetrize_idempotent(self, ring: TautologicalRing, data: st.DataObject):
        x = data.draw(classes(ring, 3))
        once = ring.symmetrize(x, [(0, 1, 2)])
        assert ring.symmetrize(once, [(0, 1, 2)]) == once

    @given(data=st.data())
    def test_hyperbolic_commutative(self, hyperbolic_ring: TautologicalRing, data: st.DataObject):
        x = data.draw(classes(hyperbolic_ring, 2))
        y = data.draw(classes(hyperbolic_ring, 2))
        assert x * y == y * x


class TestRewriteRules:
    def test_flipped_divisor_transfer(self, lattice: DivisorLattice):
        ring = TautologicalRing(lattice, RewriteRules(divisor_transfer_sign=-1))
        product = ring.diagonal(0, 1, 2) * ring.divisor(0, 0, 2)
        assert product == parse_class(ring, "-a1_1*c_2 - a1_2*c_1", 2)

    def test_self_intersection_constant(self, lattice: DivisorLattice):
        ring = TautologicalRing(lattice, RewriteRules(diagonal_self_intersection=2))
        diagonal = ring.diagonal(0, 1, 2)
        assert diagonal * diagonal == ring.product_of_points((0, 1), 2).scale(2)

    def test_perturbed_self_intersection_misses_euler_characteristic(
        self, lattice: DivisorLattice
    ):
        ring = TautologicalRing(lattice, RewriteRules(diagonal_self_intersection=23))
        square = ring.diagonal(0, 1, 2) * ring.diagonal(0, 1, 2)
        assert ring.pushforward(square, (0, 1)) != ring.one(0).scale(euler_characteristic())


class TestEulerCharacteristic:
    def test_k3(self):
        assert euler_characteristic() == 24

    @pytest.mark.parametrize(
        ("betti", "euler"),
        [((1, 0, 1), 2), ((1, 2, 1), 0), ((1, 4, 6, 4, 1), 0), ((1, 0, 10, 0, 1), 12)],
    )
    def test_alternating_sum(self, betti: tuple[int, ...], euler: int):
        assert euler_characteristic(betti) == euler
