import pytest
from src.modules.fock.fock_service import FockSpace
from src.modules.operators.lqw_service import InvalidUniversalDegreeException, LQWService
from src.modules.operators.operators_model import ZeroOp
from src.modules.taut_ring.taut_ring_model import ArityMismatchException
from src.modules.taut_ring.taut_ring_service import TautologicalRing

from test.modules.operators.operator_utils import OperatorTestUtils


class TestLQWService:
    lqw: LQWService
    space: FockSpace
    ring: TautologicalRing
    utils: OperatorTestUtils

    @pytest.fixture(autouse=True)
    def _setup(self, lqw_service: LQWService, operator_utils: OperatorTestUtils):
        self.lqw = lqw_service
        self.space = lqw_service.space
        self.ring = lqw_service.ring
        self.utils = operator_utils

    @pytest.mark.parametrize("d", [0, 1])
    def test_low_degrees_vanish(self, d: int):
        assert isinstance(self.lqw.op_G(d, self.ring.one(1), 2), ZeroOp)
        assert self.lqw.op_G_slotted(d, 2).opens_slot

    @pytest.mark.parametrize("n", [1, 2])
    def test_G_two_of_one_counts_points(self, n: int):
        self.utils.assert_scalar(self.lqw.op_G(2, self.ring.one(1), n), n, n)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_universal_class_of_degree_two(self, n: int):
        univ = self.lqw.universal_class((2,), self.ring.one(1), n)
        assert univ == self.space.one_n(n).scale(n)

    @pytest.mark.parametrize("n", [1, 2])
    def test_product_form_agrees_with_single_operator(self, n: int):
        point = self.ring.point(0, 1)
        single = self.lqw.op_G(3, point, n)
        product = self.lqw.op_mult_universal((3,), point, n)
        self.utils.assert_same_operator(single, product, n)

    def test_universal_product_with_low_degree_vanishes(self):
        op = self.lqw.op_mult_universal((2, 1), self.ring.diagonal(0, 1, 2), 2)
        assert isinstance(op, ZeroOp)

    def test_arity_must_match_degrees(self):
        with pytest.raises(ArityMismatchException):
            self.lqw.op_mult_universal((2, 2), self.ring.one(1), 2)

    @pytest.mark.parametrize("d", [-1, -3])
    def test_negative_degree(self, d: int):
        with pytest.raises(InvalidUniversalDegreeException):
            self.lqw.op_G(d, self.ring.one(1), 1)
        with pytest.raises(InvalidUniversalDegreeException):
            self.lqw.op_J(0, d, self.ring.one(1), 1)
        with pytest.raises(InvalidUniversalDegreeException):
            self.lqw.op_G_slotted(d, 1)

    def test_J_zero_one_is_minus_L_zero(self):
        one = self.ring.one(1)
        lhs = self.lqw.op_J(0, 1, one, 2)
        rhs = self.lqw.operators.op_L(0, one, 2).scale(-1)
        self.utils.assert_same_operator(lhs, rhs, 2)

    @pytest.mark.parametrize("n", [1, 2])
    def test_rank_of_tangent_bundle(self, n: int):
        assert self.lqw.chern_character(0, n) == self.space.one_n(n).scale(2 * n)

    @pytest.mark.parametrize(("k", "n"), [(1, 2), (3, 1)])
    def test_odd_chern_characters_vanish(self, k: int, n: int):
        assert not self.lqw.chern_character(k, n)

    def test_G_operators_commute(self):
        one = self.ring.one(1)
        point = self.ring.point(0, 1)
        g2 = self.lqw.op_G(2, point, 2)
        g3 = self.lqw.op_G(3, one, 2)
        self.utils.assert_same_operator(g2 @ g3, g3 @ g2, 2)
