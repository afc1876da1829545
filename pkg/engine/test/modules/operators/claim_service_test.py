import pytest
from src.modules.operators.claim_service import ClaimRangeException, ClaimService
from src.modules.operators.operators_model import Sides
from src.modules.taut_ring.taut_ring_model import SurfaceClass
from src.modules.taut_ring.taut_ring_service import TautologicalRing


class TestClaimService:
    claims: ClaimService
    ring: TautologicalRing

    @pytest.fixture(autouse=True)
    def _setup(self, claim_service: ClaimService):
        self.claims = claim_service
        self.ring = claim_service.ring

    def assert_sides(self, sides: Sides[SurfaceClass]) -> None:
        assert sides.lhs == sides.rhs, f"{sides.lhs.to_text()} != {sides.rhs.to_text()}"

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_small_diagonal_corollary(self, k: int):
        self.assert_sides(self.claims.small_diagonal_corollary(k))

    def test_small_diagonal_corollary_in_two_points(self):
        _, rhs = self.claims.small_diagonal_corollary(2)
        assert rhs == self.ring.point(0, 2) + self.ring.point(1, 2)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_bar_closed_form(self, k: int):
        for gamma in self.ring.basis_classes(1):
            self.assert_sides(self.claims.bar_claim(k, gamma))

    def test_bar_of_unit(self):
        lhs, _ = self.claims.bar_claim(1, self.ring.one(1))
        assert lhs == self.ring.one(1).scale(-1)

    @pytest.mark.parametrize("name", ["one", "divisor", "point"])
    def test_summand_criterion(self, name: str):
        gamma = {
            "one": self.ring.one(1),
            "divisor": self.ring.divisor(0, 0, 1),
            "point": self.ring.point(0, 1),
        }[name]
        self.assert_sides(self.claims.summand_criterion(gamma))

    def test_summand_classes(self):
        arities = [cls.arity for cls in self.claims.summand_classes()]
        assert arities == [1, 1, 1, 2, 2]

    def test_h_tilde_transform_of_point(self):
        point = self.ring.point(0, 1)
        assert self.claims.h_tilde_transform((2,), point) == point.scale(2)

    def test_form_B_on_point_class(self):
        alpha = self.ring.divisor(0, 0, 1)
        self.assert_sides(self.claims.form_B_point(2, alpha, self.ring.one(1)))

    def test_range_errors(self):
        with pytest.raises(ClaimRangeException, match=">= 2"):
            self.claims.small_diagonal_corollary(1)
        with pytest.raises(ClaimRangeException, match=">= 1"):
            self.claims.bar_claim(0, self.ring.one(1))

    def test_form_ranges(self):
        alpha = self.ring.divisor(0, 0, 1)
        with pytest.raises(ClaimRangeException):
            self.claims.form_A(2, alpha, self.ring.one(1))
        with pytest.raises(ClaimRangeException):
            self.claims.form_B(1, alpha, self.ring.one(1))
        with pytest.raises(ClaimRangeException):
            self.claims.spread_pairs(2, alpha, alpha)
