import pytest
from src.modules.operators.operators_model import LinearCombination
from src.modules.operators.projector_service import ProjectorService
from src.modules.taut_ring.taut_ring_service import TautologicalRing

from test.modules.operators.operator_utils import OperatorTestUtils


class TestProjectorService:
    projectors: ProjectorService
    ring: TautologicalRing
    utils: OperatorTestUtils

    @pytest.fixture(autouse=True)
    def _setup(self, projector_service: ProjectorService, operator_utils: OperatorTestUtils):
        self.projectors = projector_service
        self.ring = projector_service.ring
        self.utils = operator_utils

    def test_transposed_components_sum_to_diagonal(self):
        total = self.ring.zero(2)
        for i in (-1, 0, 1):
            total = total + self.projectors.transposed_component(i)
        assert total == self.ring.diagonal(0, 1, 2)

    @pytest.mark.parametrize("i", [-2, 2, 5])
    def test_transposed_component_out_of_range(self, i: int):
        assert self.projectors.transposed_component(i) == self.ring.zero(2)

    @pytest.mark.parametrize("n", [1, 2])
    def test_diagonal_acts_as_identity(self, n: int):
        self.utils.assert_scalar(self.projectors.op_diagonal(n), 1, n)

    @pytest.mark.parametrize(("i", "n"), [(2, 1), (-2, 1), (3, 2)])
    def test_projector_out_of_range_vanishes(self, i: int, n: int):
        self.utils.assert_zero(self.projectors.op_projector(i, n), n)

    @pytest.mark.parametrize("i", [-2, -1, 0, 1, 2])
    def test_labelled_form_agrees(self, i: int):
        self.utils.assert_same_operator(
            self.projectors.op_projector(i, 2), self.projectors.op_projector_labelled(i, 2), 2
        )

    @pytest.mark.parametrize("n", [1, 2])
    def test_projectors_sum_to_diagonal(self, n: int):
        total = LinearCombination.total(
            self.projectors.op_projector(i, n) for i in range(-n, n + 1)
        )
        self.utils.assert_same_operator(total, self.projectors.op_diagonal(n), n)

    @pytest.mark.parametrize("i", [-1, 0, 1])
    def test_projectors_are_idempotent(self, i: int):
        p = self.projectors.op_projector(i, 1)
        self.utils.assert_same_operator(p @ p, p, 1)

    def test_surface_projectors_split_by_codimension(self):
        matrices = {i: self.utils.matrix(self.projectors.op_projector(i, 1), 1) for i in (-1, 0, 1)}
        assert [matrices[i].rank() for i in (-1, 0, 1)] == [1, 1, 1]

    @pytest.mark.parametrize(
        ("n", "expected"),
        [
            (0, {(0, 0): 1}),
            (1, {(0, 0): 1, (1, 0): 1, (2, 0): 1}),
        ],
    )
    def test_bigraded_dimensions(self, n: int, expected: dict[tuple[int, int], int]):
        assert self.projectors.bigraded_dimensions(n) == expected

    def test_bigraded_dimensions_add_up(self):
        dims = self.projectors.bigraded_dimensions(2)
        assert sum(dims.values()) == len(self.projectors.space.basis(2))
        assert all(s >= 0 for _, s in dims)

    def test_weight_decomposition_labels(self):
        blocks = self.projectors.weight_decomposition(1, (), graded=True)
        assert sorted((w.i, w.s, w.dimension) for w, _ in blocks) == [
            (0, 0, 1),
            (1, 0, 1),
            (2, 0, 1),
        ]
