from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from src.modules.fock.fock_service import FockSpace
from src.modules.operators.claim_service import ClaimService
from src.modules.operators.lqw_service import LQWService
from src.modules.operators.operators_service import OperatorService
from src.modules.operators.projector_service import ProjectorService
from src.modules.taut_ring.taut_ring_model import DivisorLattice
from src.modules.taut_ring.taut_ring_service import TautologicalRing

from test.modules.operators.operator_utils import OperatorTestUtils

settings.register_profile(
    "engine",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("engine")

# =================================== Lattices ======================================


@pytest.fixture()
def lattice() -> DivisorLattice:
    """The default lattice: one divisor of square 2."""
    return DivisorLattice()


@pytest.fixture()
def hyperbolic_lattice() -> DivisorLattice:
    """Rank-2 hyperbolic plane, Gram matrix (0 1; 1 0)."""
    return DivisorLattice(gram=((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))))


# =================================== Services ======================================


@pytest.fixture()
def ring(lattice: DivisorLattice) -> TautologicalRing:
    return TautologicalRing(lattice)


@pytest.fixture()
def hyperbolic_ring(hyperbolic_lattice: DivisorLattice) -> TautologicalRing:
    return TautologicalRing(hyperbolic_lattice)


@pytest.fixture()
def space(ring: TautologicalRing) -> FockSpace:
    return FockSpace(ring)


@pytest.fixture()
def operator_service(space: FockSpace) -> OperatorService:
    return OperatorService(space)


@pytest.fixture()
def lqw_service(operator_service: OperatorService) -> LQWService:
    return LQWService(operator_service)


@pytest.fixture()
def claim_service(lqw_service: LQWService) -> ClaimService:
    return ClaimService(lqw_service)


@pytest.fixture()
def projector_service(operator_service: OperatorService) -> ProjectorService:
    return ProjectorService(operator_service)


# =================================== Test utils ====================================


@pytest.fixture()
def operator_utils(space: FockSpace) -> OperatorTestUtils:
    return OperatorTestUtils(space)
