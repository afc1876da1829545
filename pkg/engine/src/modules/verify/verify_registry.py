from collections.abc import Callable, Iterable
from dataclasses import dataclass

from src.core.exceptions import NotFoundException

from .verify_context import VerifyContext
from .verify_model import CheckCatalogue, CheckParams, Suite, SuiteConfig

type CheckFunction = Callable[[VerifyContext, CheckParams], None]
type ParamGrid = Callable[[SuiteConfig], list[CheckParams]]


class CheckNotRegisteredException(NotFoundException):
    """Raised when a catalogue entry has no implementing check."""

    def __init__(self, entry: CheckCatalogue):
        super().__init__(f"Check {entry.check_id} has no implementation")


def levels(min_n: int = 1, max_n: int | None = None) -> ParamGrid:
    """Grid over n = min_n … n_max, optionally capped at ``max_n``."""

    def grid(config: SuiteConfig) -> list[CheckParams]:
        top = config.n_max if max_n is None else min(config.n_max, max_n)
        return [{"n": n} for n in range(min_n, top + 1)]

    return grid


def once(config: SuiteConfig) -> list[CheckParams]:
    """A single parameter-free run."""
    return [{}]


@dataclass(frozen=True, slots=True)
class CheckDefinition:
    """A registered check with the function that runs it and its parameter grid."""

    entry: CheckCatalogue
    run: CheckFunction
    grid: ParamGrid


class CheckRegistry:
    """Maps catalogue entries to the functions that verify them."""

    def __init__(self):
        self._checks: dict[CheckCatalogue, CheckDefinition] = {}

    def register(
        self, entry: CheckCatalogue, grid: ParamGrid = once
    ) -> Callable[[CheckFunction], CheckFunction]:
        """Decorator registering ``fn`` as the implementation of ``entry``.

        Args:
            entry: Catalogue entry the function verifies.
            grid: Produces one parameter dict per reported instance; an empty grid
                reports the check as skipped.
        """

        def decorator(fn: CheckFunction) -> CheckFunction:
            if entry in self._checks:
                raise ValueError(f"{entry.check_id} is registered twice")
            self._checks[entry] = CheckDefinition(entry, fn, grid)
            return fn

        return decorator

    def __contains__(self, entry: CheckCatalogue) -> bool:
        return entry in self._checks

    def get(self, entry: CheckCatalogue) -> CheckDefinition:
        """Return the definition of a catalogue entry."""
        definition = self._checks.get(entry)
        if definition is None:
            raise CheckNotRegisteredException(entry)
        return definition

    def for_suites(self, suites: Iterable[Suite]) -> list[CheckDefinition]:
        """Return the definitions of the selected suites in catalogue order."""
        selected = set(suites)
        return [self.get(entry) for entry in CheckCatalogue if entry.suite in selected]


registry = CheckRegistry()
