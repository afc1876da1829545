"""Runs registered checks over their parameter grids and assembles reports.

Importing this module registers every check: each ``*_checks`` module attaches
its functions to `registry` at import time.
"""

import csv
import io
import logging
import time

from src.core.exceptions import EngineException
from src.core.utils.excel_utils import export_to_excel
from src.modules.operators.operators_service import OperatorCatalogue

from . import (  # noqa: F401
    chern_checks,
    commutator_checks,
    derivation_checks,
    fock_checks,
    llv_checks,
    lqw_checks,
    projector_checks,
    ring_checks,
)
from .verify_context import IdentityViolationException, VerifyContext
from .verify_model import (
    CheckCatalogue,
    CheckParams,
    CheckResult,
    CheckStatus,
    Report,
    SuiteConfig,
    TableRow,
    Witness,
)
from .verify_registry import CheckDefinition, registry

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ("n", "i", "s", "dimension")


class VerifyService:
    """Evaluates the checks selected by a `SuiteConfig`.

    One `VerifyContext` is built per service, so every check of a run shares the
    same ring, Fock space and operator caches.
    """

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.ctx = VerifyContext(config)

    def _result(
        self,
        entry: CheckCatalogue,
        params: CheckParams,
        status: CheckStatus,
        witness: Witness | None = None,
        millis: int = 0,
    ) -> CheckResult:
        return CheckResult(
            id=entry.check_id,
            eq_anchor=entry.anchor,
            suite=entry.suite,
            params=params,
            status=status,
            witness=witness,
            millis=millis if self.config.timings else 0,
        )

    def run_check(self, definition: CheckDefinition, params: CheckParams) -> CheckResult:
        """Run one check at one parameter point.

        A violated identity is reported with its witness. Any other engine error
        raised while evaluating is reported as a failure carrying its message.
        """
        entry = definition.entry
        started = time.perf_counter()
        try:
            definition.run(self.ctx, params)
        except IdentityViolationException as e:
            status, witness = CheckStatus.FAIL, e.witness
        except EngineException as e:
            logger.exception("Check %s raised at %s", entry.check_id, params)
            status, witness = CheckStatus.FAIL, Witness(instance=str(params), detail=str(e))
        else:
            status, witness = CheckStatus.PASS, None
        millis = round((time.perf_counter() - started) * 1000)
        logger.debug("%s %s: %s in %dms", entry.check_id, params, status.value, millis)
        return self._result(entry, params, status, witness, millis)

    def run_suite(self) -> Report:
        """Run every check of the selected suites and return the sorted report."""
        results: list[CheckResult] = []
        for suite in self.config.suites:
            definitions = registry.for_suites([suite])
            logger.info(
                "Running suite %s (%s), %d checks", suite.code, suite.value, len(definitions)
            )
            for definition in definitions:
                grid = definition.grid(self.config)
                if not grid:
                    results.append(self._result(definition.entry, {}, CheckStatus.SKIPPED))
                    continue
                results.extend(self.run_check(definition, params) for params in grid)
        results.sort(key=lambda result: result.sort_key)
        report = Report(results=results)
        logger.info("Run finished: %s", report.counts())
        return report

    # ------------------------------------------------------------------ tables

    def emit_tables(self) -> list[TableRow]:
        """Return the bigraded dimensions dim A^i(Hilbₙ)_{(s)} for n = 0 … n_max."""
        rows: list[TableRow] = []
        for n in range(self.config.n_max + 1):
            cells = self.ctx.projectors.bigraded_dimensions(n)
            rows.extend(
                TableRow(n=n, i=i, s=s, dimension=dimension)
                for (i, s), dimension in sorted(cells.items())
            )
        return rows

    @staticmethod
    def tables_to_csv(rows: list[TableRow]) -> str:
        """Render table rows as CSV with an ``n,i,s,dimension`` header."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        writer.writerows((row.n, row.i, row.s, row.dimension) for row in rows)
        return buffer.getvalue()

    @staticmethod
    def tables_to_text(rows: list[TableRow]) -> str:
        """Render one aligned block per n, rows indexed by codimension and columns by s."""
        blocks: list[str] = []
        for n in sorted({row.n for row in rows}):
            cells = {(row.i, row.s): row.dimension for row in rows if row.n == n}
            codims = sorted({i for i, _ in cells})
            shifts = sorted({s for _, s in cells})
            lines = [f"n={n}", "i\\s " + " ".join(f"{s:>5}" for s in shifts)]
            for i in codims:
                values = " ".join(f"{cells.get((i, s), 0):>5}" for s in shifts)
                lines.append(f"{i:>3} {values}")
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"

    @staticmethod
    def tables_to_excel(rows: list[TableRow]) -> bytes:
        """Render table rows as a one-sheet workbook."""
        return export_to_excel(
            sheet_name="Bigraded dimensions",
            field_map={
                "n": lambda row: row.n,
                "i": lambda row: row.i,
                "s": lambda row: row.s,
                "dimension": lambda row: row.dimension,
            },
            rows=rows,
        )


def catalogue_lines() -> list[str]:
    """Return the check catalogue followed by the operator catalogue, one entry per line.

    Check lines carry id, suite code and formula anchor; operator lines carry the
    constructor name, its formula and its truncation bound.
    """
    lines = [entry.to_text() for entry in CheckCatalogue]
    lines.extend("\t".join(op.value) for op in OperatorCatalogue)
    return lines
