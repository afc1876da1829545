import json

import pytest
from src.modules.operators.operators_service import OperatorCatalogue
from src.modules.verify.verify_model import (
    CheckCatalogue,
    CheckResult,
    CheckStatus,
    Fault,
    OutputFormat,
    Report,
    Suite,
    SuiteConfig,
    TableRow,
    Witness,
)
from src.modules.verify.verify_registry import (
    CheckNotRegisteredException,
    CheckRegistry,
    levels,
    registry,
)
from src.modules.verify.verify_service import VerifyService, catalogue_lines

# Bounds small enough for every suite to finish quickly.
SMALL = {
    "n_max": 1,
    "d_max": 3,
    "k_max": 3,
    "word_length_max": 1,
    "confluence_seeds": 2,
    "timings": False,
}

CHEAP_SUITES = [Suite.RING, Suite.HEISENBERG, Suite.DIAGONAL, Suite.PROJECTORS, Suite.TABLES]
HEAVY_SUITES = [Suite.LQW, Suite.LLV, Suite.COMMUTATORS, Suite.DERIVATIONS, Suite.CHERN]

# One designated fault per suite and a check it must break at the SMALL bounds.
FAULT_DETECTIONS = [
    (Suite.RING, Fault.FLIP_DIVISOR_TRANSFER, "ring.rule_literals"),
    (Suite.RING, Fault.PERTURB_SELF_INTERSECTION, "ring.rule_literals"),
    (Suite.HEISENBERG, Fault.FLIP_ANNIHILATION_SIGN, "fock.annihilation_sign"),
    (Suite.DIAGONAL, Fault.FLIP_ANNIHILATION_SIGN, "fock.diagonal_decomposition"),
    (Suite.PROJECTORS, Fault.FLIP_ANNIHILATION_SIGN, "projectors.complete"),
    (Suite.LQW, Fault.FLIP_ANNIHILATION_SIGN, "lqw.virasoro_relation"),
    (Suite.LLV, Fault.FLIP_ANNIHILATION_SIGN, "llv.unit"),
    (Suite.COMMUTATORS, Fault.FLIP_ANNIHILATION_SIGN, "commutators.bar"),
    (Suite.DERIVATIONS, Fault.FLIP_ANNIHILATION_SIGN, "derivations.h_tilde_universal"),
    (Suite.CHERN, Fault.FLIP_ANNIHILATION_SIGN, "chern.tangent"),
    (Suite.TABLES, Fault.FLIP_ANNIHILATION_SIGN, "tables.low_codim"),
]
FAULT_PARAMS = [
    pytest.param(*row, marks=pytest.mark.slow) if row[0] in HEAVY_SUITES else row
    for row in FAULT_DETECTIONS
]


def small_config(*suites: Suite, **overrides: object) -> SuiteConfig:
    return SuiteConfig.model_validate({**SMALL, "suites": suites, **overrides})


class TestCatalogue:
    def test_every_entry_is_registered(self):
        missing = [entry.check_id for entry in CheckCatalogue if entry not in registry]
        assert missing == []

    def test_ids_are_unique_and_grouped_by_suite(self):
        ids = [entry.check_id for entry in CheckCatalogue]
        assert len(ids) == len(set(ids))
        for entry in CheckCatalogue:
            assert entry.check_id.split(".")[0] in {entry.suite.value, "fock"}

    def test_suite_codes(self):
        assert [suite.code for suite in Suite] == [f"S{i}" for i in range(1, 11)]

    def test_every_suite_has_checks(self):
        for suite in Suite:
            assert registry.for_suites([suite]), suite

    def test_catalogue_lines(self):
        lines = catalogue_lines()
        assert len(lines) == len(CheckCatalogue) + len(OperatorCatalogue)
        assert lines[0].split("\t")[:2] == ["ring.rule_literals", "S1"]
        assert lines[-1].startswith("op_diagonal\t")

    def test_unregistered_entry(self):
        with pytest.raises(CheckNotRegisteredException):
            CheckRegistry().get(CheckCatalogue.TABLES_LOW_CODIM)

    def test_double_registration(self):
        local = CheckRegistry()
        local.register(CheckCatalogue.TABLES_LOW_CODIM)(lambda ctx, params: None)
        with pytest.raises(ValueError, match="registered twice"):
            local.register(CheckCatalogue.TABLES_LOW_CODIM)(lambda ctx, params: None)

    def test_levels_grid(self):
        config = SuiteConfig(n_max=3)
        assert levels(2)(config) == [{"n": 2}, {"n": 3}]
        assert levels(1, 2)(config) == [{"n": 1}, {"n": 2}]
        assert levels(4)(config) == []


class TestRunSuite:
    def test_no_suites(self):
        report = VerifyService(small_config()).run_suite()
        assert report.results == []
        assert report.passed
        assert report.exit_code == 0
        assert report.to_text() == "0 checks: 0 passed, 0 failed, 0 skipped\n"

    @pytest.mark.parametrize("suite", CHEAP_SUITES)
    def test_suite_passes(self, suite: Suite):
        report = VerifyService(small_config(suite)).run_suite()
        failed = [r for r in report.results if r.status == CheckStatus.FAIL]
        assert failed == []
        assert {r.suite for r in report.results} == {suite}

    @pytest.mark.slow
    @pytest.mark.parametrize("suite", HEAVY_SUITES)
    def test_heavy_suite_passes(self, suite: Suite):
        report = VerifyService(small_config(suite)).run_suite()
        assert [r.id for r in report.results if r.status == CheckStatus.FAIL] == []

    @pytest.mark.parametrize("k_max", [2, pytest.param(4, marks=pytest.mark.slow)])
    def test_ring_law_arities_follow_k_max(self, k_max: int):
        report = VerifyService(small_config(Suite.RING, k_max=k_max)).run_suite()
        laws = [r for r in report.results if r.id == "ring.commutative_associative"]
        assert [r.params["k"] for r in laws] == list(range(1, k_max + 1))
        assert all(r.status == CheckStatus.PASS for r in laws)

    def test_empty_grid_is_skipped(self):
        report = VerifyService(small_config(Suite.DIAGONAL, n_max=0)).run_suite()
        assert [r.status for r in report.results] == [CheckStatus.SKIPPED]
        assert report.passed

    def test_results_are_sorted(self):
        report = VerifyService(small_config(Suite.RING, Suite.HEISENBERG)).run_suite()
        keys = [r.sort_key for r in report.results]
        assert keys == sorted(keys)

    def test_runs_are_deterministic(self):
        config = small_config(Suite.RING, Suite.PROJECTORS, output_format=OutputFormat.JSON)
        first = VerifyService(config).run_suite().render(config.output_format)
        second = VerifyService(config).run_suite().render(config.output_format)
        assert first == second
        assert all(entry["millis"] == 0 for entry in json.loads(first))


class TestFaultInjection:
    @pytest.mark.parametrize(("suite", "fault", "check_id"), FAULT_PARAMS)
    def test_fault_is_detected(self, suite: Suite, fault: Fault, check_id: str):
        report = VerifyService(small_config(suite, fault=fault)).run_suite()
        failed = [r for r in report.results if r.status == CheckStatus.FAIL]
        assert check_id in {r.id for r in failed}
        assert all(r.witness is not None for r in failed)
        assert report.exit_code == 1

    def test_every_suite_has_a_designated_fault(self):
        assert {suite for suite, _, _ in FAULT_DETECTIONS} == set(Suite)

    def test_flipped_divisor_transfer_breaks_ring(self):
        config = small_config(Suite.RING, fault=Fault.FLIP_DIVISOR_TRANSFER)
        report = VerifyService(config).run_suite()
        failed = {r.id: r for r in report.results if r.status == CheckStatus.FAIL}
        witness = failed["ring.rule_literals"].witness
        assert witness is not None
        assert witness.instance.startswith("D_12 a1_1")

    def test_perturbed_self_intersection_is_caught_by_the_degree(self):
        config = small_config(Suite.RING, fault=Fault.PERTURB_SELF_INTERSECTION)
        report = VerifyService(config).run_suite()
        failed = {r.id: r for r in report.results if r.status == CheckStatus.FAIL}
        witness = failed["ring.rule_literals"].witness
        assert witness is not None
        assert witness.instance == "int D_12 D_12"
        assert (witness.lhs, witness.rhs) == ("23", "24")

    def test_faults_do_not_leak_into_other_runs(self):
        VerifyService(small_config(Suite.RING, fault=Fault.FLIP_DIVISOR_TRANSFER)).run_suite()
        VerifyService(small_config(Suite.RING, fault=Fault.PERTURB_SELF_INTERSECTION)).run_suite()
        assert VerifyService(small_config(Suite.RING)).run_suite().passed


class TestReport:
    def result(self, status: CheckStatus, **kwargs: object) -> CheckResult:
        return CheckResult.model_validate(
            {
                "id": "ring.rule_literals",
                "eq_anchor": "D_12 c_1 = c_1 c_2",
                "suite": Suite.RING,
                "status": status,
                **kwargs,
            }
        )

    def test_failure_needs_witness(self):
        with pytest.raises(ValueError, match="witness"):
            self.result(CheckStatus.FAIL)

    def test_json_omits_witness_on_pass(self):
        body = self.result(CheckStatus.PASS, params={"n": 1}).to_json()
        assert body == {
            "id": "ring.rule_literals",
            "eq_anchor": "D_12 c_1 = c_1 c_2",
            "params": {"n": 1},
            "status": "pass",
            "millis": 0,
        }

    def test_text_lists_witness(self):
        witness = Witness(instance="n=1", lhs="c_1", rhs="0")
        report = Report(results=[self.result(CheckStatus.FAIL, witness=witness)])
        text = report.to_text()
        assert text.splitlines()[0].startswith("FAIL    ring.rule_literals")
        assert "        lhs: c_1" in text
        assert text.endswith("1 checks: 0 passed, 1 failed, 0 skipped\n")
        assert not report.passed


class TestTables:
    service: VerifyService

    @pytest.fixture(autouse=True)
    def _setup(self):
        self.service = VerifyService(small_config(Suite.TABLES))

    def test_rows(self):
        assert self.service.emit_tables() == [
            TableRow(n=0, i=0, s=0, dimension=1),
            TableRow(n=1, i=0, s=0, dimension=1),
            TableRow(n=1, i=1, s=0, dimension=1),
            TableRow(n=1, i=2, s=0, dimension=1),
        ]

    def test_csv(self):
        csv = VerifyService.tables_to_csv(self.service.emit_tables())
        assert csv.splitlines() == ["n,i,s,dimension", "0,0,0,1", "1,0,0,1", "1,1,0,1", "1,2,0,1"]

    def test_text(self):
        text = VerifyService.tables_to_text(self.service.emit_tables())
        assert text.startswith("n=0\ni\\s     0\n  0     1\n\nn=1\n")
        assert text.endswith("  2     1\n")

    def test_excel(self):
        workbook = VerifyService.tables_to_excel(self.service.emit_tables())
        assert workbook[:2] == b"PK"
