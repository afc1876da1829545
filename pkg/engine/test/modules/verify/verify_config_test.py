from fractions import Fraction
from pathlib import Path

import pytest
from src.core.config import env
from src.core.exceptions import BadRequestException
from src.modules.verify.verify_config import parse_config, resolve_lattice
from src.modules.verify.verify_model import (
    Fault,
    InvalidSuiteConfigException,
    OutputFormat,
    Suite,
)


class TestParseConfig:
    def test_defaults(self):
        config = parse_config([])
        assert config.n_max == env.DEFAULT_N_MAX
        assert config.suites == tuple(Suite)
        assert config.lattice.rank == 1
        assert config.output_format == OutputFormat.TEXT
        assert config.fault == Fault.NONE
        assert config.timings

    def test_single_suite(self):
        config = parse_config(["--n", "2", "--suite", "projectors"])
        assert config.n_max == 2
        assert config.suites == (Suite.PROJECTORS,)

    def test_suites_are_deduplicated_in_execution_order(self):
        config = parse_config(["--suite", "lqw", "--suite", "ring", "--suite", "lqw"])
        assert config.suites == (Suite.RING, Suite.LQW)

    def test_all_flags(self):
        config = parse_config(
            [
                "--format", "json",
                "--seed", "7",
                "--d-max", "3",
                "--k-max", "5",
                "--fault", "flip_annihilation_sign",
                "--no-timings",
            ]
        )  # fmt: skip
        assert config.output_format == OutputFormat.JSON
        assert config.seed == 7
        assert config.d_max == 3
        assert config.k_max == 5
        assert config.fault == Fault.FLIP_ANNIHILATION_SIGN
        assert not config.timings

    def test_env_defaults(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setattr(env, "DEFAULT_N_MAX", 1)
        monkeypatch.setattr(env, "DEFAULT_FORMAT", "json")
        config = parse_config([])
        assert config.n_max == 1
        assert config.output_format == OutputFormat.JSON

    @pytest.mark.parametrize(
        "argv",
        [["--bogus"], ["--suite", "nope"], ["--n", "two"], ["--fault", "everything"]],
    )
    def test_usage_errors(self, argv: list[str]):
        with pytest.raises(BadRequestException, match="k3-verify"):
            parse_config(argv)

    @pytest.mark.parametrize("argv", [["--n", "-1"], ["--d-max", "0"]])
    def test_out_of_range_values(self, argv: list[str]):
        with pytest.raises(InvalidSuiteConfigException):
            parse_config(argv)


class TestResolveLattice:
    @pytest.mark.parametrize(
        ("gram", "rho", "expected"),
        [
            (None, None, ((2,),)),
            ("2", None, ((2,),)),
            ("0 1; 1 0", None, ((0, 1), (1, 0))),
            ("0 1; 1 0", 2, ((0, 1), (1, 0))),
            (None, 3, ((2, 0, 0), (0, -2, 0), (0, 0, -2))),
            (None, 0, ()),
        ],
    )
    def test_valid(self, gram: str | None, rho: int | None, expected: tuple):
        lattice = resolve_lattice(gram, rho)
        assert lattice.gram == tuple(tuple(Fraction(x) for x in row) for row in expected)

    @pytest.mark.parametrize(
        ("gram", "rho"),
        [("0 1; 2 0", None), ("1 2", None), ("x", None), ("2", 2), (None, -1)],
    )
    def test_invalid(self, gram: str | None, rho: int | None):
        with pytest.raises(InvalidSuiteConfigException):
            resolve_lattice(gram, rho)

    def test_flag_overrides_default(self):
        assert parse_config(["--gram", "0 1; 1 0"]).lattice.rank == 2
        assert parse_config(["--rho", "2"]).lattice.pairing(1, 1) == -2


class TestConfigFile:
    path: Path

    @pytest.fixture(autouse=True)
    def _setup(self, tmp_path: Path):
        self.path = tmp_path / "engine.toml"

    def write(self, text: str) -> list[str]:
        self.path.write_text(text, encoding="utf-8")
        return ["--config", str(self.path)]

    def test_file_values(self):
        argv = self.write(
            'n_max = 1\nsuites = ["ring", "tables"]\nformat = "json"\n'
            'gram = "0 1; 1 0"\ntimings = false\nconfluence_seeds = 5\n'
        )
        config = parse_config(argv)
        assert config.n_max == 1
        assert config.suites == (Suite.RING, Suite.TABLES)
        assert config.output_format == OutputFormat.JSON
        assert config.lattice.rank == 2
        assert not config.timings
        assert config.confluence_seeds == 5

    def test_flags_override_file(self):
        argv = self.write('n_max = 1\nformat = "json"\nrho = 2\n')
        config = parse_config([*argv, "--n", "2", "--format", "text", "--gram", "2"])
        assert config.n_max == 2
        assert config.output_format == OutputFormat.TEXT
        assert config.lattice.rank == 1

    def test_file_rank(self):
        assert parse_config(self.write("rho = 2\n")).lattice.rank == 2

    def test_unknown_key(self):
        with pytest.raises(BadRequestException, match="unknown keys"):
            parse_config(self.write("n_max = 1\nverbose = true\n"))

    def test_malformed_file(self):
        with pytest.raises(BadRequestException, match="not valid TOML"):
            parse_config(self.write("n_max = \n"))

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(BadRequestException, match="not found"):
            parse_config(["--config", str(tmp_path / "missing.toml")])

    def test_invalid_value(self):
        with pytest.raises(InvalidSuiteConfigException):
            parse_config(self.write('suites = ["ring", "everything"]\n'))
