"""Builds a `SuiteConfig` from defaults, the environment, a TOML file and flags.

Later layers win: documented defaults < ``env`` < ``--config`` file < flags.
"""

import argparse
import logging
import tomllib
from pathlib import Path
from typing import Any, NoReturn

from pydantic import ValidationError
from src.core.config import env
from src.core.exceptions import BadRequestException
from src.modules.taut_ring.taut_ring_model import DivisorLattice

from .verify_model import Fault, InvalidSuiteConfigException, OutputFormat, Suite, SuiteConfig

logger = logging.getLogger(__name__)

# Keys accepted in a TOML config file, mapped to SuiteConfig fields.
FILE_KEYS = {
    "n_max": "n_max",
    "suites": "suites",
    "format": "output_format",
    "seed": "seed",
    "d_max": "d_max",
    "k_max": "k_max",
    "word_length_max": "word_length_max",
    "confluence_seeds": "confluence_seeds",
    "timings": "timings",
    "fault": "fault",
}

# Flag destinations that map one-to-one onto SuiteConfig fields.
FLAG_FIELDS = {
    "n": "n_max",
    "suite": "suites",
    "format": "output_format",
    "seed": "seed",
    "d_max": "d_max",
    "k_max": "k_max",
    "fault": "fault",
}


class EngineArgumentParser(argparse.ArgumentParser):
    """`ArgumentParser` that raises `BadRequestException` instead of exiting."""

    def error(self, message: str) -> NoReturn:
        """Raise the usage error so the CLI reports it like any other engine error."""
        raise BadRequestException(f"{self.prog}: {message}")


def add_config_arguments(parser: argparse.ArgumentParser) -> None:
    """Attach the flags shared by ``verify`` and ``tables``."""
    parser.add_argument("--n", type=int, help="largest number of points (default 3)")
    parser.add_argument("--rho", type=int, help="rank of the divisor lattice")
    parser.add_argument("--gram", help='Gram matrix of the divisors, rows split by ";"')
    parser.add_argument(
        "--suite",
        action="append",
        choices=[suite.value for suite in Suite],
        help="suite to run; repeatable (default all)",
    )
    parser.add_argument("--format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--out", type=Path, help="write the report here instead of stdout")
    parser.add_argument("--seed", type=int, help="seed of the random rewrite strategies")
    parser.add_argument("--d-max", dest="d_max", type=int, help="largest universal degree")
    parser.add_argument("--k-max", dest="k_max", type=int, help="largest Nakajima index")
    parser.add_argument(
        "--fault", choices=[f.value for f in Fault], help="perturb one rule to test detection"
    )
    parser.add_argument(
        "--no-timings",
        dest="timings",
        action="store_false",
        default=None,
        help="report 0ms for every check so output is byte-stable",
    )
    parser.add_argument("--config", type=Path, help="TOML file with default values")


def load_config_file(path: Path) -> dict[str, Any]:
    """Read a TOML config file and map its keys onto `SuiteConfig` field names.

    ``gram`` and ``rho`` are returned under their own names; they are resolved into
    a lattice together with the flags.

    Raises:
        BadRequestException: If the file is missing, malformed or has unknown keys.
    """
    try:
        with path.open("rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError as e:
        raise BadRequestException(f"config file {path} not found") from e
    except tomllib.TOMLDecodeError as e:
        raise BadRequestException(f"config file {path} is not valid TOML: {e}") from e

    unknown = set(data) - set(FILE_KEYS) - {"gram", "rho"}
    if unknown:
        raise BadRequestException(f"unknown keys in {path}: {', '.join(sorted(unknown))}")
    values = {FILE_KEYS[key]: value for key, value in data.items() if key in FILE_KEYS}
    for key in ("gram", "rho"):
        if key in data:
            values[key] = data[key]
    logger.debug("Loaded %s from %s", sorted(values), path)
    return values


def resolve_lattice(gram: str | None, rho: int | None) -> DivisorLattice:
    """Build the divisor lattice from ``--gram`` and ``--rho``.

    With only a rank, the Gram matrix is diag(2, −2, …, −2). With both, the rank
    must match the matrix.

    Raises:
        InvalidSuiteConfigException: If the matrix is malformed, asymmetric or its
            rank disagrees with ``rho``.
    """
    if rho is not None and rho < 0:
        raise InvalidSuiteConfigException(f"rho must be non-negative, got {rho}")
    if gram is None:
        if rho is None:
            gram = env.DEFAULT_GRAM
        else:
            gram = "; ".join(
                " ".join("2" if i == j == 0 else "-2" if i == j else "0" for j in range(rho))
                for i in range(rho)
            )
    try:
        lattice = DivisorLattice.from_text(gram)
    except (ValidationError, ValueError, ArithmeticError) as e:
        raise InvalidSuiteConfigException(f"invalid gram matrix {gram!r}: {e}") from e
    if rho is not None and rho != lattice.rank:
        raise InvalidSuiteConfigException(
            f"rho={rho} does not match the {lattice.rank}x{lattice.rank} gram matrix"
        )
    return lattice


def _env_defaults() -> dict[str, Any]:
    return {
        "n_max": env.DEFAULT_N_MAX,
        "output_format": env.DEFAULT_FORMAT,
        "seed": env.DEFAULT_SEED,
        "d_max": env.D_MAX,
        "k_max": env.K_MAX,
        "word_length_max": env.WORD_LENGTH_MAX,
        "confluence_seeds": env.CONFLUENCE_SEEDS,
    }


def config_from_namespace(args: argparse.Namespace) -> SuiteConfig:
    """Layer env, the optional config file and the parsed flags into a `SuiteConfig`.

    Raises:
        InvalidSuiteConfigException: If the combined values fail validation.
    """
    values = _env_defaults()
    if getattr(args, "config", None) is not None:
        values.update(load_config_file(args.config))
    for dest, field in FLAG_FIELDS.items():
        value = getattr(args, dest, None)
        if value is not None:
            values[field] = value
    if getattr(args, "timings", None) is not None:
        values["timings"] = args.timings

    # The lattice flags replace the file's gram/rho as a pair.
    file_gram, file_rho = values.pop("gram", None), values.pop("rho", None)
    gram, rho = getattr(args, "gram", None), getattr(args, "rho", None)
    if gram is None and rho is None:
        gram, rho = file_gram, file_rho
    values["lattice"] = resolve_lattice(gram, rho)

    try:
        return SuiteConfig.model_validate(values)
    except ValidationError as e:
        raise InvalidSuiteConfigException(str(e)) from e


def parse_config(argv: list[str]) -> SuiteConfig:
    """Parse config flags alone, as accepted by ``verify`` and ``tables``."""
    parser = EngineArgumentParser(prog="k3-verify")
    add_config_arguments(parser)
    return config_from_namespace(parser.parse_args(argv))
