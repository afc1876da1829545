"""Command-line entry point: ``verify``, ``tables``, ``catalogue`` and ``basis``."""

import argparse
import contextlib
import logging
import sys
from collections.abc import Iterator
from pathlib import Path

from src.core.config import env
from src.core.exceptions import BadRequestException, EngineException
from src.modules.verify.verify_config import (
    EngineArgumentParser,
    add_config_arguments,
    config_from_namespace,
    resolve_lattice,
)
from src.modules.verify.verify_model import SuiteConfig
from src.modules.verify.verify_service import VerifyService, catalogue_lines

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@contextlib.contextmanager
def engine_errors(result: list[int]) -> Iterator[None]:
    """Report an escaping `EngineException` as ``{"detail": ...}`` on stderr.

    The exception's exit code is appended to ``result``; nothing else is swallowed.
    """
    try:
        yield
    except EngineException as e:
        logger.debug("Command aborted", exc_info=True)
        sys.stderr.write(e.to_response().model_dump_json() + "\n")
        result.append(e.exit_code)


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", out)


def build_parser() -> EngineArgumentParser:
    """Return the top-level parser with one subparser per command."""
    parser = EngineArgumentParser(
        prog="k3-verify",
        description="Exact verification of tautological identities on Hilb^n(K3).",
    )
    parser.add_argument(
        "--log-level", dest="log_level", help=f"root logging level (default {env.LOG_LEVEL})"
    )
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=EngineArgumentParser
    )

    verify = commands.add_parser("verify", help="run the identity suites and print a report")
    add_config_arguments(verify)

    tables = commands.add_parser("tables", help="print the bigraded dimension tables")
    add_config_arguments(tables)
    tables.add_argument("--csv", type=Path, help="also write the table as CSV")
    tables.add_argument("--xlsx", type=Path, help="also write the table as an Excel workbook")

    commands.add_parser("catalogue", help="print the check and operator catalogues")

    basis = commands.add_parser("basis", help="print the basis-index file of one Hilb^n")
    basis.add_argument("--n", type=int, required=True, help="number of points")
    basis.add_argument("--rho", type=int, help="rank of the divisor lattice")
    basis.add_argument("--gram", help='Gram matrix of the divisors, rows split by ";"')
    basis.add_argument("--out", type=Path, help="write the file here instead of stdout")
    return parser


def configure_logging(level: str | None) -> None:
    """Send log records to stderr at ``level`` or ``env.LOG_LEVEL``."""
    name = (level or env.LOG_LEVEL).upper()
    if name not in logging.getLevelNamesMapping():
        name = env.LOG_LEVEL
    logging.basicConfig(stream=sys.stderr, level=name, format=LOG_FORMAT, force=True)


def command_verify(args: argparse.Namespace) -> int:
    """Run the selected suites; exit 0 iff every check passed."""
    config = config_from_namespace(args)
    report = VerifyService(config).run_suite()
    _write(report.render(config.output_format), args.out)
    return report.exit_code


def command_tables(args: argparse.Namespace) -> int:
    """Print the aligned tables and write the optional CSV and workbook files."""
    config = config_from_namespace(args)
    rows = VerifyService(config).emit_tables()
    _write(VerifyService.tables_to_text(rows), args.out)
    if args.csv is not None:
        args.csv.write_text(VerifyService.tables_to_csv(rows), encoding="utf-8")
        logger.info("Wrote %s", args.csv)
    if args.xlsx is not None:
        args.xlsx.write_bytes(VerifyService.tables_to_excel(rows))
        logger.info("Wrote %s", args.xlsx)
    return 0


def command_catalogue(args: argparse.Namespace) -> int:
    """Print the check catalogue followed by the operator catalogue."""
    _write("\n".join(catalogue_lines()) + "\n", None)
    return 0


def command_basis(args: argparse.Namespace) -> int:
    """Print ``index<TAB>codim<TAB>λ<TAB>Γ`` for every basis column of Hilbₙ."""
    if args.n < 0:
        raise BadRequestException(f"--n must be non-negative, got {args.n}")
    config = SuiteConfig(n_max=args.n, lattice=resolve_lattice(args.gram, args.rho))
    lines = VerifyService(config).ctx.space.basis_index_lines(args.n)
    _write("".join(f"{line}\n" for line in lines), args.out)
    return 0


COMMANDS = {
    "verify": command_verify,
    "tables": command_tables,
    "catalogue": command_catalogue,
    "basis": command_basis,
}


def main(argv: list[str] | None = None) -> int:
    """Parse ``argv``, run the command and return its exit code."""
    result: list[int] = []
    with engine_errors(result):
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level)
        logger.debug("Running %s", args.command)
        result.append(COMMANDS[args.command](args))
    return result[0]


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
