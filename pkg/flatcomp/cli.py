"""
Command-line front-end.

Subcommands:
- validate: check the unit and triangle laws of every space in a file
- complete: build a completion and write its space, point table and embedding
- flat: compare the closed-form flatness tests with the definitional oracle
- verify: run the property suites over the generated catalog and store the run
  in the TinyDB ledger at QC_DB_PATH
- dist: distance between two filters or left modules
- history: list stored verify runs

Exit codes: 0 success, 1 property violation, 2 input error, 3 budget exceeded.
Reports go to stdout, logs to stderr.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import structlog
from pydantic import ValidationError

from .config import DEFAULT_DB_PATH, settings
from .db.database import list_runs, record_run
from .errors import BudgetExceededError, FlatcompError
from .logging_config import configure_logging
from .models.completion import Notion
from .models.document import Document
from .models.module import LeftModule
from .models.quantale import Base, parse_value
from .models.report import FlatnessClass
from .models.space import Space
from .services.budget import Budget
from .services.catalog_service import Catalog
from .services.completion_service import completion_service
from .services.enriched_service import enriched_service
from .services.filter_service import filter_service
from .services.flatness_service import flatness_service
from .services.parser_service import parser_service
from .services.verification_service import MUTATIONS, verification_service

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

FLAT_NOTIONS = (FlatnessClass.P1, FlatnessClass.P2, FlatnessClass.P0)


def _read_document(path: Path) -> Document:
    try:
        text = path.read_text()
    except OSError as e:
        raise FlatcompError(f"cannot read {path}: {e.strerror}")
    return parser_service.parse_document(text)


def _valid_space(doc: Document, name: Optional[str]) -> Space:
    return enriched_service.require_valid(doc.space(name))


def _verdict(flat: bool) -> str:
    return "flat" if flat else "not_flat"


def _write(path: Optional[Path], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)
        logger.info("file_written", path=str(path), bytes=len(text))


# -- subcommands -------------------------------------------------------------


def _validate_command(args: argparse.Namespace) -> int:
    doc = _read_document(args.file)
    if not doc.spaces:
        raise FlatcompError(f"{args.file} declares no space")
    failed = False
    for space in doc.spaces.values():
        violations = enriched_service.validate_space(space)
        if violations:
            failed = True
            print(f"{space.name}: {len(violations)} violation(s)")
            for v in violations:
                print(f"- {v}")
        else:
            print(f"{space.name}: ok ({space.size} points over {space.base.value})")
    for name in doc.modules:
        print(f"module {name}: ok")
    return EXIT_VIOLATION if failed else EXIT_OK


def _complete_command(args: argparse.Namespace) -> int:
    doc = _read_document(args.file)
    space = _valid_space(doc, args.space)
    completion = completion_service.complete(space, Notion(args.notion))
    _write(args.output, parser_service.format_space(completion.result))
    if args.table is not None:
        _write(args.table, parser_service.format_table(completion))
    if args.embedding is not None:
        _write(args.embedding, parser_service.format_embedding(completion))
    return EXIT_OK


def _flat_command(args: argparse.Namespace) -> int:
    doc = _read_document(args.file)
    space = _valid_space(doc, args.space)
    module = doc.module(args.module)
    if not isinstance(module, LeftModule):
        raise FlatcompError(f"'{args.module}' is a right module; flatness applies to left modules")
    if module.space != space:
        raise FlatcompError(f"'{args.module}' lives on '{module.space.name}', not '{space.name}'")

    notions = [FlatnessClass(args.notion)] if args.notion else list(FLAT_NOTIONS)
    lines = ["notion\tclosed_form\toracle\tchecked"]
    witnesses = []
    disagreements = 0
    for notion in notions:
        closed = flatness_service.is_flat(module, notion)
        report = flatness_service.oracle_report(module, notion, budget=Budget(args.budget, what="flatness oracle samples"))
        if closed != report.flat:
            disagreements += 1
        lines.append(f"{notion.value}\t{_verdict(closed)}\t{_verdict(report.flat)}\t{report.checked}")
        if report.witness:
            witnesses.append(f"# {notion.value}: {report.witness}")
    sys.stdout.write("\n".join(lines + witnesses) + "\n")
    if disagreements:
        logger.error("flatness_disagreement", module=args.module, notions=disagreements)
        return EXIT_VIOLATION
    return EXIT_OK


def _verify_command(args: argparse.Namespace) -> int:
    catalog = Catalog(
        max_points=args.max_points,
        grid=tuple(parse_value(token, Base.RPLUS) for token in args.grid.split(",") if token),
        symmetric_only=args.symmetric_only,
        seed=args.seed,
    )
    report = verification_service.run(
        catalog=catalog, budget=args.budget, mutations=args.mutate or (), only=args.suite or None
    )
    sys.stdout.write(verification_service.format_report(report))
    if not report.ok:
        status = EXIT_VIOLATION
    elif report.budget_exceeded:
        status = EXIT_BUDGET
    else:
        status = EXIT_OK
    if not args.no_record:
        run_id = record_run(report, status)
        logger.info("run_recorded", run_id=run_id, db=settings.db_path)
    return status


def _dist_command(args: argparse.Namespace) -> int:
    doc = _read_document(args.file)
    space = _valid_space(doc, args.space)
    first = parser_service.operand(doc, space, args.first)
    second = parser_service.operand(doc, space, args.second)
    print(filter_service.operand_distance(first, second))
    return EXIT_OK


def _history_command(args: argparse.Namespace) -> int:
    runs = list_runs(limit=args.limit, failed_only=args.failed)
    print("id\ttimestamp\texit_status\tfailures\tparameters")
    for run in runs:
        failures = sum(s["failures"] for s in run["suites"])
        params = ",".join(f"{k}={v}" for k, v in sorted(run["parameters"].items()))
        print(f"{run['id']}\t{run['timestamp']}\t{run['exit_status']}\t{failures}\t{params}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _add_validate_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", type=Path, help="Space file")
    parser.set_defaults(func=_validate_command)


def _add_complete_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", type=Path, help="Space file")
    parser.add_argument("--notion", required=True, choices=[n.value for n in Notion], help="Completion notion")
    parser.add_argument("--space", default=None, help="Space to complete when the file declares several")
    parser.add_argument("-o", "--output", type=Path, default=None, help="Completion space file (default: stdout)")
    parser.add_argument("--table", type=Path, default=None, help="Point table TSV output path")
    parser.add_argument("--embedding", type=Path, default=None, help="Embedding TSV output path")
    parser.set_defaults(func=_complete_command)


def _add_flat_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", type=Path, help="File declaring the space and the module")
    parser.add_argument("--module", required=True, help="Name of the left module")
    parser.add_argument(
        "--notion", default=None, choices=[n.value for n in FLAT_NOTIONS], help="Flatness notion (default: all)"
    )
    parser.add_argument("--space", default=None, help="Space name when the file declares several")
    parser.set_defaults(func=_flat_command)


def _add_verify_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-points", type=int, default=3, help="Largest catalog space")
    parser.add_argument("--grid", default="0,1,2,inf", help="Comma-separated distance grid")
    parser.add_argument("--symmetric-only", action="store_true", help="Enumerate symmetric spaces only")
    parser.add_argument("--seed", type=int, default=0, help="Seed for sampled quantale checks")
    parser.add_argument(
        "--suite", action="append", default=None, choices=verification_service.suite_names, help="Run only this suite"
    )
    parser.add_argument("--mutate", action="append", default=None, choices=sorted(MUTATIONS), help="Inject a known bug")
    parser.add_argument(
        "--no-record", action="store_true", help="Do not write the run to the ledger file (QC_DB_PATH)"
    )
    parser.set_defaults(func=_verify_command)


def _add_dist_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", type=Path, help="File declaring the space")
    parser.add_argument("first", help="Filter name, left module name or inline generator like {a,b}")
    parser.add_argument("second", help="Filter name, left module name or inline generator like {a,b}")
    parser.add_argument("--space", default=None, help="Space name when the file declares several")
    parser.set_defaults(func=_dist_command)


def _add_history_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--limit", type=int, default=None, help="Show at most this many runs")
    parser.add_argument("--failed", action="store_true", help="Only runs with property violations")
    parser.set_defaults(func=_history_command)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatcomp", description="Flat presheaves and completions over R+ and Bool.")
    parser.add_argument("--log-level", default=None, help="Override QC_LOG_LEVEL")
    parser.add_argument("--json-logs", action="store_true", help="Render log lines as JSON")
    parser.add_argument("--budget", type=int, default=None, help="Override QC_BUDGET for this run")
    subparsers = parser.add_subparsers(dest="command", required=True)

    _add_validate_args(subparsers.add_parser("validate", help="Check space laws."))
    _add_complete_args(subparsers.add_parser("complete", help="Build a completion."))
    _add_flat_args(subparsers.add_parser("flat", help="Closed-form vs oracle flatness."))
    _add_verify_args(
        subparsers.add_parser(
            "verify",
            help="Run the property suites.",
            description=(
                "Run the property suites. Each run is appended to the TinyDB ledger at "
                f"QC_DB_PATH (default ./{DEFAULT_DB_PATH}) unless --no-record is given."
            ),
        )
    )
    _add_dist_args(subparsers.add_parser("dist", help="Distance between filters or modules."))
    _add_history_args(subparsers.add_parser("history", help="List verify runs stored at QC_DB_PATH."))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    configure_logging(args.log_level or settings.log_level, args.json_logs or settings.log_json)
    if args.budget is not None and args.budget <= 0:
        print("error: --budget must be a positive integer", file=sys.stderr)
        return EXIT_INPUT
    try:
        return int(args.func(args))
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValidationError as e:
        messages: List[str] = [err["msg"].removeprefix("Value error, ") for err in e.errors()]
        print(f"error: {'; '.join(messages)}", file=sys.stderr)
        return EXIT_INPUT
    except (FlatcompError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
