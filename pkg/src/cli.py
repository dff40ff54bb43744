"""
Command-line front end.

Subcommands:
    verify <theorem-id | all>   check congruence claims
    identities [ids...]         verify the identity catalog
    oracle-compare              enumeration vs DP vs series
    equivalence                 R6(18p^2n + (9p^2-1)/4) against R6(18n+2) mod 8
    scan                        search small progressions for candidates
    dump <expr>                 print the coefficients of an expression
    cache {info, clear}         inspect or empty the coefficient cache

Exit status: 0 all checks passed, 1 some check failed, 2 usage, configuration
or parse error, 3 resource refusal.
"""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Union

from .cache import CacheError, CoefficientCache
from .config import TRUNC_CEILING, ResourceRefusal, default_cache_dir
from .congruences import (
    EPISTEMIC_NOTES,
    FINDING_NOTE,
    default_suite,
    theorem_claims,
    theorem_ids,
)
from .harness import Harness
from .identities import catalog, catalog_index
from .models import OUTPUT_FORMATS, CheckReport, ProgressionClaim, RunConfig
from .parser import ParseError
from .series import Series

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3

CSV_COLUMNS = ("id", "ell", "A", "B", "M", "n_max", "trunc", "kind", "status",
               "counterexample_n", "counterexample_value", "seconds", "note")

ELL_ONE_NOTE = ("ell = 1 forbids every non-overlined part; counts are of overpartitions "
                "into overlined parts only")


class ReportWriter:
    """Streams reports to `stream` as JSON lines, CSV rows or text."""

    def __init__(self, output_format: str, stream: TextIO = sys.stdout):
        self.output_format = output_format
        self.stream = stream
        self.failures = 0
        self.findings = 0
        self.count = 0
        self._csv: Optional[csv.DictWriter] = None

    def write(self, report: CheckReport) -> None:
        self.count += 1
        if report.failed:
            self.failures += 1
        elif not report.passed:
            self.findings += 1
        if self.output_format == "json":
            self.stream.write(json.dumps(report.to_dict()) + "\n")
        elif self.output_format == "csv":
            self._write_csv(report)
        else:
            self.stream.write(_format_text(report) + "\n")
        self.stream.flush()

    def _write_csv(self, report: CheckReport) -> None:
        if self._csv is None:
            self._csv = csv.DictWriter(self.stream, fieldnames=CSV_COLUMNS,
                                       extrasaction="ignore", lineterminator="\n")
            self._csv.writeheader()
        row: Dict[str, Any] = report.to_dict()
        example = row.pop("counterexample", None)
        if example is not None:
            row["counterexample_n"] = example["n"]
            row["counterexample_value"] = example["value"]
        self._csv.writerow(row)

    def summary(self) -> str:
        passed = self.count - self.failures - self.findings
        text = f"{passed}/{self.count} passed"
        if self.findings:
            text += f", {self.findings} documented findings"
        return text

    @property
    def exit_code(self) -> int:
        return EXIT_FAILED if self.failures else EXIT_OK


def _format_text(report: CheckReport) -> str:
    bound = f"n <= {report.checked}" if report.claim is not None else f"q^{report.checked}"
    line = f"{report.status.upper():4}  {report.id}  ({bound}, {report.seconds:.2f}s)"
    if report.counterexample is not None:
        n, value = report.counterexample
        line += f"  first failure at n={n}: {value}"
    if report.claim is not None:
        line += f"  [{report.claim.kind}: {EPISTEMIC_NOTES[report.claim.kind]}]"
        if report.finding and not report.passed:
            line += f"  [{FINDING_NOTE}]"
    elif report.note:
        line += f"  [{report.note}]"
    return line


def _parse_param(text: str) -> Dict[str, Union[int, List[int]]]:
    if "=" not in text:
        raise ValueError(f"parameter {text!r} must look like key=value")
    key, raw = text.split("=", 1)
    try:
        if "," in raw:
            return {key: [int(part) for part in raw.split(",") if part]}
        return {key: int(raw)}
    except ValueError:
        raise ValueError(f"parameter {key} needs integer values, got {raw!r}") from None


def _int_set(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trunc", type=int, help="truncation for identities and dumps")
    common.add_argument("--nmax", type=int, help="last n checked on each progression")
    common.add_argument("--mod", type=int, help="coefficient modulus for dump")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default="text", dest="output_format")
    common.add_argument("--cache-dir", type=Path,
                        help="coefficient cache directory (default: $QSER_CACHE_DIR or ~/.cache/qser)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--ceiling", type=int, default=TRUNC_CEILING,
                        help="largest truncation a single series may use")
    common.add_argument("--allow-large", action="store_true",
                        help="acknowledge a ceiling above the default")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for engine detail")

    parser = argparse.ArgumentParser(
        prog="qser",
        description="Exact q-series engine and congruence harness for overpartitions "
                    "with ell-regular non-overlined parts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="check congruence claims")
    verify.add_argument("theorem", help="theorem id or 'all'; one of: " + ", ".join(theorem_ids()))
    verify.add_argument("-p", "--param", action="append", default=[],
                        help="theorem parameter key=value, lists as a,b,c")

    identities = sub.add_parser("identities", parents=[common], help="verify identity catalog")
    identities.add_argument("ids", nargs="*", help="entry ids (default: all)")
    identities.add_argument("--chain", action="store_true", help="also replay derivation steps")
    identities.add_argument("--scalars", action="store_true", help="also check scalar witnesses")
    identities.add_argument("--list", action="store_true", help="list entries and exit")

    oracle = sub.add_parser("oracle-compare", parents=[common], help="compare the oracles")
    oracle.add_argument("--ell", type=int, required=True)
    oracle.add_argument("--n-enum", type=int, default=20)
    oracle.add_argument("--n-dp", type=int, default=500)

    equivalence = sub.add_parser("equivalence", parents=[common],
                                 help="R6(18p^2n + (9p^2-1)/4) = R6(18n+2) mod 8")
    equivalence.add_argument("--p", type=int, required=True, dest="prime")

    scan = sub.add_parser("scan", parents=[common], help="search for candidate congruences")
    scan.add_argument("--ell", type=int, required=True)
    scan.add_argument("--a-max", type=int, required=True)
    scan.add_argument("--moduli", type=_int_set, required=True)

    dump = sub.add_parser("dump", parents=[common], help="print coefficients of an expression")
    dump.add_argument("expression")

    cache = sub.add_parser("cache", parents=[common], help="inspect or empty the cache")
    cache.add_argument("action", choices=("info", "clear"))
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def load_config(args: argparse.Namespace) -> RunConfig:
    cache_dir = None
    if not args.no_cache:
        cache_dir = args.cache_dir or default_cache_dir()
    return RunConfig(
        command=args.command,
        trunc_ceiling=args.ceiling,
        n_max=args.nmax,
        trunc=args.trunc,
        modulus=args.mod,
        output_format=args.output_format,
        cache_dir=cache_dir,
        jobs=args.jobs,
        allow_large=args.allow_large,
    )


def _warn_ell_one(ells: Iterable[int]) -> None:
    if 1 in set(ells):
        logger.warning(ELL_ONE_NOTE)


def _unknown(kind: str, name: str) -> int:
    print(f"error: unknown {kind} id {name!r}", file=sys.stderr)
    return EXIT_USAGE


def _stream(reports: Iterable[CheckReport], writer: ReportWriter) -> int:
    for report in reports:
        writer.write(report)
    logger.info("%s", writer.summary())
    return writer.exit_code


def cmd_verify(args: argparse.Namespace, harness: Harness, writer: ReportWriter) -> int:
    if args.theorem == "all":
        if args.param:
            raise ValueError("parameters cannot be combined with 'all'")
        claims: List[ProgressionClaim] = default_suite()
    elif args.theorem not in theorem_ids():
        return _unknown("theorem", args.theorem)
    else:
        params: Dict[str, Any] = {}
        for text in args.param:
            params.update(_parse_param(text))
        claims = theorem_claims(args.theorem, **params)
    _warn_ell_one(c.ell for c in claims)
    return _stream(harness.run_claims(claims), writer)


def cmd_identities(args: argparse.Namespace, harness: Harness, writer: ReportWriter) -> int:
    if args.list:
        for entry in catalog():
            writer.stream.write(f"{entry.id}\t{entry.mode}\t{entry.provenance}\n")
        return EXIT_OK
    known = catalog_index()
    for entry_id in args.ids or ():
        if entry_id not in known:
            return _unknown("identity", entry_id)
    return _stream(harness.run_identities(args.ids, args.chain, args.scalars), writer)


def cmd_oracle_compare(args: argparse.Namespace, harness: Harness, writer: ReportWriter) -> int:
    _warn_ell_one([args.ell])
    return _stream(harness.oracle_compare(args.ell, args.n_enum, args.n_dp), writer)


def cmd_equivalence(args: argparse.Namespace, harness: Harness, writer: ReportWriter) -> int:
    return _stream([harness.equivalence(args.prime)], writer)


def cmd_scan(args: argparse.Namespace, harness: Harness, writer: ReportWriter) -> int:
    _warn_ell_one([args.ell])
    found = harness.scan(args.ell, args.a_max, set(args.moduli))
    for claim in found:
        writer.write(CheckReport(claim.id, "pass", harness.config.n_max or 200, claim=claim,
                                 note=claim.source_note))
    return EXIT_OK


def write_series(values: Series, output_format: str, stream: TextIO) -> None:
    coefficients = values.to_list()
    if output_format == "json":
        stream.write(json.dumps({"trunc": values.trunc, "modulus": values.modulus,
                                 "coefficients": coefficients}) + "\n")
    elif output_format == "csv":
        rows = csv.writer(stream, lineterminator="\n")
        rows.writerow(("n", "coefficient"))
        rows.writerows(enumerate(coefficients))
    else:
        stream.write(",".join(str(c) for c in coefficients) + "\n")


def cmd_dump(args: argparse.Namespace, harness: Harness, writer: ReportWriter) -> int:
    write_series(harness.dump(args.expression), args.output_format, writer.stream)
    return EXIT_OK


def cmd_cache(args: argparse.Namespace, harness: Harness, writer: ReportWriter) -> int:
    cache = CoefficientCache(args.cache_dir or default_cache_dir())
    if args.action == "clear":
        writer.stream.write(f"removed {cache.clear()} files from {cache.directory}\n")
    else:
        writer.stream.write(json.dumps(cache.info(), indent=2) + "\n")
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "identities": cmd_identities,
    "oracle-compare": cmd_oracle_compare,
    "equivalence": cmd_equivalence,
    "scan": cmd_scan,
    "dump": cmd_dump,
    "cache": cmd_cache,
}


def main(argv: Optional[Sequence[str]] = None, stream: Optional[TextIO] = None) -> int:
    """
    Run one command.

    Returns:
        The exit status
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    stream = stream or sys.stdout
    try:
        config = load_config(args)
        harness = Harness(config)
        writer = ReportWriter(config.output_format, stream)
        return COMMANDS[args.command](args, harness, writer)
    except ResourceRefusal as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ParseError as exc:
        print(f"error: cannot parse expression: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
