"""Command-line interface: batch subcommands and a small REPL.

Exit codes: 0 success, 1 query/parse error, 2 integrity/authorization
error, 3 I/O error. Errors go to stderr; parse errors carry source
positions. Global flags may appear before or after the subcommand.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import builtin_queries, result
from .access import AuditLog, Role, Session
from .database import builtin_schema, load_dataset
from .errors import (
    ArithmeticOverflowError,
    BindError,
    CsvError,
    CsvLoadError,
    OttdbError,
    PermissionDeniedError,
    SchemaError,
    SqlError,
    UnknownColumnError,
    UnknownTableError,
    ValidationError,
)
from .values import parse_field

_DEFAULT_FIXTURE = "fixtures/paper"


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--role", choices=[r.value for r in Role], default=argparse.SUPPRESS,
        help="session role (default: client)",
    )
    shared.add_argument(
        "--format", choices=["table", "csv"], default=argparse.SUPPRESS,
        help="result rendering (default: table)",
    )
    shared.add_argument(
        "--dataset", metavar="DIR", default=argparse.SUPPRESS,
        help="dataset directory to load before running",
    )
    shared.add_argument(
        "--audit", metavar="FILE", default=argparse.SUPPRESS,
        help="append one audit line per authorization decision",
    )

    parser = argparse.ArgumentParser(
        prog="ottdb", description="Embedded streaming-catalog database engine."
    )
    parser.add_argument("--role", choices=[r.value for r in Role], default="client")
    parser.add_argument("--format", choices=["table", "csv"], default="table")
    parser.add_argument("--dataset", metavar="DIR", default=None)
    parser.add_argument("--audit", metavar="FILE", default=None)

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("load", parents=[shared], help="load a dataset directory")
    p.add_argument("directory")

    p = sub.add_parser("query", parents=[shared], help="run a SQL statement")
    p.add_argument("sql", help="statement text, or @FILE to read it from a file")
    p.add_argument("--parse-only", action="store_true",
                   help="print the parsed statement instead of running it")

    sub.add_parser("repl", parents=[shared],
                   help="interactive loop; statements end with ';'")

    p = sub.add_parser("paperq", parents=[shared],
                       help="run one of the six bundled reference queries")
    p.add_argument("number", type=int, choices=builtin_queries.QUERY_NUMBERS)

    p = sub.add_parser("explain", parents=[shared], help="show a query's plan")
    p.add_argument("sql")

    sub.add_parser("check", parents=[shared], help="report integrity violations")

    p = sub.add_parser("dump", parents=[shared], help="write one table as CSV")
    p.add_argument("table")

    p = sub.add_parser("insert", parents=[shared],
                       help="insert one row (structured form)")
    p.add_argument("table")
    p.add_argument("assignments", nargs="+", metavar="COLUMN=VALUE")

    return parser


def _resolve_dataset(arg: str) -> Path:
    path = Path(arg)
    if path.is_dir():
        return path
    bundled = Path(str(resources.files("ottdb"))) / arg
    if bundled.is_dir():
        return bundled
    raise FileNotFoundError(f"dataset directory not found: {arg}")


def _sql_argument(text: str) -> str:
    if text.startswith("@"):
        return Path(text[1:]).read_text(encoding="utf-8")
    return text


def _print_result(rs, fmt: str) -> None:
    rendered = result.to_csv(rs) if fmt == "csv" else result.to_text(rs)
    sys.stdout.write(rendered)


def _exit_code_for(error: Exception) -> int:
    if isinstance(error, (PermissionDeniedError, ValidationError, CsvLoadError)):
        return 2
    if isinstance(error, CsvError):
        return 3
    if isinstance(error, OSError):
        return 3
    if isinstance(
        error,
        (SqlError, BindError, UnknownTableError, UnknownColumnError,
         SchemaError, ArithmeticOverflowError, ValueError),
    ):
        return 1
    return 1


def _dispatch(args: argparse.Namespace) -> int:
    db = builtin_schema()

    dataset = args.dataset
    if dataset is None and args.command == "paperq":
        dataset = _DEFAULT_FIXTURE
    if dataset is not None:
        load_dataset(db, _resolve_dataset(dataset))

    audit = AuditLog(args.audit) if args.audit else None
    session = Session(Role(args.role), db, audit)

    if args.command == "load":
        counts = session.load_dataset(_resolve_dataset(args.directory))
        for name, count in counts.items():
            print(f"{name}: {count} rows")
        return 0

    if args.command == "query":
        text = _sql_argument(args.sql)
        if args.parse_only:
            sys.stdout.write(session.parse_only(text))
            return 0
        outcome = session.run_sql(text)
        if isinstance(outcome, str):
            print(outcome)
        else:
            _print_result(outcome, args.format)
        return 0

    if args.command == "paperq":
        rs = session.query(builtin_queries.query_text(args.number))
        _print_result(rs, args.format)
        return 0

    if args.command == "explain":
        sys.stdout.write(session.explain(_sql_argument(args.sql)))
        return 0

    if args.command == "check":
        violations = session.check()
        if violations:
            for v in violations:
                print(v, file=sys.stderr)
            return 2
        print("integrity ok")
        return 0

    if args.command == "dump":
        sys.stdout.write(session.dump_csv(args.table).decode("utf-8"))
        return 0

    if args.command == "insert":
        position = session.insert(
            args.table, _row_from_assignments(db, args.table, args.assignments)
        )
        print(f"inserted at position {position}")
        return 0

    if args.command == "repl":
        return _repl(session, args.format)

    raise AssertionError(f"unhandled command {args.command!r}")


def _row_from_assignments(db, table: str, assignments: list[str]) -> tuple:
    defn = db.table(table).defn
    given: dict[str, str] = {}
    for text in assignments:
        if "=" not in text:
            raise ValueError(f"expected COLUMN=VALUE, got {text!r}")
        column, value = text.split("=", 1)
        given[column] = value
    row = []
    for col in defn.columns:
        if col.name not in given:
            raise ValueError(f"missing value for column {col.name!r} (no nulls)")
        row.append(parse_field(given.pop(col.name), col.col_type))
    if given:
        raise UnknownColumnError(next(iter(given)), defn.name)
    return tuple(row)


def _repl(session: Session, fmt: str) -> int:
    interactive = sys.stdin.isatty()
    if interactive:
        try:
            import readline  # noqa: F401  (line editing + history when a tty)
        except ImportError:
            pass
        print("ottdb repl; statements end with ';', exit with 'exit' or Ctrl-D")

    buffer = ""
    while True:
        if interactive:
            sys.stdout.write("ottdb> " if not buffer else "  ...> ")
            sys.stdout.flush()
        line = sys.stdin.readline()
        if not line:
            break
        stripped = line.strip()
        if not buffer and stripped.lower() in ("exit", "quit"):
            break
        buffer += line
        while ";" in buffer:
            statement, _, buffer = buffer.partition(";")
            if not statement.strip():
                continue
            try:
                outcome = session.run_sql(statement)
            except OttdbError as e:
                print(f"error: {e}", file=sys.stderr)
                continue
            if isinstance(outcome, str):
                print(outcome)
            else:
                _print_result(outcome, fmt)
    leftover = buffer.strip()
    if leftover:
        try:
            outcome = session.run_sql(leftover)
            if isinstance(outcome, str):
                print(outcome)
            else:
                _print_result(outcome, fmt)
        except OttdbError as e:
            print(f"error: {e}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (OttdbError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return _exit_code_for(e)


if __name__ == "__main__":
    raise SystemExit(main())
