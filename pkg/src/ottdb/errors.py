"""Exception hierarchy for the engine.

Layout mirrors how the CLI maps failures to exit codes: SqlError and
UnknownTableError/UnknownColumnError are user query errors (exit 1),
ValidationError and PermissionDeniedError are integrity/authorization
errors (exit 2), CsvError and OS-level failures are I/O errors (exit 3).
"""

from __future__ import annotations


class OttdbError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(OttdbError):
    """Malformed table definition (bad key, duplicate column, dangling FK)."""


class UnknownTableError(OttdbError):
    def __init__(self, name: str):
        super().__init__(f"unknown table: {name!r}")
        self.name = name


class UnknownColumnError(OttdbError):
    def __init__(self, name: str, table: str | None = None):
        where = f" in table {table!r}" if table else ""
        super().__init__(f"unknown column: {name!r}{where}")
        self.name = name
        self.table = table


# ── row validation ──────────────────────────────────────────────────────

class ValidationError(OttdbError):
    """A row failed validation against the catalog."""


class ArityMismatchError(ValidationError):
    def __init__(self, table: str, expected: int, got: int):
        super().__init__(f"table {table!r} expects {expected} values, got {got}")
        self.table = table
        self.expected = expected
        self.got = got


class TypeMismatchError(ValidationError):
    def __init__(self, table: str, column: str, value):
        super().__init__(
            f"value {value!r} does not match the type of column {column!r} in {table!r}"
        )
        self.table = table
        self.column = column
        self.value = value


class DuplicateKeyError(ValidationError):
    def __init__(self, table: str, key: tuple):
        super().__init__(f"duplicate primary key {key!r} in table {table!r}")
        self.table = table
        self.key = key


class ForeignKeyViolationError(ValidationError):
    def __init__(self, table: str, foreign_table: str, value: tuple):
        super().__init__(
            f"row in {table!r} references {value!r} which is absent from {foreign_table!r}"
        )
        self.table = table
        self.foreign_table = foreign_table
        self.value = value


class CheckViolationError(ValidationError):
    def __init__(self, table: str, constraint: str):
        super().__init__(f"row in {table!r} violates check constraint: {constraint}")
        self.table = table
        self.constraint = constraint


# ── CSV ingestion ───────────────────────────────────────────────────────

class CsvError(OttdbError):
    """CSV-level failure (the whole load is rolled back)."""


class HeaderMismatchError(CsvError):
    def __init__(self, table: str, expected: list[str], got: list[str]):
        super().__init__(
            f"CSV header does not match columns of {table!r}: expected "
            f"{sorted(expected)}, got {sorted(got)}"
        )
        self.table = table
        self.expected = expected
        self.got = got


class MalformedCsvError(CsvError):
    def __init__(self, line: int, detail: str):
        super().__init__(f"malformed CSV at line {line}: {detail}")
        self.line = line


class CsvLoadError(CsvError):
    """A data row failed validation; carries the 1-based source line."""

    def __init__(self, line: int, cause: OttdbError):
        super().__init__(f"line {line}: {cause}")
        self.line = line
        self.cause = cause


# ── SQL frontend ────────────────────────────────────────────────────────

class SqlError(OttdbError):
    """Base for tokenizer/parser/binder errors; carries a source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line} column {column})")
        self.line = line
        self.column = column


class LexError(SqlError):
    pass


class UnterminatedStringError(LexError):
    def __init__(self, line: int, column: int):
        super().__init__("unterminated string literal", line, column)


class UnterminatedIdentifierError(LexError):
    def __init__(self, line: int, column: int):
        super().__init__("unterminated quoted identifier", line, column)


class UnknownCharacterError(LexError):
    def __init__(self, ch: str, line: int, column: int):
        super().__init__(f"unexpected character {ch!r}", line, column)


class ParseError(SqlError):
    pass


class UnexpectedTokenError(ParseError):
    def __init__(self, expected: str, got: str, line: int, column: int):
        super().__init__(f"expected {expected}, got {got}", line, column)
        self.expected = expected
        self.got = got


class TrailingInputError(ParseError):
    def __init__(self, got: str, line: int, column: int):
        super().__init__(f"unexpected input after statement: {got}", line, column)


class BindError(OttdbError):
    """A parsed query does not resolve against the schema."""


class AmbiguousColumnError(BindError):
    def __init__(self, name: str, candidates: list[str]):
        super().__init__(f"column {name!r} is ambiguous: {', '.join(candidates)}")
        self.name = name
        self.candidates = candidates


class UngroupedColumnError(BindError):
    def __init__(self, name: str):
        super().__init__(
            f"column {name!r} must appear in GROUP BY when aggregates are used"
        )
        self.name = name


# ── execution ───────────────────────────────────────────────────────────

class ArithmeticOverflowError(OttdbError):
    def __init__(self, expression: str):
        super().__init__(f"64-bit integer overflow while evaluating {expression}")
        self.expression = expression


class PermissionDeniedError(OttdbError):
    def __init__(self, role: str, action: str):
        super().__init__(f"role {role} is not allowed to perform {action}")
        self.role = role
        self.action = action
