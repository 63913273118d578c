"""The database: schema-paired row stores, validation, CSV load/dump.

A Database is safe to share for concurrent reads; all mutations must go
through a single writer (the embedding layer serializes writes — nothing
here locks).

CSV ingestion replaces any live platform integration: datasets are
directories of one CSV per table plus a manifest listing load order
(parents before children) so foreign keys validate in one pass.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from . import catalog, values
from .catalog import TableDef, builtin_table_defs, validate_schema
from .errors import (
    ArityMismatchError,
    CheckViolationError,
    CsvLoadError,
    DuplicateKeyError,
    ForeignKeyViolationError,
    HeaderMismatchError,
    MalformedCsvError,
    SchemaError,
    TypeMismatchError,
    UnknownTableError,
)
from .storage import RowStore

MANIFEST_NAME = "manifest.txt"

_CSV_DIALECT = dict(delimiter=",", quotechar='"', doublequote=True, lineterminator="\n")


def csv_filename(table_name: str) -> str:
    """Dataset naming convention: '/' and spaces become '_'."""
    return table_name.replace("/", "_").replace(" ", "_") + ".csv"


@dataclass
class Table:
    defn: TableDef
    store: RowStore


@dataclass(frozen=True)
class Violation:
    """One integrity failure: which table, which row key, which constraint."""

    table: str
    row_key: tuple
    constraint: str

    def __str__(self) -> str:
        return f"{self.table} {self.row_key!r}: {self.constraint}"


class SecondaryIndex:
    """Handle returned by build_index; equality lookups over the columns."""

    def __init__(self, db: "Database", table: str, columns: tuple[str, ...],
                 positions: tuple[int, ...]):
        self._db = db
        self.table = table
        self.columns = columns
        self._positions = positions

    def lookup(self, *key) -> list[tuple]:
        t = self._db.table(self.table)
        rows = t.store.rows
        return [rows[i] for i in t.store.lookup_secondary(self._positions, tuple(key))]


class Database:
    def __init__(self, defs=()):
        self.tables: dict[str, Table] = {}
        for defn in defs:
            self._add_table(defn)
        validate_schema({n: t.defn for n, t in self.tables.items()})

    # ── schema ──────────────────────────────────────────────────────────

    def _add_table(self, defn: TableDef) -> None:
        if defn.name in self.tables:
            raise SchemaError(f"table {defn.name!r} already exists")
        self.tables[defn.name] = Table(defn, RowStore(defn.name, defn.key_positions()))

    def create_table(self, defn: TableDef) -> None:
        """Admin DDL path: add a table whose FKs resolve against the catalog."""
        if defn.name in self.tables:
            raise SchemaError(f"table {defn.name!r} already exists")
        merged = {n: t.defn for n, t in self.tables.items()}
        merged[defn.name] = defn
        validate_schema(merged)
        self._add_table(defn)

    def table(self, name: str) -> Table:
        """Resolve a table by name, exact match first, then unique
        case-insensitive match."""
        t = self.tables.get(name)
        if t is not None:
            return t
        lowered = name.lower()
        hits = [t for n, t in self.tables.items() if n.lower() == lowered]
        if len(hits) == 1:
            return hits[0]
        raise UnknownTableError(name)

    def table_names(self) -> list[str]:
        return list(self.tables)

    def schema_text(self) -> str:
        return catalog.ddl_text([t.defn for t in self.tables.values()])

    # ── validation ──────────────────────────────────────────────────────

    def validate_row(self, table_name: str, row: tuple,
                     staged: dict[tuple, int] | None = None) -> None:
        """Raise a ValidationError unless the row can be inserted as-is.

        ``staged`` adds not-yet-committed primary keys of the same table
        (used by the atomic CSV load).
        """
        t = self.table(table_name)
        defn = t.defn
        if len(row) != defn.width:
            raise ArityMismatchError(defn.name, defn.width, len(row))
        for col, value in zip(defn.columns, row):
            if not values.matches(value, col.col_type):
                raise TypeMismatchError(defn.name, col.name, value)
        key = t.store.key_of(row)
        if key in t.store.pk_index or (staged is not None and key in staged):
            raise DuplicateKeyError(defn.name, key)
        for fk in defn.foreign_keys:
            fk_value = tuple(row[defn.column_index(c)] for c in fk.local_columns)
            target = self.table(fk.foreign_table)
            present = fk_value in target.store.pk_index
            if not present and staged is not None and fk.foreign_table == defn.name:
                present = fk_value in staged
            if not present:
                raise ForeignKeyViolationError(defn.name, fk.foreign_table, fk_value)
        for check in defn.checks:
            checked = tuple(row[defn.column_index(c)] for c in check.columns)
            if not check.holds(checked):
                raise CheckViolationError(defn.name, check.describe())

    def insert(self, table_name: str, row) -> int:
        """Validate and append one row; returns its position in the table."""
        row = tuple(row)
        self.validate_row(table_name, row)
        return self.table(table_name).store.append(row)

    def check_integrity(self) -> list[Violation]:
        """Re-derive every constraint from the raw rows (indexes untrusted)."""
        out: list[Violation] = []
        key_sets = {
            name: {t.store.key_of(r) for r in t.store.rows}
            for name, t in self.tables.items()
        }
        for name, t in self.tables.items():
            defn = t.defn
            seen: set[tuple] = set()
            for row in t.store.rows:
                key = t.store.key_of(row)
                if key in seen:
                    out.append(Violation(name, key, "duplicate primary key"))
                seen.add(key)
                for fk in defn.foreign_keys:
                    fk_value = tuple(row[defn.column_index(c)] for c in fk.local_columns)
                    if fk_value not in key_sets[fk.foreign_table]:
                        out.append(Violation(
                            name, key,
                            f"foreign key {fk_value!r} not in {fk.foreign_table}",
                        ))
                for check in defn.checks:
                    checked = tuple(row[defn.column_index(c)] for c in check.columns)
                    if not check.holds(checked):
                        out.append(Violation(name, key, check.describe()))
        return out

    # ── reads ───────────────────────────────────────────────────────────

    def scan(self, table_name: str):
        """Yield all rows in insertion order."""
        yield from self.table(table_name).store.rows

    def build_index(self, table_name: str, columns) -> SecondaryIndex:
        t = self.table(table_name)
        positions = tuple(t.defn.column_index(c) for c in columns)
        t.store.create_secondary(positions)
        return SecondaryIndex(self, t.defn.name, tuple(columns), positions)

    # ── CSV ─────────────────────────────────────────────────────────────

    def dump_csv(self, table_name: str) -> bytes:
        t = self.table(table_name)
        buf = io.StringIO()
        writer = csv.writer(buf, **_CSV_DIALECT)
        writer.writerow(t.defn.column_names)
        for row in t.store.rows:
            writer.writerow([values.display(v) for v in row])
        return buf.getvalue().encode("utf-8")

    def load_csv(self, table_name: str, source) -> int:
        """Atomically load a CSV stream: on any error nothing is committed.

        ``source`` may be bytes, text, or a file-like object. The header
        must name exactly the table's columns (any order). Returns the
        number of rows inserted.
        """
        t = self.table(table_name)
        defn = t.defn
        text = _as_text(source)
        reader = csv.reader(io.StringIO(text, newline=""), **_CSV_DIALECT)
        try:
            header = next(reader, None)
        except csv.Error as e:
            raise MalformedCsvError(1, str(e)) from None
        if header is None:
            raise MalformedCsvError(1, "missing header row")
        if sorted(header) != sorted(defn.column_names) or len(header) != defn.width:
            raise HeaderMismatchError(defn.name, defn.column_names, header)
        order = [header.index(c) for c in defn.column_names]

        staged: list[tuple] = []
        staged_keys: dict[tuple, int] = {}
        while True:
            try:
                record = next(reader, None)
            except csv.Error as e:
                raise MalformedCsvError(reader.line_num, str(e)) from None
            if record is None:
                break
            line = reader.line_num
            if len(record) != defn.width:
                raise MalformedCsvError(
                    line, f"expected {defn.width} fields, got {len(record)}"
                )
            row = []
            for col, cell in zip(defn.columns, (record[i] for i in order)):
                try:
                    row.append(values.parse_field(cell, col.col_type))
                except ValueError:
                    raise CsvLoadError(
                        line, TypeMismatchError(defn.name, col.name, cell)
                    ) from None
            row = tuple(row)
            try:
                self.validate_row(defn.name, row, staged=staged_keys)
            except Exception as e:
                raise CsvLoadError(line, e) from None
            staged_keys[t.store.key_of(row)] = len(staged)
            staged.append(row)

        for row in staged:
            t.store.append(row)
        return len(staged)


def builtin_schema() -> Database:
    """An empty database holding the 26 built-in tables."""
    return Database(builtin_table_defs())


def load_dataset(db: Database, directory) -> dict[str, int]:
    """Load a dataset directory in manifest order; returns rows per table."""
    directory = Path(directory)
    manifest = directory / MANIFEST_NAME
    names = [
        line.strip()
        for line in manifest.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    counts: dict[str, int] = {}
    for name in names:
        path = directory / csv_filename(name)
        counts[name] = db.load_csv(name, path.read_bytes())
    return counts


def _as_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data
