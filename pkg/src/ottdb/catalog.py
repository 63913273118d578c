"""Built-in streaming-catalog schema: table definitions, keys, constraints.

Table and column names are stored verbatim (spaces, '/', '-' and
parentheses included) so the bundled reference queries run unmodified;
names that are not bare identifiers need backtick quoting in SQL.

`Collections_of_shows` is the hub: every show-describing table reaches it
through its foreign keys. Every column is required; there are no nulls.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import SchemaError, UnknownColumnError
from .values import SqlType

_BARE_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# Keywords of the query dialect; a bare identifier must not collide.
RESERVED_WORDS = frozenset({
    "SELECT", "FROM", "JOIN", "ON", "WHERE", "AND", "GROUP", "BY",
    "ORDER", "ASC", "DESC", "AS", "COUNT", "SUM",
})


def is_bare_identifier(name: str) -> bool:
    return bool(_BARE_IDENT_RE.fullmatch(name)) and name.upper() not in RESERVED_WORDS


def quote_identifier(name: str) -> str:
    """Backtick-quote a name unless it is a bare identifier."""
    return name if is_bare_identifier(name) else f"`{name}`"


@dataclass(frozen=True)
class ColumnDef:
    name: str
    col_type: SqlType

    def __post_init__(self):
        if not self.name:
            raise SchemaError("column name must be non-empty")


@dataclass(frozen=True)
class ForeignKey:
    local_columns: tuple[str, ...]
    foreign_table: str
    foreign_columns: tuple[str, ...]

    def __post_init__(self):
        if len(self.local_columns) == 0:
            raise SchemaError("foreign key needs at least one column")
        if len(self.local_columns) != len(self.foreign_columns):
            raise SchemaError(
                f"foreign key to {self.foreign_table!r} has mismatched column counts"
            )


@dataclass(frozen=True)
class ExactlyOneOf:
    """Row check: exactly one of the named boolean columns is true."""

    columns: tuple[str, ...]

    def describe(self) -> str:
        names = ", ".join(quote_identifier(c) for c in self.columns)
        return f"exactly one of {names}"

    def holds(self, values: tuple) -> bool:
        return sum(1 for v in values if v) == 1


@dataclass(frozen=True)
class TableDef:
    name: str
    columns: tuple[ColumnDef, ...]
    primary_key: tuple[str, ...]
    foreign_keys: tuple[ForeignKey, ...] = ()
    checks: tuple[ExactlyOneOf, ...] = ()

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise SchemaError(f"table {self.name!r} has duplicate column names")
        if not self.primary_key:
            raise SchemaError(f"table {self.name!r} has no primary key")
        for col in self.primary_key:
            if col not in names:
                raise SchemaError(f"primary key column {col!r} missing from {self.name!r}")
        for fk in self.foreign_keys:
            for col in fk.local_columns:
                if col not in names:
                    raise SchemaError(
                        f"foreign key column {col!r} missing from {self.name!r}"
                    )
        for check in self.checks:
            for col in check.columns:
                if col not in names:
                    raise SchemaError(f"check column {col!r} missing from {self.name!r}")

    @property
    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def width(self) -> int:
        return len(self.columns)

    def column_index(self, name: str) -> int:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return i
        raise UnknownColumnError(name, self.name)

    def key_positions(self) -> tuple[int, ...]:
        return tuple(self.column_index(c) for c in self.primary_key)


def _cols(*pairs) -> tuple[ColumnDef, ...]:
    return tuple(ColumnDef(n, t) for n, t in pairs)


def _fk(local, table, foreign) -> ForeignKey:
    local = (local,) if isinstance(local, str) else tuple(local)
    foreign = (foreign,) if isinstance(foreign, str) else tuple(foreign)
    return ForeignKey(local, table, foreign)


_HUB = "Collections_of_shows"

INT = SqlType.INT
DECIMAL = SqlType.DECIMAL
TEXT = SqlType.TEXT
BOOL = SqlType.BOOL


def builtin_table_defs() -> tuple[TableDef, ...]:
    """The 26 built-in tables of the streaming catalog."""
    show_fk = _fk("Show_id", _HUB, "Show_id")
    platform_fk = _fk("Platform_id", "Platforms", "Platform_id")
    return (
        TableDef(
            _HUB,
            _cols(("Show_id", INT), ("Release year", INT), ("Writer", TEXT), ("Genre", TEXT)),
            ("Show_id",),
        ),
        TableDef(
            "Show_id-name",
            _cols(("Show_id", INT), ("Show Name", TEXT)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Actors",
            _cols(("Actor_id", INT), ("Actor name", TEXT), ("Gender", TEXT),
                  ("Age", INT), ("Nationality", TEXT)),
            ("Actor_id",),
        ),
        TableDef(
            "Actor_id-Show_id",
            _cols(("Actor_id", INT), ("Show_id", INT)),
            ("Actor_id", "Show_id"),
            (_fk("Actor_id", "Actors", "Actor_id"), show_fk),
        ),
        TableDef(
            "Production_id-Show_id",
            _cols(("Production_id", INT), ("Show_id", INT)),
            ("Production_id", "Show_id"),
            (_fk("Production_id", "Productions", "Production_id"), show_fk),
        ),
        TableDef(
            "Productions",
            _cols(("Production_id", INT), ("Production_Name", TEXT)),
            ("Production_id",),
        ),
        TableDef(
            "Critics_Rating",
            _cols(("Show_id", INT), ("IMDB rating", DECIMAL), ("Rotten Tomatoes", DECIMAL)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "PG_Rating",
            _cols(("Show_id", INT), ("U", BOOL), ("U/A", BOOL), ("A", BOOL)),
            ("Show_id",),
            (show_fk,),
            (ExactlyOneOf(("U", "U/A", "A")),),
        ),
        TableDef(
            "Platform_id-Show_id",
            _cols(("Platform_id", INT), ("Show_id", INT)),
            ("Platform_id", "Show_id"),
            (platform_fk, show_fk),
        ),
        TableDef(
            "Platforms",
            _cols(("Platform_id", INT), ("Platform name", TEXT)),
            ("Platform_id",),
        ),
        TableDef(
            "Subscriptions",
            _cols(("Platform_id", INT), ("Show_id", INT), ("required(y/n)", BOOL)),
            ("Platform_id", "Show_id"),
            (platform_fk, show_fk),
        ),
        TableDef(
            "Availability",
            _cols(("Platform_id", INT), ("Show_id", INT), ("Availability", BOOL)),
            ("Platform_id", "Show_id"),
            (platform_fk, show_fk),
        ),
        TableDef(
            "Relevance",
            _cols(("Show_id", INT), ("Relevance", BOOL)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Duration",
            _cols(("Show_id", INT), ("Duration", INT)),  # minutes
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Resolution",
            _cols(("Platform_id", INT), ("Show_id", INT), ("Resolution", TEXT),
                  ("Required", BOOL)),
            ("Platform_id", "Show_id"),
            (
                platform_fk,
                show_fk,
                # Resolution depends on the subscription for that platform,
                # so the pair also references Subscriptions.
                _fk(("Platform_id", "Show_id"), "Subscriptions", ("Platform_id", "Show_id")),
            ),
        ),
        TableDef(
            "TV_series",
            _cols(("Show_id", INT), ("Production_id", INT), ("Duration", INT),
                  ("Seasons", INT), ("Episodes", INT)),
            ("Show_id",),
            (show_fk, _fk("Production_id", "Productions", "Production_id")),
        ),
        TableDef(
            "Subtitles",
            _cols(("Show_id", INT), ("Hindi", BOOL), ("English", BOOL),
                  ("Tamil", BOOL), ("Telugu", BOOL)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Ongoing",
            _cols(("Show_id", INT), ("Ongoing", BOOL)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Director",
            _cols(("Show_id", INT), ("Director", TEXT)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Related_shows",
            _cols(("Show_id", INT), ("Related_Show_id", INT)),
            ("Show_id", "Related_Show_id"),
            (show_fk, _fk("Related_Show_id", _HUB, "Show_id")),
        ),
        TableDef(
            "Inspiration",
            _cols(("Show_id", INT), ("Inspired from", TEXT)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Nominations",
            _cols(("Show_id", INT), ("Oscar nominated(y/n)", BOOL)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Budget",
            _cols(("Show_id", INT), ("Budget", INT)),
            ("Show_id",),
            (show_fk,),
        ),
        TableDef(
            "Statistics",
            _cols(("Platform_id", INT), ("Show_id", INT), ("views/mo", INT)),
            ("Platform_id", "Show_id"),
            (platform_fk, show_fk),
        ),
        TableDef(
            "Best_of_year",
            _cols(("Show_id", INT), ("Year", INT)),
            ("Show_id", "Year"),
            (show_fk,),
        ),
        TableDef(
            "Actor_nomination",
            _cols(("Actor_id", INT), ("Actor Oscar nominated(y/n)", BOOL)),
            ("Actor_id",),
            (_fk("Actor_id", "Actors", "Actor_id"),),
        ),
    )


HUB_TABLE = _HUB

# Tables whose FK chain does not lead to the hub (plus the hub itself).
NON_HUB_TABLES = frozenset({"Actors", "Productions", "Platforms", "Actor_nomination"})


def validate_schema(defs: dict[str, TableDef]) -> None:
    """Cross-table checks: FK targets exist and reference their primary key."""
    for t in defs.values():
        for fk in t.foreign_keys:
            target = defs.get(fk.foreign_table)
            if target is None:
                raise SchemaError(
                    f"table {t.name!r} references unknown table {fk.foreign_table!r}"
                )
            if tuple(fk.foreign_columns) != tuple(target.primary_key):
                raise SchemaError(
                    f"foreign key from {t.name!r} must reference the primary key "
                    f"of {fk.foreign_table!r}"
                )


def ddl_text(defs) -> str:
    """Deterministic, sorted, DDL-like listing of table definitions."""
    blocks = []
    for t in sorted(defs, key=lambda d: d.name):
        lines = [f"TABLE {quote_identifier(t.name)} ("]
        for c in t.columns:
            lines.append(f"  {quote_identifier(c.name)} {c.col_type},")
        pk = ", ".join(quote_identifier(c) for c in t.primary_key)
        lines.append(f"  PRIMARY KEY ({pk})" + ("," if t.foreign_keys or t.checks else ""))
        for i, fk in enumerate(t.foreign_keys):
            local = ", ".join(quote_identifier(c) for c in fk.local_columns)
            foreign = ", ".join(quote_identifier(c) for c in fk.foreign_columns)
            tail = "," if i + 1 < len(t.foreign_keys) or t.checks else ""
            lines.append(
                f"  FOREIGN KEY ({local}) REFERENCES "
                f"{quote_identifier(fk.foreign_table)} ({foreign}){tail}"
            )
        for i, check in enumerate(t.checks):
            tail = "," if i + 1 < len(t.checks) else ""
            lines.append(f"  CHECK ({check.describe()}){tail}")
        lines.append(")")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
